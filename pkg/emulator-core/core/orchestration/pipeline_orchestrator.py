"""
流水线编排：transpile → compile → simulate → validate，每阶段写出产物。
"""
import os
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from loguru import logger

from config.settings import TOOL_NAME, TOOL_VERSION
from core.circuit import Circuit
from core.dynamics import SimResult, evolve, project_computational, sample_counts, apply_frames, fidelity, DensityMatrix
from core.pulse import PulseSchedule, schedule as schedule_circuit
from core.state.state_schema import RunManifest, RunOptions
from core.transpiler import Layout, NativeCircuit, TranspileResult, transpile
from core.validation import TransformationValidator, ValidationReport, ideal_state
from infrastructure.platform import PlatformSpec
from infrastructure.storage import ArtifactService, LogService
from .artifact_loader import load_circuit, load_json, load_layouts, load_native, load_schedule


@dataclass
class RunOutcome:
    """一次完整运行的结果"""
    run_dir: str
    transpiled: Optional[TranspileResult] = None
    schedule: Optional[PulseSchedule] = None
    result: Optional[SimResult] = None
    metrics: Dict = field(default_factory=dict)
    counts: Dict[str, int] = field(default_factory=dict)
    report: Optional[ValidationReport] = None

    @property
    def passed(self) -> bool:
        return self.report is None or self.report.passed


class PipelineOrchestrator:
    """流水线编排器类"""

    def __init__(
        self,
        platform: PlatformSpec,
        platform_path: str,
        artifact_service: ArtifactService,
        log_service: Optional[LogService] = None,
        options: Optional[RunOptions] = None,
    ):
        """初始化流水线编排器

        Args:
            platform: 已加载的平台描述
            platform_path: 平台文件路径（写入清单）
            artifact_service: 产物服务（决定运行目录）
            log_service: 日志服务（可选，写 stages/*.json）
            options: 各阶段选项
        """
        self.platform = platform
        self.platform_path = platform_path
        self.artifacts = artifact_service
        self.log_service = log_service
        self.options = options or RunOptions()
        self.validator = TransformationValidator(platform, self.options.validation)
        self._log = logger.bind(log_tag="pipeline")

    @property
    def run_dir(self) -> str:
        return self.artifacts.out_dir

    def _stage(self, name: str, data: Dict) -> None:
        if self.log_service:
            self.log_service.save_stage(name, data)

    # 各阶段

    def transpile(self, circuit: Circuit) -> TranspileResult:
        result = transpile(circuit, self.platform, self.options.transpile)
        self.artifacts.write_json("original", circuit.to_dict())
        self.artifacts.write_json("native", result.native.to_dict())
        self.artifacts.write_json("transpile_report", result.report.to_dict())
        self._stage("transpile", {
            "gate_count_before": result.report.gate_count_before,
            "gate_count_after": result.report.gate_count_after,
            "swap_count": result.report.swap_count,
            "physical_pulse_count": result.report.physical_pulse_count,
        })
        return result

    def compile(self, native: NativeCircuit) -> PulseSchedule:
        sched = schedule_circuit(native, self.platform, self.options.policy)
        self.artifacts.write_json("schedule", sched.to_dict())
        self._stage("compile", {
            "policy": sched.policy,
            "pulse_count": len(sched.pulses),
            "gate_end_ns": sched.gate_end,
            "total_duration_ns": sched.total_duration,
        })
        return sched

    def simulate(self, sched: PulseSchedule) -> Tuple[SimResult, Dict, Dict[str, int]]:
        sim = self.options.sim
        result = evolve(sched, self.platform, opts=sim)
        metrics = self.metrics(sched, result)
        onset, _ = project_computational(result.state_at("readout_onset"), result.space)
        counts = sample_counts(onset, sim.shots, sim.seed, result.labels)

        self.artifacts.write_populations(result.populations_frame())
        self.artifacts.write_json("counts", counts)
        self.artifacts.write_json("state", {
            "instant": "readout_end",
            "time_ns": result.duration,
            "n_qubits": result.space.n_qubits,
            "levels": result.space.levels,
            **result.final_state.to_dict(),
        })
        self.artifacts.write_json("metrics", metrics)
        self._stage("simulate", {k: metrics[k] for k in ("engine", "fidelity", "rhs_evaluations") if k in metrics})
        return result, metrics, counts

    def metrics(self, sched: PulseSchedule, result: SimResult) -> Dict:
        target = None
        if sched.circuit is not None and sched.circuit.n_qubits <= 6:
            target = DensityMatrix.from_pure(ideal_state(sched.circuit))
        fidelity_at: Dict[str, float] = {}
        leakage_at: Dict[str, float] = {}
        for instant, state in result.checkpoints.items():
            projected, leak = project_computational(state, result.space)
            leakage_at[instant] = leak
            if target is not None:
                fidelity_at[instant] = fidelity(apply_frames(projected, result.frames), target)
        metrics = {
            "engine": result.engine,
            "decoherence": self.options.sim.decoherence,
            "stark_tracking": self.options.sim.stark_tracking,
            "shots": self.options.sim.shots,
            "seed": self.options.sim.seed,
            "total_duration_ns": sched.total_duration,
            "checkpoint_times_ns": dict(result.checkpoint_times),
            "fidelity": fidelity_at.get("readout_onset"),
            "fidelity_at": fidelity_at,
            "leakage_at": leakage_at,
            "final_frames": list(result.frames),
            "rhs_evaluations": result.rhs_evaluations,
        }
        return metrics

    def validate(
        self,
        original: Circuit,
        native: NativeCircuit,
        sched: PulseSchedule,
        initial_layout: Optional[Layout] = None,
        final_layout: Optional[Layout] = None,
        result: Optional[SimResult] = None,
        metrics: Optional[Dict] = None,
    ) -> ValidationReport:
        report = ValidationReport()
        report.add(self.validator.validate_circuit_equivalence(original, native, final_layout, initial_layout))
        report.add(self.validator.validate_schedule(sched, native))
        report.add(self.validator.validate_evolution(sched, native, self.options.sim))
        instant = self.options.validation.fidelity_instant
        if result is not None:
            report.add(self.validator.validate_fidelity(result, ideal_state(native), instant))
        elif metrics and metrics.get("fidelity_at", {}).get(instant) is not None:
            report.add(self.validator.fidelity_verdict(float(metrics["fidelity_at"][instant]), instant))
        report.artifacts = dict(self.artifacts.artifacts)
        self.artifacts.write_json("validation", report.to_dict())
        self._stage("validate", {"passed": report.passed, "failed": [v.stage for v in report.failures()]})
        self._log.info(f"validation {'passed' if report.passed else 'FAILED'}: "
                       + ", ".join(f"{v.stage}={'ok' if v.passed else 'fail'}" for v in report.verdicts))
        return report

    def write_manifest(self, input_path: str) -> str:
        manifest = RunManifest(
            tool=TOOL_NAME,
            tool_version=TOOL_VERSION,
            input_path=input_path,
            platform_path=self.platform_path,
            options=self.options.to_dict(),
        )
        return self.artifacts.write_manifest(manifest)

    # 组合入口

    def run(self, input_path: str) -> RunOutcome:
        """运行完整流水线

        Args:
            input_path: .qasm 或电路 .json

        Returns:
            RunOutcome（含校验报告，未启用校验时为 None）
        """
        self._log.info(f"run {input_path} on {self.platform.name} → {self.run_dir}")
        circuit = load_circuit(input_path)
        outcome = RunOutcome(run_dir=self.run_dir)
        outcome.transpiled = self.transpile(circuit)
        outcome.schedule = self.compile(outcome.transpiled.native)
        outcome.result, outcome.metrics, outcome.counts = self.simulate(outcome.schedule)
        if self.options.validation.enabled:
            t = outcome.transpiled
            outcome.report = self.validate(
                t.original, t.native, outcome.schedule, t.initial_layout, t.final_layout,
                result=outcome.result,
            )
        self.write_manifest(input_path)
        return outcome

    def revalidate(self, run_dir: Optional[str] = None) -> ValidationReport:
        """对已有运行目录重新校验"""
        run_dir = run_dir or self.run_dir
        path = lambda name: os.path.join(run_dir, name)
        original = load_circuit(path("original.json"))
        native = load_native(path("native.json"))
        initial, final = load_layouts(path("transpile_report.json"))
        sched = load_schedule(path("schedule.json"))
        metrics = load_json(path("metrics.json")) if os.path.exists(path("metrics.json")) else None
        return self.validate(original, native, sched, initial, final, metrics=metrics)
