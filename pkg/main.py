import os
import sys
import argparse
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

# 添加 emulator-core 到 Python 路径（核心代码在 emulator-core 下）
project_root = os.path.dirname(os.path.abspath(__file__))
emulator_core_root = os.path.join(project_root, "emulator-core")
if os.path.isdir(emulator_core_root) and emulator_core_root not in sys.path:
    sys.path.insert(0, emulator_core_root)

# 加载 .env 文件（已存在的环境变量优先）
load_dotenv(os.path.join(project_root, ".env"))

from loguru import logger

from config.settings import (
    DEFAULT_PLATFORM,
    TOOL_NAME,
    TOOL_VERSION,
    resolve_equivalence_tol,
    resolve_fidelity_threshold,
    resolve_flag,
    resolve_log_level,
    resolve_output_dir,
    resolve_output_dt,
    resolve_path,
)
from core.errors import (
    ArtifactError,
    CircuitError,
    EmulatorError,
    InvariantError,
    PlatformError,
    ScheduleError,
    SolverError,
    TranspileError,
)
from core.orchestration import PipelineOrchestrator, load_circuit, load_native, load_schedule
from core.state.state_schema import RunOptions, SchedulerPolicy, SimOptions, TranspileOptions, ValidationOptions
from infrastructure.platform import load_platform
from infrastructure.storage import ArtifactService, LogService, configure_console
from qasm_frontend import QasmSyntaxError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_SOLVER = 4


class CliParser(argparse.ArgumentParser):
    """argparse 默认以 2 退出；用法错误统一为 1"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--platform", type=str, default=DEFAULT_PLATFORM, help="platform JSON file")
    p.add_argument("--out-dir", type=str, default=None, help="run directory (default: EMULATOR_OUTPUT_DIR or ./output)")
    p.add_argument("--log-level", type=str, default=None, help="overrides EMULATOR_LOG_LEVEL")


def _add_transpile(p: argparse.ArgumentParser) -> None:
    p.add_argument("--placement", choices=["trivial", "random"], default="trivial")
    p.add_argument("--seed", type=int, default=0, help="placement and shot-sampling seed")
    p.add_argument("--no-fold", action="store_true", help="keep Z/RZ gates in the native circuit")
    p.add_argument("--no-optimize", action="store_true", help="skip gate cancellation before routing")


def _add_compile(p: argparse.ArgumentParser) -> None:
    p.add_argument("--policy", choices=["sequential", "asap"], default="sequential")


def _add_simulate(p: argparse.ArgumentParser, with_seed: bool) -> None:
    p.add_argument("--shots", type=int, default=1000)
    if with_seed:
        p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-noise", action="store_true", help="disable T1/T2 dissipators")
    p.add_argument("--output-dt", type=float, default=None, help="population sampling step in ns")
    p.add_argument("--engine", choices=["lindblad", "schrodinger"], default="lindblad")
    p.add_argument("--no-stark-tracking", action="store_true")


def _add_validation(p: argparse.ArgumentParser) -> None:
    p.add_argument("--fidelity-threshold", type=float, default=None)
    p.add_argument("--fidelity-instant", choices=["gate_end", "readout_onset", "readout_end"], default="readout_onset")


def build_parser() -> CliParser:
    parser = CliParser(prog=TOOL_NAME, description="Transmon hardware emulation pipeline: QASM → native gates → pulses → Lindblad dynamics.")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    p = sub.add_parser("transpile", help="QASM/circuit JSON → native.json + transpile_report.json")
    p.add_argument("input")
    _add_common(p)
    _add_transpile(p)

    p = sub.add_parser("compile", help="native.json → schedule.json")
    p.add_argument("input")
    _add_common(p)
    _add_compile(p)

    p = sub.add_parser("simulate", help="schedule.json → populations.csv, counts.json, state.json, metrics.json")
    p.add_argument("input")
    _add_common(p)
    _add_simulate(p, with_seed=True)

    p = sub.add_parser("run", help="full pipeline with all artifacts")
    p.add_argument("input")
    _add_common(p)
    _add_transpile(p)
    _add_compile(p)
    _add_simulate(p, with_seed=False)
    _add_validation(p)
    p.add_argument("--validate", action="store_true", help="run the four validation stages")

    p = sub.add_parser("validate", help="re-validate an existing run directory")
    p.add_argument("run_dir")
    p.add_argument("--platform", type=str, default=DEFAULT_PLATFORM)
    p.add_argument("--log-level", type=str, default=None)
    p.add_argument("--engine", choices=["lindblad", "schrodinger"], default="lindblad")
    _add_validation(p)
    return parser


def build_options(args: argparse.Namespace) -> RunOptions:
    transpile = TranspileOptions(
        placement=getattr(args, "placement", "trivial"),
        seed=getattr(args, "seed", None),
        fold_virtual_z=not getattr(args, "no_fold", False),
        optimize=not getattr(args, "no_optimize", False),
    )
    policy = SchedulerPolicy(mode=getattr(args, "policy", "sequential"))
    no_noise = getattr(args, "no_noise", False)
    sim = SimOptions(
        shots=getattr(args, "shots", 1000),
        seed=getattr(args, "seed", 0) or 0,
        decoherence=resolve_flag("EMULATOR_DECOHERENCE", False if no_noise else None, True),
        output_dt=resolve_output_dt(getattr(args, "output_dt", None)),
        engine=getattr(args, "engine", "lindblad"),
        stark_tracking=not getattr(args, "no_stark_tracking", False),
    )
    validation = ValidationOptions(
        enabled=bool(getattr(args, "validate", False)) or args.command == "validate",
        equivalence_tol=resolve_equivalence_tol(),
        fidelity_threshold=resolve_fidelity_threshold(getattr(args, "fidelity_threshold", None)),
        fidelity_instant=getattr(args, "fidelity_instant", "readout_onset"),
    )
    return RunOptions(transpile=transpile, policy=policy, sim=sim, validation=validation)


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, (QasmSyntaxError, ArtifactError)):
        return EXIT_PARSE
    if isinstance(error, SolverError):
        return EXIT_SOLVER
    if isinstance(error, (PlatformError, CircuitError, TranspileError, ScheduleError, InvariantError, AssertionError)):
        return EXIT_INVALID
    if isinstance(error, ValidationError):
        return EXIT_USAGE
    return EXIT_INVALID


def _report(outcome_lines: List[str]) -> None:
    for line in outcome_lines:
        print(line)


def _dispatch(args: argparse.Namespace, options: RunOptions) -> int:
    log = logger.bind(log_tag="cli")
    platform_path = resolve_path(args.platform)
    platform = load_platform(platform_path)

    if args.command == "validate":
        artifacts = ArtifactService(args.run_dir)
        with LogService(args.run_dir).attach():
            orchestrator = PipelineOrchestrator(platform, platform_path, artifacts, options=options)
            report = orchestrator.revalidate(args.run_dir)
        _report([f"{v.stage}: {'pass' if v.passed else 'FAIL'} (metric={v.metric})" for v in report.verdicts])
        return EXIT_OK if report.passed else EXIT_INVALID

    out_dir = resolve_output_dir(args.out_dir)
    artifacts = ArtifactService(out_dir)
    log_service = LogService(out_dir)
    with log_service:
        orchestrator = PipelineOrchestrator(platform, platform_path, artifacts, log_service, options)
        log.info(f"{args.command} {args.input} (platform {platform.name})")
        if args.command == "transpile":
            result = orchestrator.transpile(load_circuit(args.input))
            orchestrator.write_manifest(args.input)
            _report([f"native gates: {len(result.native)}, physical pulses: {result.report.physical_pulse_count}, "
                     f"swaps: {result.report.swap_count}", f"artifacts: {out_dir}"])
            return EXIT_OK
        if args.command == "compile":
            sched = orchestrator.compile(load_native(args.input))
            orchestrator.write_manifest(args.input)
            _report([f"pulses: {len(sched.pulses)}, total duration: {sched.total_duration:g} ns", f"artifacts: {out_dir}"])
            return EXIT_OK
        if args.command == "simulate":
            _, metrics, counts = orchestrator.simulate(load_schedule(args.input))
            orchestrator.write_manifest(args.input)
            _report([f"fidelity (readout onset): {metrics['fidelity']}", f"counts: {counts}", f"artifacts: {out_dir}"])
            return EXIT_OK
        outcome = orchestrator.run(args.input)

    lines = [
        f"total duration: {outcome.schedule.total_duration:g} ns",
        f"fidelity (readout onset): {outcome.metrics['fidelity']}",
        f"counts: {outcome.counts}",
    ]
    if outcome.report is not None:
        lines += [f"{v.stage}: {'pass' if v.passed else 'FAIL'} (metric={v.metric})" for v in outcome.report.verdicts]
    lines.append(f"artifacts: {out_dir}")
    _report(lines)
    return EXIT_OK if outcome.passed else EXIT_INVALID


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_console(resolve_log_level(args.log_level))
    try:
        options = build_options(args)
    except ValidationError as e:
        print(f"error: invalid options: {e.errors()[0].get('msg')}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _dispatch(args, options)
    except QasmSyntaxError as e:
        print(str(e), file=sys.stderr)
        return EXIT_PARSE
    except (EmulatorError, AssertionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return exit_code_for(e)


if __name__ == '__main__':
    sys.exit(main())
