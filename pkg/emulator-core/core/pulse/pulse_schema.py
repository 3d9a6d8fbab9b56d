"""脉冲、虚拟Z记录与脉冲时序表"""
import math
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.transpiler.native import NativeCircuit

PulseKind = Literal["drive", "coupling", "readout"]


class Pulse(BaseModel):
    """一个带时长的脉冲；start 在调度前为 0"""
    model_config = ConfigDict(frozen=True)

    channel: str
    kind: PulseKind
    start: float = Field(default=0.0, ge=0)  # ns
    duration: float = Field(gt=0)  # ns
    phase: Optional[float] = None  # rad，仅驱动脉冲，未约化
    amplitude: float = 1.0  # 驱动为峰值 rad/ns，耦合/读出为无量纲激活
    qubits: Tuple[int, ...]
    label: int = Field(ge=0)  # 来源门在电路中的下标

    @model_validator(mode="after")
    def _drive_phase(self) -> "Pulse":
        if self.kind == "drive" and (self.phase is None or not math.isfinite(self.phase)):
            raise ValueError(f"drive pulse on {self.channel} needs a finite phase")
        return self

    @property
    def end(self) -> float:
        return self.start + self.duration

    def at(self, start: float) -> "Pulse":
        return self.model_copy(update={"start": start})

    def to_dict(self) -> dict:
        return {
            "channel": self.channel,
            "kind": self.kind,
            "start_ns": self.start,
            "duration_ns": self.duration,
            "phase_rad": self.phase,
            "amplitude": self.amplitude,
            "qubits": list(self.qubits),
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Pulse":
        return cls(
            channel=data["channel"],
            kind=data["kind"],
            start=float(data["start_ns"]),
            duration=float(data["duration_ns"]),
            phase=None if data.get("phase_rad") is None else float(data["phase_rad"]),
            amplitude=float(data.get("amplitude", 1.0)),
            qubits=tuple(int(q) for q in data["qubits"]),
            label=int(data["label"]),
        )


class VirtualZ(BaseModel):
    """零时长的帧更新，只作记录"""
    model_config = ConfigDict(frozen=True)

    qubit: int
    time: float  # ns
    angle: float  # rad，按逻辑旋转记（Z 为 π）
    label: int

    def to_dict(self) -> dict:
        return {"qubit": self.qubit, "time_ns": self.time, "angle_rad": self.angle, "label": self.label}

    @classmethod
    def from_dict(cls, data: dict) -> "VirtualZ":
        return cls(qubit=int(data["qubit"]), time=float(data["time_ns"]),
                   angle=float(data["angle_rad"]), label=int(data["label"]))


class PulseSchedule(BaseModel):
    """按开始时间排序的脉冲表

    ``circuit`` 保存产生该时序的原生电路，使仿真阶段只凭时序文件即可得到理想目标态。
    """
    model_config = ConfigDict(frozen=True)

    platform: str
    policy: str = "sequential"
    n_qubits: int = Field(ge=0)
    pulses: Tuple[Pulse, ...] = ()
    total_duration: float = Field(default=0.0, ge=0)
    frames: Tuple[float, ...] = ()
    virtual_z: Tuple[VirtualZ, ...] = ()
    circuit: Optional[NativeCircuit] = None

    @model_validator(mode="after")
    def _check(self) -> "PulseSchedule":
        starts = [p.start for p in self.pulses]
        if starts != sorted(starts):
            raise ValueError("pulses must be sorted by start")
        end = max((p.end for p in self.pulses), default=0.0)
        if abs(end - self.total_duration) > 1e-9 * max(1.0, end):
            raise ValueError(f"total_duration {self.total_duration} != last pulse end {end}")
        if self.frames and len(self.frames) != self.n_qubits:
            raise ValueError(f"frames has {len(self.frames)} entries for {self.n_qubits} qubits")
        return self

    @property
    def readouts(self) -> List[Pulse]:
        return [p for p in self.pulses if p.kind == "readout"]

    @property
    def gate_pulses(self) -> List[Pulse]:
        return [p for p in self.pulses if p.kind != "readout"]

    @property
    def gate_end(self) -> float:
        """End of the last drive/coupling pulse (0 if none)."""
        return max((p.end for p in self.gate_pulses), default=0.0)

    @property
    def readout_onset(self) -> Optional[float]:
        readouts = self.readouts
        return readouts[0].start if readouts else None

    @property
    def final_frames(self) -> Tuple[float, ...]:
        return self.frames or (0.0,) * self.n_qubits

    def on_channel(self, channel: str) -> List[Pulse]:
        return [p for p in self.pulses if p.channel == channel]

    def to_dict(self) -> dict:
        data = {
            "platform": self.platform,
            "policy": self.policy,
            "n_qubits": self.n_qubits,
            "total_duration_ns": self.total_duration,
            "pulses": [p.to_dict() for p in self.pulses],
            "frames": {str(q): f for q, f in enumerate(self.final_frames)},
            "virtual_z": [v.to_dict() for v in self.virtual_z],
        }
        if self.circuit is not None:
            data["circuit"] = self.circuit.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "PulseSchedule":
        frames: Dict[str, float] = data.get("frames", {})
        n_qubits = int(data.get("n_qubits", len(frames)))
        circuit = data.get("circuit")
        return cls(
            platform=data["platform"],
            policy=data.get("policy", "sequential"),
            n_qubits=n_qubits,
            pulses=tuple(Pulse.from_dict(p) for p in data.get("pulses", ())),
            total_duration=float(data.get("total_duration_ns", 0.0)),
            frames=tuple(float(frames[str(q)]) for q in range(n_qubits)) if frames else (),
            virtual_z=tuple(VirtualZ.from_dict(v) for v in data.get("virtual_z", ())),
            circuit=NativeCircuit.from_dict(circuit) if circuit is not None else None,
        )
