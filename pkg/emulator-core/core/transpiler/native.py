"""Native circuits and virtual-Z frame bookkeeping."""
import math
from typing import List, Optional, Sequence, Tuple

from pydantic import model_validator

from core.circuit import Circuit, Gate, GateKind, NATIVE_KINDS, PHYSICAL_KINDS


class NativeCircuit(Circuit):
    """Circuit restricted to native kinds.

    ``final_frames`` holds the per-qubit virtual phase left over by folding, reported
    unreduced. Empty means all zero.
    """
    final_frames: Tuple[float, ...] = ()
    folded: bool = False

    @model_validator(mode="after")
    def _check_native(self) -> "NativeCircuit":
        allowed = PHYSICAL_KINDS if self.folded else NATIVE_KINDS
        for index, g in enumerate(self.gates):
            if g.kind not in allowed:
                stage = "folded" if self.folded else "native"
                raise ValueError(f"gate {index} ({g}) is not allowed in a {stage} circuit")
        if self.final_frames and len(self.final_frames) != self.n_qubits:
            raise ValueError(f"final_frames has {len(self.final_frames)} entries for {self.n_qubits} qubits")
        return self

    @property
    def frames(self) -> Tuple[float, ...]:
        return self.final_frames or (0.0,) * self.n_qubits

    def physical_pulse_count(self) -> int:
        return sum(1 for g in self.gates if g.kind in PHYSICAL_KINDS)

    def with_frames_appended(self) -> Circuit:
        """Plain circuit with RZ(final_frames[q]) appended per qubit (M gates dropped)."""
        gates: List[Gate] = [g for g in self.gates if g.kind != GateKind.M]
        for q, theta in enumerate(self.frames):
            if theta != 0.0:
                gates.append(Gate(kind=GateKind.RZ, params=(theta,), qubits=(q,)))
        return Circuit(n_qubits=self.n_qubits, gates=tuple(gates))

    def to_dict(self) -> dict:
        data = super().to_dict()
        data["final_frames"] = list(self.frames)
        data["folded"] = self.folded
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "NativeCircuit":
        base = Circuit.from_dict(data)
        return cls(
            n_qubits=base.n_qubits,
            n_clbits=base.n_clbits,
            gates=base.gates,
            final_frames=tuple(float(f) for f in data.get("final_frames", ())),
            folded=bool(data.get("folded", False)),
        )


class PhaseFrame:
    """Per-qubit virtual-Z state.

    ``frames`` accumulates the logical rotation (Z adds π, RZ(θ) adds θ) and is what
    gets reported. ``drive_offsets`` is the shift applied to later drive phases:
    moving RZ(θ) past GPI2(φ) turns it into GPI2(φ − θ), and Z is RZ(−π) up to phase.
    """

    def __init__(self, n_qubits: int, frames: Optional[Sequence[float]] = None):
        self.frames: List[float] = list(frames) if frames else [0.0] * n_qubits
        self.drive_offsets: List[float] = [0.0] * n_qubits

    def absorb(self, g: Gate) -> bool:
        """Fold a Z/RZ into the frame; returns False for any other gate."""
        q = g.qubits[0]
        if g.kind == GateKind.Z:
            self.frames[q] += math.pi
            self.drive_offsets[q] += math.pi
            return True
        if g.kind == GateKind.RZ:
            theta = g.params[0]
            self.frames[q] += theta
            self.drive_offsets[q] -= theta
            return True
        return False

    def drive_phase(self, q: int, phi: float) -> float:
        return phi + self.drive_offsets[q]
