"""Deterministic native-gate → pulse rules."""
from typing import List

from core.circuit import Gate, GateKind
from core.errors import ScheduleError
from core.transpiler.native import PhaseFrame
from infrastructure.platform import PlatformSpec
from .calibration import calibrate_pi2_amplitude
from .channels import coupling_channel_id, drive_channel_id, readout_channel_id
from .pulse_schema import Pulse


def _duration(value: float, what: str) -> float:
    if not value > 0:
        raise ScheduleError(f"{what} duration must be > 0, got {value} ns")
    return value


def compile_gate(g: Gate, frame: PhaseFrame, p: PlatformSpec, label: int = 0) -> List[Pulse]:
    """Unscheduled pulses (start 0) for one native gate.

    Z/RZ update ``frame`` and emit nothing; I emits nothing. GPI2 phases are shifted
    by the frame's pending drive offset.

    Raises:
        ScheduleError: non-native gate, CZ on an uncoupled pair, zero duration
    """
    timings = p.timings
    if g.kind in (GateKind.Z, GateKind.RZ):
        frame.absorb(g)
        return []
    if g.kind == GateKind.I:
        return []
    if g.kind == GateKind.GPI2:
        q = g.qubits[0]
        duration = _duration(timings.gpi2_duration, "GPI2")
        return [Pulse(
            channel=drive_channel_id(q),
            kind="drive",
            duration=duration,
            phase=frame.drive_phase(q, g.params[0]),
            amplitude=calibrate_pi2_amplitude(duration),
            qubits=(q,),
            label=label,
        )]
    if g.kind == GateKind.CZ:
        a, b = g.qubits
        if not p.are_coupled(a, b):
            raise ScheduleError(f"CZ on uncoupled pair ({a}, {b}) at gate {label}")
        return [Pulse(
            channel=coupling_channel_id(a, b),
            kind="coupling",
            duration=_duration(timings.cz_duration, "CZ"),
            qubits=tuple(sorted((a, b))),
            label=label,
        )]
    if g.kind == GateKind.M:
        q = g.qubits[0]
        return [Pulse(
            channel=readout_channel_id(q),
            kind="readout",
            duration=_duration(timings.readout_duration, "readout"),
            qubits=(q,),
            label=label,
        )]
    raise ScheduleError(f"gate {label} ({g}) is not native; transpile first")
