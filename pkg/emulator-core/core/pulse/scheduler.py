"""
Channel-conflict-free scheduling of compiled pulses.

sequential: every physical pulse starts when the previous one (program order) ends.
asap: a pulse starts once its qubits and every channel it reserves are free. A
coupling pulse reserves the coupler plus both drive channels.
All readouts start together at last_gate_end + measurement_buffer.
"""
from collections import defaultdict
import math
from typing import Dict, List, Optional

from loguru import logger

from core.circuit import GateKind
from core.state.state_schema import SchedulerPolicy
from core.transpiler.native import NativeCircuit, PhaseFrame
from infrastructure.platform import PlatformSpec
from .channels import drive_channel_id
from .compiler import compile_gate
from .pulse_schema import Pulse, PulseSchedule, VirtualZ


def _reserved_channels(pulse: Pulse) -> List[str]:
    if pulse.kind == "coupling":
        return [pulse.channel] + [drive_channel_id(q) for q in pulse.qubits]
    return [pulse.channel]


def _assert_disjoint(pulses: List[Pulse]) -> None:
    by_channel: Dict[str, List[Pulse]] = defaultdict(list)
    for pulse in pulses:
        by_channel[pulse.channel].append(pulse)
    for channel, items in by_channel.items():
        items.sort(key=lambda x: x.start)
        for prev, nxt in zip(items, items[1:]):
            assert prev.end <= nxt.start + 1e-9, f"overlap on {channel}: gate {prev.label} and gate {nxt.label}"


def schedule(c: NativeCircuit, p: PlatformSpec, policy: Optional[SchedulerPolicy] = None) -> PulseSchedule:
    """Compile and time every gate of ``c``."""
    policy = policy or SchedulerPolicy()
    sequential = policy.mode == "sequential"
    frame = PhaseFrame(c.n_qubits, c.final_frames)

    clock = 0.0
    qubit_ready = [0.0] * c.n_qubits
    channel_free: Dict[str, float] = defaultdict(float)
    timed: List[Pulse] = []
    readouts: List[Pulse] = []
    virtual_z: List[VirtualZ] = []

    for label, g in enumerate(c.gates):
        if g.kind in (GateKind.Z, GateKind.RZ):
            q = g.qubits[0]
            angle = g.params[0] if g.kind == GateKind.RZ else math.pi
            virtual_z.append(VirtualZ(qubit=q, time=clock if sequential else qubit_ready[q], angle=angle, label=label))
        for pulse in compile_gate(g, frame, p, label):
            if pulse.kind == "readout":
                readouts.append(pulse)
                continue
            reserved = _reserved_channels(pulse)
            if sequential:
                start = clock
            else:
                start = max([qubit_ready[q] for q in pulse.qubits] + [channel_free[ch] for ch in reserved])
            end = start + pulse.duration
            for q in pulse.qubits:
                qubit_ready[q] = end
            for ch in reserved:
                channel_free[ch] = end
            clock = max(clock, end)
            timed.append(pulse.at(start))

    last_gate_end = max((x.end for x in timed), default=0.0)
    if readouts:
        onset = last_gate_end + p.timings.measurement_buffer
        timed.extend(r.at(onset) for r in readouts)

    timed.sort(key=lambda x: (x.start, x.label, x.channel))
    _assert_disjoint(timed)
    total = max((x.end for x in timed), default=0.0)

    result = PulseSchedule(
        platform=p.name,
        policy=policy.mode,
        n_qubits=c.n_qubits,
        pulses=tuple(timed),
        total_duration=total,
        frames=tuple(frame.frames),
        virtual_z=tuple(virtual_z),
        circuit=c,
    )
    logger.bind(log_tag="pulse").info(
        f"scheduled {len(timed)} pulses ({policy.mode}), gates end at {last_gate_end:g} ns, total {total:g} ns"
    )
    return result
