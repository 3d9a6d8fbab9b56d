"""Qubit padding and peephole cancellation."""
import math
from typing import Dict, List, Optional

from core.circuit import Circuit, Gate, GateKind
from core.errors import TranspileError
from infrastructure.platform import PlatformSpec

_SELF_INVERSE = frozenset({GateKind.H, GateKind.X, GateKind.CZ})


def _is_full_turn(theta: float) -> bool:
    """RZ(2πk) equals ±I."""
    turns = theta / (2 * math.pi)
    return abs(turns - round(turns)) < 1e-12


def optimize_gates(gates: List[Gate], n_qubits: int) -> List[Gate]:
    """Single pass with per-qubit stacks, so cancellations cascade (H X X H → [])."""
    out: List[Optional[Gate]] = []
    stacks: Dict[int, List[int]] = {q: [] for q in range(n_qubits)}

    def last_on(qubits) -> Optional[int]:
        tops = {stacks[q][-1] if stacks[q] else None for q in qubits}
        return tops.pop() if len(tops) == 1 else None

    def drop(index: int) -> None:
        for q in out[index].qubits:
            stacks[q].pop()
        out[index] = None

    def push(g: Gate) -> None:
        out.append(g)
        for q in g.qubits:
            stacks[q].append(len(out) - 1)

    for g in gates:
        if g.kind == GateKind.I:
            continue
        if g.kind == GateKind.RZ and _is_full_turn(g.params[0]):
            continue
        prev_index = last_on(g.qubits)
        prev = out[prev_index] if prev_index is not None else None
        if prev is not None and prev.kind == g.kind:
            if g.kind in _SELF_INVERSE and set(prev.qubits) == set(g.qubits):
                drop(prev_index)
                continue
            if g.kind == GateKind.RZ:
                merged = prev.params[0] + g.params[0]
                drop(prev_index)
                if not _is_full_turn(merged):
                    push(Gate(kind=GateKind.RZ, params=(merged,), qubits=g.qubits))
                continue
        push(g)
    return [g for g in out if g is not None]


def preprocess(c: Circuit, p: PlatformSpec, optimize: bool = True) -> Circuit:
    """Widen ``c`` to the platform qubit count and optionally run peephole cancellation.

    Raises:
        TranspileError: circuit wider than the platform
    """
    if c.n_qubits > p.n_qubits:
        raise TranspileError(f"circuit uses {c.n_qubits} qubits but platform {p.name} has {p.n_qubits}")
    padded = c.widened(p.n_qubits)
    if not optimize:
        return padded
    return padded.with_gates(optimize_gates(list(padded.gates), padded.n_qubits))
