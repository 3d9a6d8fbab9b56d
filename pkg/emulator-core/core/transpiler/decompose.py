"""One-step rewrite table and recursive unrolling to the native set."""
import math
from typing import List

from core.circuit import Circuit, Gate, GateKind, NATIVE_KINDS, gate
from core.errors import TranspileError
from .native import NativeCircuit

PI = math.pi


def translate_gate(g: Gate) -> List[Gate]:
    """Rewrite ``g`` one step toward {I, Z, RZ, GPI2, CZ, M}; gates apply left to right.

    Every row equals the source gate up to global phase. X uses the Z sandwich so
    the rewrite stays unitary-preserving rather than frame-preserving only.
    """
    kind = g.kind
    if kind in NATIVE_KINDS:
        return [g]
    if kind == GateKind.H:
        (q,) = g.qubits
        return [gate("Z", q), gate("GPI2", q, params=(PI / 2,))]
    if kind == GateKind.X:
        (q,) = g.qubits
        return [gate("Z", q), gate("GPI2", q, params=(0.0,)), gate("GPI2", q, params=(0.0,)), gate("Z", q)]
    if kind == GateKind.Y:
        (q,) = g.qubits
        return [gate("X", q), gate("Z", q)]
    if kind == GateKind.S:
        return [gate("RZ", *g.qubits, params=(PI / 2,))]
    if kind == GateKind.T:
        return [gate("RZ", *g.qubits, params=(PI / 4,))]
    if kind == GateKind.U3:
        (q,) = g.qubits
        theta, phi, lam = g.params
        return [
            gate("RZ", q, params=(lam,)),
            gate("GPI2", q, params=(0.0,)),
            gate("RZ", q, params=(theta + PI,)),
            gate("GPI2", q, params=(0.0,)),
            gate("RZ", q, params=(phi + PI,)),
        ]
    if kind == GateKind.RX:
        return [gate("U3", *g.qubits, params=(g.params[0], -PI / 2, PI / 2))]
    if kind == GateKind.RY:
        return [gate("U3", *g.qubits, params=(g.params[0], 0.0, 0.0))]
    if kind == GateKind.CNOT:
        c, t = g.qubits
        return [gate("H", t), gate("CZ", c, t), gate("H", t)]
    if kind == GateKind.CP:
        c, t = g.qubits
        half = g.params[0] / 2
        return [
            gate("RZ", c, params=(half,)),
            gate("CNOT", c, t),
            gate("RZ", t, params=(-half,)),
            gate("CNOT", c, t),
            gate("RZ", t, params=(half,)),
        ]
    if kind == GateKind.SWAP:
        a, b = g.qubits
        return [gate("CNOT", a, b), gate("CNOT", b, a), gate("CNOT", a, b)]
    raise TranspileError(f"no decomposition for gate kind {kind.value}")


def unroll(c: Circuit) -> NativeCircuit:
    """Apply translate_gate recursively until only native kinds remain."""
    native: List[Gate] = []
    pending = list(reversed(c.gates))
    while pending:
        g = pending.pop()
        if g.kind in NATIVE_KINDS:
            native.append(g)
            continue
        pending.extend(reversed(translate_gate(g)))
    return NativeCircuit(n_qubits=c.n_qubits, n_clbits=c.n_clbits, gates=tuple(native))
