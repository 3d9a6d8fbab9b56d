"""Virtual-Z folding: Z/RZ become frame updates carried by later drive phases."""
from typing import List

from core.circuit import Gate, GateKind
from .native import NativeCircuit, PhaseFrame


def fold_virtual_z(c: NativeCircuit) -> NativeCircuit:
    """Remove every Z/RZ and I, shifting later GPI2 phases on the same qubit.

    CZ is diagonal and passes through unchanged. M ignores the frame. The
    per-qubit residual rotation is reported unreduced in ``final_frames``.
    """
    frame = PhaseFrame(c.n_qubits, c.final_frames)
    folded: List[Gate] = []
    for g in c.gates:
        if g.kind == GateKind.I or frame.absorb(g):
            continue
        if g.kind == GateKind.GPI2:
            q = g.qubits[0]
            folded.append(g.model_copy(update={"params": (frame.drive_phase(q, g.params[0]),)}))
            continue
        folded.append(g)
    return NativeCircuit(
        n_qubits=c.n_qubits,
        n_clbits=c.n_clbits,
        gates=tuple(folded),
        final_frames=tuple(frame.frames),
        folded=True,
    )
