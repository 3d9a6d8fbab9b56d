"""Amplitude-damping and pure-dephasing collapse operators."""
import math
from dataclasses import dataclass
from typing import List

import numpy as np

from infrastructure.platform import PlatformSpec, pure_dephasing_time
from .hilbert import HilbertSpace, annihilation


@dataclass(frozen=True)
class CollapseOp:
    """Rate-weighted single-qubit jump operator L = √rate · op."""
    qubit: int
    kind: str  # relaxation | dephasing
    rate: float  # 1/ns
    local: np.ndarray

    @property
    def weighted(self) -> np.ndarray:
        return math.sqrt(self.rate) * self.local

    def to_dense(self, space: HilbertSpace) -> np.ndarray:
        return space.embed(self.weighted, self.qubit)

    def decay_diagonal(self, space: HilbertSpace) -> np.ndarray:
        """Diagonal of L†L over the full basis (both operators give diagonal L†L)."""
        local = np.real(np.diag(self.weighted.conj().T @ self.weighted))
        return local[space.occupation[self.qubit]]


def dephasing_local(levels: int) -> np.ndarray:
    diag = np.zeros(levels)
    diag[0], diag[1] = 1.0, -1.0
    return np.diag(diag).astype(complex)


def build_collapse_ops(p: PlatformSpec, space: HilbertSpace, decoherence: bool = True) -> List[CollapseOp]:
    """L1 = √(1/T1)·a and L2 = √(1/(2Tφ))·(|0⟩⟨0| − |1⟩⟨1|) per qubit."""
    if not decoherence:
        return []
    ops: List[CollapseOp] = []
    for q in range(space.n_qubits):
        params = p.qubits[q]
        if params.t1 is not None:
            ops.append(CollapseOp(q, "relaxation", 1.0 / params.t1, annihilation(space.levels)))
        t_phi = pure_dephasing_time(params)
        if math.isfinite(t_phi):
            ops.append(CollapseOp(q, "dephasing", 1.0 / (2 * t_phi), dephasing_local(space.levels)))
    return ops
