"""Assembles every Hamiltonian and dissipation term a schedule needs."""
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from core.errors import ScheduleError
from core.pulse import PulseSchedule
from core.state.state_schema import SimOptions
from infrastructure.platform import PlatformSpec
from .dissipation import CollapseOp, build_collapse_ops
from .hamiltonian import (
    CouplingTerm,
    CZTerm,
    DriveTerm,
    build_coupling_terms,
    build_cz_term,
    build_drive_term,
    static_diagonal,
)
from .hilbert import HilbertSpace


@dataclass
class DynamicsModel:
    space: HilbertSpace
    static: np.ndarray  # real diagonal
    anharmonicities: List[float]
    drives: List[DriveTerm] = field(default_factory=list)
    cz_terms: List[CZTerm] = field(default_factory=list)
    couplings: List[CouplingTerm] = field(default_factory=list)
    collapse: List[CollapseOp] = field(default_factory=list)
    stark_tracking: bool = True
    positivity_stride: Optional[int] = None

    def __post_init__(self):
        space = self.space
        self.decay = np.zeros(space.dim)
        self.dephasing = np.zeros((space.dim, space.dim))
        self.jumps = []
        for op in self.collapse:
            self.decay += op.decay_diagonal(space)
            if op.kind == "dephasing":
                z = np.real(np.diag(op.local))[space.occupation[op.qubit]]
                self.dephasing += op.rate * np.outer(z, z)
            else:
                self.jumps.append(op)

    @property
    def noise_free(self) -> bool:
        return not self.collapse

    def diagonal(self, t: float) -> np.ndarray:
        """Real diagonal of H(t): static, active CZ and Stark-tracking parts."""
        h = self.static.copy()
        for term in self.cz_terms:
            if term.active(t):
                h += term.zeta * term.diagonal
        if self.stark_tracking:
            for term in self.drives:
                if term.active(t):
                    delta = term.stark_shift(t, self.anharmonicities[term.qubit])
                    h -= delta * self.space.level_diagonal(term.qubit)
        return h

    def apply_offdiagonal(self, t: float, x: np.ndarray) -> np.ndarray:
        """Drive and coupling part of H(t) applied from the left."""
        out = np.zeros_like(x)
        for term in self.drives:
            if term.active(t):
                out += self.space.apply_left(term.local(t), term.qubit, x)
        for term in self.couplings:
            out += term.apply(self.space, x, t)
        return out

    def dense_hamiltonian(self, t: float) -> np.ndarray:
        """H(t) as a dense matrix; used by tests as an independent reference."""
        eye = np.eye(self.space.dim, dtype=complex)
        return np.diag(self.diagonal(t)).astype(complex) + self.apply_offdiagonal(t, eye)

    def breakpoints(self) -> List[float]:
        edges = set()
        for term in list(self.drives) + list(self.cz_terms):
            edges.update((term.start, term.end))
        return sorted(edges)


def build_model(schedule: PulseSchedule, p: PlatformSpec, opts: SimOptions) -> DynamicsModel:
    n = schedule.n_qubits
    if n > p.n_qubits:
        raise ScheduleError(f"schedule uses {n} qubits but platform '{p.name}' has {p.n_qubits}")
    space = HilbertSpace(n, p.levels_per_qubit)
    zeta = math.pi / p.timings.cz_duration if p.timings.cz_duration > 0 else None
    model = DynamicsModel(
        space=space,
        static=static_diagonal(p, space),
        anharmonicities=[p.qubits[q].anharmonicity for q in range(n)],
        drives=[build_drive_term(x, space) for x in schedule.pulses if x.kind == "drive"],
        cz_terms=[build_cz_term(x, space, zeta) for x in schedule.pulses if x.kind == "coupling"],
        couplings=build_coupling_terms(p, space),
        collapse=build_collapse_ops(p, space, opts.decoherence),
        stark_tracking=opts.stark_tracking,
        positivity_stride=opts.positivity_stride,
    )
    return model
