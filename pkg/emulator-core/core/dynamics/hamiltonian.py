"""
Rotating-frame transmon Hamiltonian terms.

Every qubit co-rotates at its own frequency, so the ω_i n_i terms vanish. Drives are
resonant and taken under the rotating-wave approximation.
"""
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from core.errors import ScheduleError
from core.pulse import Pulse, default_sigma, gaussian_envelope
from infrastructure.platform import PlatformSpec
from .hilbert import HilbertSpace, annihilation


def build_static_hamiltonian(p: PlatformSpec, space: HilbertSpace) -> np.ndarray:
    """Σ (α_i/2)·n_i(n_i − 1) as a dense diagonal operator.

    Coupling terms are time dependent in this frame; see ``build_coupling_terms``.
    """
    return np.diag(static_diagonal(p, space)).astype(complex)


def static_diagonal(p: PlatformSpec, space: HilbertSpace) -> np.ndarray:
    diag = np.zeros(space.dim)
    for q in range(space.n_qubits):
        n = space.level_diagonal(q)
        diag += 0.5 * p.qubits[q].anharmonicity * n * (n - 1)
    return diag


@dataclass(frozen=True)
class DriveTerm:
    """(Ω(t)/2)(e^{−iφ} a_q + e^{iφ} a_q†) on [start, start + duration)."""
    qubit: int
    start: float
    duration: float
    amplitude: float
    phase: float
    levels: int

    @property
    def end(self) -> float:
        return self.start + self.duration

    @property
    def sigma(self) -> float:
        return default_sigma(self.duration)

    def active(self, t: float) -> bool:
        return self.start <= t < self.end

    def omega(self, t: float) -> float:
        return gaussian_envelope(t, self.start, self.duration, self.amplitude)

    def local(self, t: float) -> np.ndarray:
        a = annihilation(self.levels)
        phase = math.fmod(self.phase, 2 * math.pi)
        weighted = np.exp(-1j * phase) * a
        return 0.5 * self.omega(t) * (weighted + weighted.conj().T)

    def stark_shift(self, t: float, anharmonicity: float) -> float:
        """Second-order shift of |1⟩ from the off-resonant 1↔2 transition."""
        return self.omega(t) ** 2 / (2 * abs(anharmonicity))

    def to_dense(self, t: float, space: HilbertSpace) -> np.ndarray:
        return space.embed(self.local(t), self.qubit)


def build_drive_term(pulse: Pulse, space: HilbertSpace) -> DriveTerm:
    if pulse.kind != "drive":
        raise ScheduleError(f"expected a drive pulse, got {pulse.kind} on {pulse.channel}")
    return DriveTerm(
        qubit=pulse.qubits[0],
        start=pulse.start,
        duration=pulse.duration,
        amplitude=pulse.amplitude,
        phase=pulse.phase,
        levels=space.levels,
    )


@dataclass(frozen=True)
class CZTerm:
    """ζ·|11⟩⟨11| on ``pair`` while the coupling pulse is on."""
    pair: tuple
    start: float
    duration: float
    zeta: float
    diagonal: np.ndarray

    @property
    def end(self) -> float:
        return self.start + self.duration

    def active(self, t: float) -> bool:
        return self.start <= t < self.end

    def to_dense(self, t: float) -> np.ndarray:
        return np.diag(self.diagonal * (self.zeta if self.active(t) else 0.0)).astype(complex)


def build_cz_term(pulse: Pulse, space: HilbertSpace, zeta: Optional[float] = None) -> CZTerm:
    """Effective controlled-phase term; ζ defaults to π / pulse duration."""
    if pulse.kind != "coupling":
        raise ScheduleError(f"expected a coupling pulse, got {pulse.kind} on {pulse.channel}")
    a, b = pulse.qubits
    projector = space.projector_diagonal(a, 1) * space.projector_diagonal(b, 1)
    return CZTerm(
        pair=(a, b),
        start=pulse.start,
        duration=pulse.duration,
        zeta=math.pi / pulse.duration if zeta is None else zeta,
        diagonal=projector,
    )


@dataclass(frozen=True)
class CouplingTerm:
    """g(a_i† a_j e^{iΔt} + h.c.) with Δ = ω_i − ω_j."""
    a: int
    b: int
    strength: float
    detuning: float

    def coefficient(self, t: float) -> complex:
        return self.strength * np.exp(1j * self.detuning * t)

    def apply(self, space: HilbertSpace, x: np.ndarray, t: float) -> np.ndarray:
        lower = annihilation(space.levels)
        raise_ = lower.conj().T
        c = self.coefficient(t)
        forward = space.apply_left(raise_, self.a, space.apply_left(lower, self.b, x))
        backward = space.apply_left(raise_, self.b, space.apply_left(lower, self.a, x))
        return c * forward + np.conj(c) * backward

    def to_dense(self, t: float, space: HilbertSpace) -> np.ndarray:
        return self.apply(space, np.eye(space.dim, dtype=complex), t)


def build_coupling_terms(p: PlatformSpec, space: HilbertSpace) -> List[CouplingTerm]:
    terms = []
    for c in p.couplings:
        a, b = c.pair
        if c.strength == 0.0 or b >= space.n_qubits:
            continue
        terms.append(CouplingTerm(
            a=a, b=b, strength=c.strength, detuning=p.qubits[a].frequency - p.qubits[b].frequency,
        ))
    return terms
