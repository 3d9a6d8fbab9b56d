"""Post-processing of simulated states: projection, fidelity, frames and sampling."""
from typing import Dict, Sequence, Tuple

import numpy as np

from core.circuit import rz_layer
from core.errors import InvariantError, SolverError
from .density import DensityMatrix, POSITIVITY_TOL
from .hilbert import HilbertSpace

SUPPORT_FLOOR = 1e-12


def project_computational(rho: DensityMatrix, space: HilbertSpace) -> Tuple[DensityMatrix, float]:
    """PρP / Tr(PρP) on the 2^n subspace and the leakage 1 − Tr(PρP).

    Raises:
        SolverError: the state has (numerically) no computational support
    """
    idx = space.computational_indices
    block = rho.data[np.ix_(idx, idx)]
    support = float(np.real(np.trace(block)))
    if support < SUPPORT_FLOOR:
        raise SolverError(f"state has no computational support (Tr(PρP) = {support:.3e})")
    total = rho.trace()
    return DensityMatrix(block / support), max(0.0, total - support)


def _psd_sqrt(matrix: np.ndarray, name: str) -> np.ndarray:
    values, vectors = np.linalg.eigh(0.5 * (matrix + matrix.conj().T))
    if values[0] < -POSITIVITY_TOL:
        raise InvariantError(f"positivity of {name}", None, float(values[0]))
    values = np.clip(values, 0.0, None)
    return (vectors * np.sqrt(values)) @ vectors.conj().T


def fidelity(rho1: DensityMatrix, rho2: DensityMatrix) -> float:
    """Uhlmann fidelity [Tr √(√ρ1 ρ2 √ρ1)]², clipped to [0, 1]."""
    if rho1.dim != rho2.dim:
        raise ValueError(f"dimension mismatch: {rho1.dim} vs {rho2.dim}")
    root = _psd_sqrt(rho1.data, "rho1")
    _psd_sqrt(rho2.data, "rho2")
    inner = root @ rho2.data @ root
    values = np.clip(np.linalg.eigvalsh(0.5 * (inner + inner.conj().T)), 0.0, None)
    return float(min(1.0, max(0.0, np.sum(np.sqrt(values)) ** 2)))


def apply_frames(rho: DensityMatrix, frames: Sequence[float]) -> DensityMatrix:
    """RZ-layer(frames) · ρ · RZ-layer(frames)† on the computational subspace."""
    diag = rz_layer(frames)
    return DensityMatrix(diag[:, None] * rho.data * diag.conj()[None, :])


def sample_counts(rho: DensityMatrix, shots: int, seed: int, labels: Sequence[str]) -> Dict[str, int]:
    """Multinomial draw from the diagonal; only outcomes that occurred are listed."""
    if shots <= 0:
        return {}
    probs = np.clip(rho.populations(), 0.0, None)
    probs = probs / probs.sum()
    draws = np.random.default_rng(seed).multinomial(shots, probs)
    return {label: int(n) for label, n in zip(labels, draws) if n > 0}
