"""Density-matrix value object."""
from typing import Optional

import numpy as np

from core.errors import ArtifactError, InvariantError

TRACE_TOL = 1e-8
POSITIVITY_TOL = 1e-8
HERMITIAN_TOL = 1e-10


class DensityMatrix:
    """Complex dim × dim state. Not copied on construction."""

    def __init__(self, data: np.ndarray):
        data = np.asarray(data, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {data.shape}")
        self.data = data

    @classmethod
    def from_pure(cls, psi: np.ndarray) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def basis(cls, dim: int, index: int = 0) -> "DensityMatrix":
        data = np.zeros((dim, dim), dtype=complex)
        data[index, index] = 1.0
        return cls(data)

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=complex) / dim)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def trace(self) -> float:
        return float(np.real(np.trace(self.data)))

    def purity(self) -> float:
        return float(np.real(np.vdot(self.data, self.data)))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.symmetrized().data)[0])

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.data - self.data.conj().T), initial=0.0))

    def symmetrized(self) -> "DensityMatrix":
        return DensityMatrix(0.5 * (self.data + self.data.conj().T))

    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.data)).copy()

    def validate(self, time_ns: Optional[float] = None) -> "DensityMatrix":
        """Raise InvariantError naming the first broken invariant."""
        herm = self.hermiticity_error()
        if herm > HERMITIAN_TOL:
            raise InvariantError("hermiticity", time_ns, herm)
        drift = abs(self.trace() - 1.0)
        if drift > TRACE_TOL:
            raise InvariantError("trace", time_ns, drift)
        lowest = self.min_eigenvalue()
        if lowest < -POSITIVITY_TOL:
            raise InvariantError("positivity", time_ns, lowest)
        return self

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "real": np.real(self.data).tolist(),
            "imag": np.imag(self.data).tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DensityMatrix":
        try:
            matrix = np.asarray(data["real"], dtype=float) + 1j * np.asarray(data["imag"], dtype=float)
        except (KeyError, TypeError, ValueError) as e:
            raise ArtifactError(f"malformed state: {e}") from None
        return cls(matrix)
