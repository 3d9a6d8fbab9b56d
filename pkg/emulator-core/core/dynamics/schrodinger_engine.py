"""State-vector engine for noise-free runs: dψ/dt = −i H ψ."""
from typing import Optional

import numpy as np

from core.errors import SolverError
from .density import DensityMatrix
from .model import DynamicsModel
from .simulation_engine import SimulationEngine


class SchrodingerEngine(SimulationEngine):
    name = "schrodinger"
    # the norm is not a linear invariant of the Runge-Kutta map
    trace_tol = 1e-7

    def initial_vector(self, model: DynamicsModel, rho0: Optional[DensityMatrix]) -> np.ndarray:
        if model.collapse:
            raise SolverError("the schrodinger engine cannot model decoherence; disable it or use lindblad")
        dim = model.space.dim
        if rho0 is None:
            psi = np.zeros(dim, dtype=complex)
            psi[0] = 1.0
            return psi
        values, vectors = np.linalg.eigh(rho0.symmetrized().data)
        if values[-1] < 1.0 - 1e-10:
            raise SolverError(f"the schrodinger engine needs a pure initial state (largest eigenvalue {values[-1]:.3e})")
        return vectors[:, -1].astype(complex)

    def rhs(self, model: DynamicsModel, t: float, y: np.ndarray) -> np.ndarray:
        return -1j * (model.diagonal(t) * y + model.apply_offdiagonal(t, y))

    def diagonals(self, model: DynamicsModel, ys: np.ndarray) -> np.ndarray:
        return np.abs(ys) ** 2

    def to_density(self, model: DynamicsModel, y: np.ndarray) -> DensityMatrix:
        return DensityMatrix.from_pure(y)
