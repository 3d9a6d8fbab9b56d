"""Density-matrix engine: dρ/dt = −i(H_eff ρ − ρ H_eff†) + Σ L ρ L†."""
from typing import Optional

import numpy as np

from core.errors import InvariantError
from .density import DensityMatrix, POSITIVITY_TOL
from .model import DynamicsModel
from .simulation_engine import SimulationEngine

PURITY_TOL = 1e-7


class LindbladEngine(SimulationEngine):
    name = "lindblad"

    def initial_vector(self, model: DynamicsModel, rho0: Optional[DensityMatrix]) -> np.ndarray:
        dim = model.space.dim
        rho = DensityMatrix.basis(dim) if rho0 is None else rho0
        if rho.dim != dim:
            raise ValueError(f"initial state has dim {rho.dim}, space has {dim}")
        return np.array(rho.data, dtype=complex).ravel()

    def rhs(self, model: DynamicsModel, t: float, y: np.ndarray) -> np.ndarray:
        space = model.space
        rho = y.reshape(space.dim, space.dim)
        h = model.diagonal(t) - 0.5j * model.decay
        out = -1j * (h[:, None] * rho + model.apply_offdiagonal(t, rho))
        out = out + out.conj().T
        for op in model.jumps:
            w = op.weighted
            out += space.apply_right(space.apply_left(w, op.qubit, rho), w.conj().T, op.qubit)
        if model.collapse:
            out += model.dephasing * rho
        return out.ravel()

    def diagonals(self, model: DynamicsModel, ys: np.ndarray) -> np.ndarray:
        dim = model.space.dim
        return np.real(ys[:, ::dim + 1])

    def to_density(self, model: DynamicsModel, y: np.ndarray) -> DensityMatrix:
        dim = model.space.dim
        return DensityMatrix(y.reshape(dim, dim).copy())

    def check_samples(self, model, times, ys, diag, first_index) -> None:
        super().check_samples(model, times, ys, diag, first_index)
        dim = model.space.dim
        if model.noise_free:
            purity = np.sum(np.abs(ys) ** 2, axis=1)
            worst = int(np.argmin(purity))
            if purity[worst] < 1.0 - PURITY_TOL:
                raise InvariantError("purity", float(times[worst]), float(purity[worst]))
        stride = model.positivity_stride or max(1, (dim // 9) ** 3)
        picks = [k for k in range(len(times)) if (first_index + k) % stride == 0]
        if not picks:
            return
        block = ys[picks].reshape(len(picks), dim, dim)
        block = 0.5 * (block + np.conj(np.transpose(block, (0, 2, 1))))
        lowest = np.linalg.eigvalsh(block)[:, 0]
        worst = int(np.argmin(lowest))
        if lowest[worst] < -POSITIVITY_TOL:
            raise InvariantError("positivity", float(times[picks[worst]]), float(lowest[worst]))
