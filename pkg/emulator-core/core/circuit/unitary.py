"""Brute-force unitary oracle used by tests and the validator."""
from typing import Sequence

import numpy as np

from config.settings import MAX_UNITARY_QUBITS
from core.errors import CircuitError
from .circuit import Circuit
from .gates import GateKind, gate_matrix


def apply_local(op: np.ndarray, qubits: Sequence[int], tensor: np.ndarray, n_qubits: int) -> np.ndarray:
    """Left-multiply a (2^n, m) array by ``op`` acting on ``qubits``."""
    k = len(qubits)
    trailing = tensor.shape[1:]
    t = tensor.reshape((2,) * n_qubits + trailing)
    g = op.reshape((2,) * (2 * k))
    out = np.tensordot(g, t, axes=(list(range(k, 2 * k)), list(qubits)))
    out = np.moveaxis(out, list(range(k)), list(qubits))
    return out.reshape((2 ** n_qubits,) + trailing)


def circuit_unitary(c: Circuit, strip_measurements: bool = False) -> np.ndarray:
    """Product of embedded gate matrices, first gate applied first.

    Args:
        c: circuit with at most MAX_UNITARY_QUBITS qubits
        strip_measurements: drop M gates instead of rejecting them

    Raises:
        CircuitError: size cap exceeded, or M present without stripping
    """
    n = c.n_qubits
    if n > MAX_UNITARY_QUBITS:
        raise CircuitError(f"unitary oracle is limited to {MAX_UNITARY_QUBITS} qubits, got {n}")
    u = np.eye(2 ** n, dtype=complex)
    for g in c.gates:
        if g.kind == GateKind.M:
            if strip_measurements:
                continue
            raise CircuitError("circuit contains measurements; strip them first")
        if g.kind == GateKind.I:
            continue
        u = apply_local(gate_matrix(g), g.qubits, u, n)
    return u


def phase_aligned_distance(u: np.ndarray, v: np.ndarray) -> float:
    """min over |λ|=1 of ‖u − λ·v‖_F, with λ the phase of tr(v†u)."""
    if u.shape != v.shape:
        raise CircuitError(f"dimension mismatch: {u.shape} vs {v.shape}")
    overlap = np.vdot(v, u)
    magnitude = abs(overlap)
    phase = overlap / magnitude if magnitude > 1e-300 else 1.0
    return float(np.linalg.norm(u - phase * v))


def equivalent_up_to_global_phase(u: np.ndarray, v: np.ndarray, tol: float = 1e-9) -> bool:
    return phase_aligned_distance(u, v) < tol


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    return float(np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0]))) < tol


def layout_permutation(logical_to_physical: Sequence[int]) -> np.ndarray:
    """Permutation taking logical-labeled basis states to physical labels.

    Basis index bits are read with qubit 0 as the most significant bit.
    """
    n = len(logical_to_physical)
    dim = 2 ** n
    perm = np.zeros((dim, dim))
    for x in range(dim):
        y = 0
        for logical, physical in enumerate(logical_to_physical):
            bit = (x >> (n - 1 - logical)) & 1
            y |= bit << (n - 1 - physical)
        perm[y, x] = 1.0
    return perm


def basis_state(n_qubits: int, index: int = 0) -> np.ndarray:
    psi = np.zeros(2 ** n_qubits, dtype=complex)
    psi[index] = 1.0
    return psi


def rz_layer(frames: Sequence[float]) -> np.ndarray:
    """Diagonal of ⊗_q RZ(frames[q]) on the 2^n computational basis."""
    n = len(frames)
    diag = np.ones(2 ** n, dtype=complex)
    for index in range(2 ** n):
        phase = 0.0
        for q, theta in enumerate(frames):
            bit = (index >> (n - 1 - q)) & 1
            phase += theta / 2 if bit else -theta / 2
        diag[index] = np.exp(1j * phase)
    return diag
