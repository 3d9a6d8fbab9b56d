"""
Truncated multi-level Hilbert space and local-operator application.

Basis index digits are read in base ``levels`` with qubit 0 as the most
significant digit. Local operators are applied by reshaping instead of building
d^n × d^n embeddings.
"""
import itertools
from typing import List

import numpy as np


def annihilation(levels: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, levels, dtype=float)), k=1).astype(complex)


def number(levels: int) -> np.ndarray:
    return np.diag(np.arange(levels, dtype=float)).astype(complex)


class HilbertSpace:
    """``n_qubits`` transmons truncated to ``levels`` each."""

    def __init__(self, n_qubits: int, levels: int = 3):
        if n_qubits < 0 or levels < 2:
            raise ValueError(f"invalid space: n_qubits={n_qubits}, levels={levels}")
        self.n_qubits = n_qubits
        self.levels = levels
        self.dim = levels ** n_qubits
        # occupation[q, i]: level of qubit q in basis state i
        digits = np.array(list(itertools.product(range(levels), repeat=n_qubits)), dtype=int)
        self.occupation = digits.T.reshape(n_qubits, self.dim) if n_qubits else np.zeros((0, 1), dtype=int)
        computational = np.all(self.occupation <= 1, axis=0)
        self.computational_indices = np.flatnonzero(computational)

    def __repr__(self) -> str:
        return f"HilbertSpace(n_qubits={self.n_qubits}, levels={self.levels})"

    def __eq__(self, other) -> bool:
        return isinstance(other, HilbertSpace) and (self.n_qubits, self.levels) == (other.n_qubits, other.levels)

    def __hash__(self) -> int:
        return hash((self.n_qubits, self.levels))

    def labels(self) -> List[str]:
        """Computational basis labels in index order, e.g. 00, 01, 10, 11."""
        return ["".join(bits) for bits in itertools.product("01", repeat=self.n_qubits)]

    def level_label(self, index: int) -> str:
        return "".join(str(v) for v in self.occupation[:, index])

    def index_of(self, label: str) -> int:
        if len(label) != self.n_qubits:
            raise ValueError(f"label '{label}' does not match {self.n_qubits} qubits")
        index = 0
        for ch in label:
            index = index * self.levels + int(ch)
        return index

    def level_diagonal(self, q: int) -> np.ndarray:
        """Diagonal of n_q over the full basis."""
        return self.occupation[q].astype(float)

    def projector_diagonal(self, q: int, level: int) -> np.ndarray:
        return (self.occupation[q] == level).astype(float)

    def embed(self, op: np.ndarray, q: int) -> np.ndarray:
        """Dense d^n × d^n embedding of a single-qubit operator (tests and oracles)."""
        left = np.eye(self.levels ** q)
        right = np.eye(self.levels ** (self.n_qubits - q - 1))
        return np.kron(np.kron(left, op), right)

    def apply_left(self, op: np.ndarray, q: int, x: np.ndarray) -> np.ndarray:
        """op_q · x for x of shape (dim,) or (dim, m)."""
        d = self.levels
        shape = x.shape
        view = x.reshape(d ** q, d, -1)
        return np.matmul(op, view).reshape(shape)

    def apply_right(self, x: np.ndarray, op: np.ndarray, q: int) -> np.ndarray:
        """x · op_q for x of shape (m, dim)."""
        d = self.levels
        shape = x.shape
        view = x.reshape(-1, d, d ** (self.n_qubits - q - 1))
        return np.matmul(op.T, view).reshape(shape)
