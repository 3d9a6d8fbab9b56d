"""Quantum Fourier transform circuit builder."""
import math

import numpy as np

from core.errors import CircuitError
from .circuit import Circuit
from .gates import gate


def build_qft(n: int, include_final_swaps: bool = True) -> Circuit:
    """Textbook QFT on ``n`` qubits.

    For j in 0..n-1: H(j), then CP(π/2^(k−j)) with control k and target j for every
    k > j. The optional SWAP layer reverses qubit order so the unitary matches the
    DFT matrix under the qubit-0-most-significant labeling.
    """
    if n < 1:
        raise CircuitError(f"QFT needs at least one qubit, got {n}")
    gates = []
    for j in range(n):
        gates.append(gate("H", j))
        for k in range(j + 1, n):
            gates.append(gate("CP", k, j, params=(math.pi / 2 ** (k - j),)))
    if include_final_swaps:
        for i in range(n // 2):
            gates.append(gate("SWAP", i, n - 1 - i))
    return Circuit(n_qubits=n, gates=tuple(gates))


def dft_matrix(n: int) -> np.ndarray:
    """Entries e^{2πi·jk/N}/√N with N = 2^n."""
    size = 2 ** n
    j, k = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    return np.exp(2j * np.pi * j * k / size) / math.sqrt(size)
