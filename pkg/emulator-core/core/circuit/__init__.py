"""电路中间表示：门、电路、幺正预言机与QFT构造"""
from .gates import (
    Gate,
    GateKind,
    NATIVE_KINDS,
    PHYSICAL_KINDS,
    TWO_QUBIT_KINDS,
    gate,
    gate_matrix,
    gpi2_matrix,
    rz_matrix,
)
from .circuit import Circuit
from .unitary import (
    basis_state,
    circuit_unitary,
    equivalent_up_to_global_phase,
    is_unitary,
    layout_permutation,
    phase_aligned_distance,
    rz_layer,
)
from .qft import build_qft, dft_matrix

__all__ = [
    'Gate',
    'GateKind',
    'NATIVE_KINDS',
    'PHYSICAL_KINDS',
    'TWO_QUBIT_KINDS',
    'gate',
    'gate_matrix',
    'gpi2_matrix',
    'rz_matrix',
    'Circuit',
    'basis_state',
    'circuit_unitary',
    'equivalent_up_to_global_phase',
    'is_unitary',
    'layout_permutation',
    'phase_aligned_distance',
    'rz_layer',
    'build_qft',
    'dft_matrix',
]
