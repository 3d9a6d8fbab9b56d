"""
Gate kinds, the immutable Gate value object and the defining gate matrices.

Convention: qubit 0 is the most significant bit, and a two-qubit matrix acts on
``(qubits[0], qubits[1])`` in that order.
"""
import math
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from core.errors import CircuitError


class GateKind(str, Enum):
    """Supported gate kinds."""
    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"
    H = "H"
    S = "S"
    T = "T"
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    U3 = "U3"
    GPI2 = "GPI2"
    CNOT = "CNOT"
    CZ = "CZ"
    CP = "CP"
    SWAP = "SWAP"
    M = "M"


TWO_QUBIT_KINDS = frozenset({GateKind.CNOT, GateKind.CZ, GateKind.CP, GateKind.SWAP})
NATIVE_KINDS = frozenset({GateKind.I, GateKind.Z, GateKind.RZ, GateKind.GPI2, GateKind.CZ, GateKind.M})
PHYSICAL_KINDS = frozenset({GateKind.GPI2, GateKind.CZ, GateKind.M})

PARAM_COUNT = {
    GateKind.RX: 1,
    GateKind.RY: 1,
    GateKind.RZ: 1,
    GateKind.GPI2: 1,
    GateKind.CP: 1,
    GateKind.U3: 3,
}


def arity(kind: GateKind) -> int:
    return 2 if kind in TWO_QUBIT_KINDS else 1


class Gate(BaseModel):
    """One gate application.

    Args:
        kind: gate kind
        params: angles in radians, count fixed by kind
        qubits: ordered operand indices (control first for CNOT/CP)
        classical_target: measured bit index, M only
    """
    model_config = ConfigDict(frozen=True)

    kind: GateKind
    params: Tuple[float, ...] = ()
    qubits: Tuple[int, ...]
    classical_target: Optional[int] = None

    @field_validator("params")
    @classmethod
    def _finite_params(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        if not all(math.isfinite(p) for p in v):
            raise ValueError(f"angles must be finite, got {v}")
        return v

    @model_validator(mode="after")
    def _check_shape(self) -> "Gate":
        if len(self.qubits) != arity(self.kind):
            raise ValueError(f"{self.kind.value} acts on {arity(self.kind)} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind.value} operands must be distinct, got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.qubits}")
        expected = PARAM_COUNT.get(self.kind, 0)
        if len(self.params) != expected:
            raise ValueError(f"{self.kind.value} takes {expected} parameter(s), got {len(self.params)}")
        if self.classical_target is not None and self.kind != GateKind.M:
            raise ValueError("classical_target is only valid on M")
        return self

    @property
    def is_two_qubit(self) -> bool:
        return self.kind in TWO_QUBIT_KINDS

    def remapped(self, mapping) -> "Gate":
        """Same gate with every operand q replaced by mapping[q]."""
        return self.model_copy(update={"qubits": tuple(int(mapping[q]) for q in self.qubits)})

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value, "params": list(self.params), "qubits": list(self.qubits)}
        if self.classical_target is not None:
            data["classical_target"] = self.classical_target
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Gate":
        return cls(
            kind=GateKind(data["kind"]),
            params=tuple(float(p) for p in data.get("params", ())),
            qubits=tuple(int(q) for q in data["qubits"]),
            classical_target=data.get("classical_target"),
        )

    def __str__(self) -> str:
        args = f"({', '.join(f'{p:.6g}' for p in self.params)})" if self.params else ""
        return f"{self.kind.value}{args}{list(self.qubits)}"


def gate(kind: str, *qubits: int, params: Tuple[float, ...] = (), clbit: Optional[int] = None) -> Gate:
    """Shorthand constructor used by passes and tests."""
    return Gate(kind=GateKind(kind), qubits=tuple(qubits), params=tuple(params), classical_target=clbit)


_SQRT2 = math.sqrt(2.0)


def gpi2_matrix(phi: float) -> np.ndarray:
    return np.array(
        [[1.0, -1j * np.exp(-1j * phi)], [-1j * np.exp(1j * phi), 1.0]], dtype=complex
    ) / _SQRT2


def rz_matrix(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=complex,
    )


_FIXED = {
    GateKind.I: np.eye(2, dtype=complex),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.diag([1.0, -1.0]).astype(complex),
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) / _SQRT2,
    GateKind.S: np.diag([1.0, 1j]),
    GateKind.T: np.diag([1.0, np.exp(0.25j * math.pi)]),
    GateKind.CNOT: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    GateKind.CZ: np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex),
    GateKind.SWAP: np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}


def gate_matrix(g: Gate) -> np.ndarray:
    """Defining unitary of ``g`` on its own qubits.

    Raises:
        CircuitError: for M, which has no unitary
    """
    kind = g.kind
    if kind == GateKind.M:
        raise CircuitError("measurement has no unitary matrix")
    if kind in _FIXED:
        return _FIXED[kind].copy()
    if kind == GateKind.RZ:
        return rz_matrix(g.params[0])
    if kind == GateKind.GPI2:
        return gpi2_matrix(g.params[0])
    if kind == GateKind.U3:
        return u3_matrix(*g.params)
    if kind == GateKind.RX:
        theta = g.params[0]
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if kind == GateKind.RY:
        theta = g.params[0]
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind == GateKind.CP:
        return np.diag([1.0, 1.0, 1.0, np.exp(1j * g.params[0])])
    raise CircuitError(f"no matrix for gate kind {kind.value}")
