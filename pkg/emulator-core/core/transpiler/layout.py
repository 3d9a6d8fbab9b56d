"""Logical-to-physical qubit mapping."""
from typing import Tuple

from pydantic import BaseModel, ConfigDict, model_validator


class Layout(BaseModel):
    """Bijection from logical qubit ``l`` to physical qubit ``logical_to_physical[l]``."""
    model_config = ConfigDict(frozen=True)

    logical_to_physical: Tuple[int, ...]

    @model_validator(mode="after")
    def _bijective(self) -> "Layout":
        if sorted(self.logical_to_physical) != list(range(len(self.logical_to_physical))):
            raise ValueError(f"layout is not a permutation: {self.logical_to_physical}")
        return self

    @classmethod
    def trivial(cls, n: int) -> "Layout":
        return cls(logical_to_physical=tuple(range(n)))

    @property
    def size(self) -> int:
        return len(self.logical_to_physical)

    @property
    def physical_to_logical(self) -> Tuple[int, ...]:
        inverse = [0] * self.size
        for logical, physical in enumerate(self.logical_to_physical):
            inverse[physical] = logical
        return tuple(inverse)

    def physical(self, logical: int) -> int:
        return self.logical_to_physical[logical]

    def after_swap(self, a: int, b: int) -> "Layout":
        """Layout after exchanging the states held by physical qubits ``a`` and ``b``."""
        p2l = list(self.physical_to_logical)
        p2l[a], p2l[b] = p2l[b], p2l[a]
        l2p = [0] * self.size
        for physical, logical in enumerate(p2l):
            l2p[logical] = physical
        return Layout(logical_to_physical=tuple(l2p))
