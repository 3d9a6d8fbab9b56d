"""Circuit IR shared by the frontend, transpiler, compiler and validator."""
from typing import Dict, Iterable, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .gates import Gate, GateKind


class Circuit(BaseModel):
    """Ordered gate list over ``n_qubits`` qubits and ``n_clbits`` classical bits."""
    model_config = ConfigDict(frozen=True)

    n_qubits: int = Field(ge=0)
    gates: Tuple[Gate, ...] = ()
    n_clbits: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_gates(self) -> "Circuit":
        measured = set()
        for index, g in enumerate(self.gates):
            for q in g.qubits:
                if q >= self.n_qubits:
                    raise ValueError(f"gate {index} ({g}) uses qubit {q} >= n_qubits={self.n_qubits}")
                if q in measured:
                    raise ValueError(f"gate {index} ({g}) follows a measurement on qubit {q}")
            if g.kind == GateKind.M:
                measured.add(g.qubits[0])
                if g.classical_target is not None and g.classical_target >= self.n_clbits:
                    raise ValueError(
                        f"gate {index} writes bit {g.classical_target} >= n_clbits={self.n_clbits}"
                    )
        return self

    def _rebuild(self, **changes) -> "Circuit":
        """Validated copy; subclass fields are carried over."""
        fields = {name: getattr(self, name) for name in type(self).model_fields}
        fields.update(changes)
        return type(self)(**fields)

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return self._rebuild(gates=tuple(gates))

    def widened(self, n_qubits: int) -> "Circuit":
        return self._rebuild(n_qubits=n_qubits)

    def measurements(self) -> List[Gate]:
        return [g for g in self.gates if g.kind == GateKind.M]

    def count_ops(self) -> Dict[str, int]:
        """Gate counts by kind, keys sorted."""
        counts: Dict[str, int] = {}
        for g in self.gates:
            counts[g.kind.value] = counts.get(g.kind.value, 0) + 1
        return dict(sorted(counts.items()))

    def __len__(self) -> int:
        return len(self.gates)

    def to_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "n_clbits": self.n_clbits,
            "gates": [g.to_dict() for g in self.gates],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Circuit":
        return cls(
            n_qubits=int(data["n_qubits"]),
            n_clbits=int(data.get("n_clbits", 0)),
            gates=tuple(Gate.from_dict(g) for g in data.get("gates", ())),
        )
