"""
Source spans, frontend errors and the parsed statement objects.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import pyparsing as pp

from core.errors import EmulatorError


@dataclass(frozen=True)
class SourceSpan:
    """Location of a token in the QASM source.

    ``line``/``column`` are 1-based; ``start``/``end`` are byte offsets into the
    UTF-8 encoded source.
    """
    line: int
    column: int
    start: int
    end: int

    @classmethod
    def from_loc(cls, source: str, start: int, end: Optional[int] = None) -> "SourceSpan":
        start = max(0, min(start, len(source)))
        end = start if end is None else max(start, min(end, len(source)))
        line = pp.lineno(start, source) if source else 1
        column = pp.col(start, source) if source else 1
        byte_start = len(source[:start].encode("utf-8"))
        byte_end = byte_start + len(source[start:end].encode("utf-8"))
        return cls(line=line, column=column, start=byte_start, end=byte_end)


class QasmSyntaxError(EmulatorError, ValueError):
    """Parse or semantic error in a QASM program, always carrying a span."""

    def __init__(self, message: str, span: SourceSpan, path: Optional[str] = None):
        self.message = message
        self.span = span
        self.path = path
        super().__init__(message)

    def with_path(self, path: str) -> "QasmSyntaxError":
        return QasmSyntaxError(self.message, self.span, path)

    def __str__(self) -> str:
        return f"{self.path or '<source>'}:{self.span.line}:{self.span.column}: {self.message}"


@dataclass
class RegisterRef:
    """``name`` or ``name[index]`` as written in an argument list."""
    name: str
    index: Optional[int]
    span: SourceSpan


@dataclass
class ProgramContext:
    """Flattened register layout and gate list built while evaluating statements."""
    qregs: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    cregs: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    n_qubits: int = 0
    n_clbits: int = 0
    gates: List = field(default_factory=list)
    measured: set = field(default_factory=set)

    def resolve(self, ref: RegisterRef, classical: bool = False) -> List[int]:
        """Flat indices addressed by ``ref`` (one for ``r[i]``, all for ``r``)."""
        table = self.cregs if classical else self.qregs
        kind = "creg" if classical else "qreg"
        if ref.name not in table:
            raise QasmSyntaxError(f"undeclared {kind} '{ref.name}'", ref.span)
        offset, size = table[ref.name]
        if ref.index is None:
            return list(range(offset, offset + size))
        if ref.index >= size:
            raise QasmSyntaxError(
                f"index {ref.index} out of range for {kind} '{ref.name}' of size {size}", ref.span
            )
        return [offset + ref.index]
