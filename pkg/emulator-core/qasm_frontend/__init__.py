"""
OpenQASM 2.0 frontend: parse a fixed subset into Circuit and emit Circuit back.
"""
from .entity import QasmSyntaxError, SourceSpan
from .parser import GATE_TABLE, QasmParser, parse_qasm
from .emitter import emit_qasm

__all__ = [
    'QasmSyntaxError',
    'SourceSpan',
    'GATE_TABLE',
    'QasmParser',
    'parse_qasm',
    'emit_qasm',
]
