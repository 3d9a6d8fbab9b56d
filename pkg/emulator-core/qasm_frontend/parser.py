"""
OpenQASM 2.0 subset parser built on pyparsing.

Grammar covers the header, ``include`` (ignored), ``qreg``/``creg``, gate
applications from a fixed table, ``measure`` and ``barrier`` (ignored). Angles are
decimal literals, ``pi`` and simple rationals of ``pi`` such as ``-3*pi/4``.
"""
import math
from typing import List, Optional

import pyparsing as pp
from loguru import logger
from pydantic import ValidationError

from core.circuit import Circuit, Gate, GateKind
from .entity import ProgramContext, QasmSyntaxError, RegisterRef, SourceSpan

# qasm name -> (kind, parameter count, qubit count)
GATE_TABLE = {
    "id": (GateKind.I, 0, 1),
    "x": (GateKind.X, 0, 1),
    "y": (GateKind.Y, 0, 1),
    "z": (GateKind.Z, 0, 1),
    "h": (GateKind.H, 0, 1),
    "s": (GateKind.S, 0, 1),
    "t": (GateKind.T, 0, 1),
    "rx": (GateKind.RX, 1, 1),
    "ry": (GateKind.RY, 1, 1),
    "rz": (GateKind.RZ, 1, 1),
    "u3": (GateKind.U3, 3, 1),
    "cx": (GateKind.CNOT, 0, 2),
    "cz": (GateKind.CZ, 0, 2),
    "swap": (GateKind.SWAP, 0, 2),
    "cu1": (GateKind.CP, 1, 2),
    "cp": (GateKind.CP, 1, 2),
}


class Statement:
    """Base for parsed statements; ``apply`` updates the program context."""

    def __init__(self, source: str, loc: int, end: Optional[int] = None):
        self.span = SourceSpan.from_loc(source, loc, end)

    def apply(self, ctx: ProgramContext) -> None:
        pass


class HeaderStmt(Statement):
    def __init__(self, source, loc, toks):
        super().__init__(source, loc)
        self.version = toks[0]

    def apply(self, ctx):
        if not str(self.version).startswith("2"):
            raise QasmSyntaxError(f"unsupported OPENQASM version {self.version}", self.span)


class IncludeStmt(Statement):
    def __init__(self, source, loc, toks):
        super().__init__(source, loc)
        self.filename = toks[0]


class RegisterDecl(Statement):
    def __init__(self, source, loc, toks):
        super().__init__(source, loc)
        self.classical = toks[0] == "creg"
        self.name = toks[1]
        self.size = toks[2]

    def apply(self, ctx):
        if self.name in ctx.qregs or self.name in ctx.cregs:
            raise QasmSyntaxError(f"register '{self.name}' already declared", self.span)
        if self.size < 1:
            raise QasmSyntaxError(f"register '{self.name}' must have size >= 1", self.span)
        if self.classical:
            ctx.cregs[self.name] = (ctx.n_clbits, self.size)
            ctx.n_clbits += self.size
        else:
            ctx.qregs[self.name] = (ctx.n_qubits, self.size)
            ctx.n_qubits += self.size


class BarrierStmt(Statement):
    def __init__(self, source, loc, toks):
        super().__init__(source, loc)
        self.args: List[RegisterRef] = list(toks)

    def apply(self, ctx):
        # operands must still be valid even though the barrier is dropped
        for ref in self.args:
            ctx.resolve(ref)


def _broadcast(columns: List[List[int]], span: SourceSpan) -> List[List[int]]:
    """Expand whole-register arguments; all of them must share one size."""
    sizes = {len(c) for c in columns if len(c) != 1}
    if len(sizes) > 1:
        raise QasmSyntaxError(f"register size mismatch in broadcast: {sorted(sizes)}", span)
    width = sizes.pop() if sizes else 1
    return [[c[0] if len(c) == 1 else c[i] for c in columns] for i in range(width)]


def _make_gate(span: SourceSpan, **fields) -> Gate:
    try:
        return Gate(**fields)
    except ValidationError as e:
        raise QasmSyntaxError(e.errors()[0].get("msg", "invalid gate"), span) from None


def _append(ctx: ProgramContext, g: Gate, span: SourceSpan) -> None:
    for q in g.qubits:
        if q in ctx.measured:
            raise QasmSyntaxError(f"gate follows a measurement on qubit {q}", span)
    if g.kind == GateKind.M:
        ctx.measured.add(g.qubits[0])
    ctx.gates.append(g)


class MeasureStmt(Statement):
    def __init__(self, source, loc, toks):
        super().__init__(source, loc)
        self.qarg: RegisterRef = toks[0]
        self.carg: RegisterRef = toks[1]

    def apply(self, ctx):
        qubits = ctx.resolve(self.qarg)
        bits = ctx.resolve(self.carg, classical=True)
        if len(qubits) != len(bits):
            raise QasmSyntaxError(
                f"measure size mismatch: {len(qubits)} qubit(s) into {len(bits)} bit(s)", self.span
            )
        for q, c in zip(qubits, bits):
            _append(ctx, _make_gate(self.span, kind=GateKind.M, qubits=(q,), classical_target=c), self.span)


class GateCall(Statement):
    def __init__(self, source, loc, toks):
        super().__init__(source, loc)
        self.name: str = toks[0]
        self.name_span = SourceSpan.from_loc(source, loc, loc + len(self.name))
        self.params: List[float] = list(toks[1])
        self.args: List[RegisterRef] = list(toks[2])

    def apply(self, ctx):
        if self.name not in GATE_TABLE:
            raise QasmSyntaxError(f"unsupported gate '{self.name}'", self.name_span)
        kind, n_params, n_qubits = GATE_TABLE[self.name]
        if len(self.params) != n_params:
            raise QasmSyntaxError(
                f"gate '{self.name}' takes {n_params} parameter(s), got {len(self.params)}", self.name_span
            )
        if len(self.args) != n_qubits:
            raise QasmSyntaxError(
                f"gate '{self.name}' takes {n_qubits} qubit argument(s), got {len(self.args)}", self.span
            )
        if not all(math.isfinite(p) for p in self.params):
            raise QasmSyntaxError(f"gate '{self.name}' has a non-finite angle", self.name_span)
        for qubits in _broadcast([ctx.resolve(ref) for ref in self.args], self.span):
            if len(set(qubits)) != len(qubits):
                raise QasmSyntaxError(f"gate '{self.name}' repeats qubit {qubits[0]}", self.span)
            gate = _make_gate(self.name_span, kind=kind, params=tuple(self.params), qubits=tuple(qubits))
            _append(ctx, gate, self.span)


def _divide(s, loc, t):
    if len(t) == 1:
        return t[0]
    if t[1] == 0:
        raise pp.ParseFatalException(s, loc, "division by zero in angle expression")
    return t[0] / t[1]


class QasmParser:
    """Builds the grammar once; ``parse`` is reentrant."""

    def __init__(self):
        lpar, rpar, lbra, rbra, comma, semi = map(pp.Suppress, "()[],;")
        ident = pp.Word(pp.alphas + "_", pp.alphanums + "_")
        integer = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
        number = pp.Regex(r"(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?").set_parse_action(lambda t: float(t[0]))

        pi = pp.Keyword("pi").set_parse_action(lambda: math.pi)
        factor = pi | number
        product = (factor + pp.Opt(pp.Suppress("*") + factor)).set_parse_action(lambda t: math.prod(t))
        ratio = (product + pp.Opt(pp.Suppress("/") + factor)).set_parse_action(_divide)
        angle = (pp.Opt(pp.one_of("+ -")) + ratio).set_parse_action(lambda t: -t[-1] if t[0] == "-" else t[-1])

        argument = (ident + pp.Opt(lbra + integer + rbra)).set_parse_action(
            lambda s, loc, t: RegisterRef(
                name=t[0], index=t[1] if len(t) > 1 else None, span=SourceSpan.from_loc(s, loc, loc + len(t[0]))
            )
        )
        arguments = pp.Group(pp.DelimitedList(argument))

        header = (pp.Keyword("OPENQASM") + pp.Regex(r"\d+(\.\d+)?") + semi).set_parse_action(
            lambda s, loc, t: HeaderStmt(s, loc, t[1:])
        )
        include = (pp.Suppress(pp.Keyword("include")) + pp.dbl_quoted_string.copy().set_parse_action(pp.remove_quotes) + semi).set_parse_action(IncludeStmt)
        register = (pp.one_of("qreg creg", as_keyword=True) + ident + lbra + integer + rbra + semi).set_parse_action(RegisterDecl)
        arrow = pp.Suppress(pp.Literal("->") | pp.Literal("→"))
        measure = (pp.Suppress(pp.Keyword("measure")) + argument + arrow + argument + semi).set_parse_action(MeasureStmt)
        barrier = (pp.Suppress(pp.Keyword("barrier")) + pp.DelimitedList(argument) + semi).set_parse_action(BarrierStmt)
        params = pp.Group(pp.Opt(lpar + pp.Opt(pp.DelimitedList(angle)) + rpar))
        gate_call = (ident + params + arguments + semi).set_parse_action(GateCall)

        statement = header | include | register | measure | barrier | gate_call
        self.program = pp.ZeroOrMore(statement) + pp.StringEnd()
        self.program.ignore(pp.cpp_style_comment)
        self.program.parse_with_tabs()

    def parse(self, source: str, path: Optional[str] = None) -> Circuit:
        """Parse ``source`` into a Circuit.

        Raises:
            QasmSyntaxError: syntax error, unsupported gate, bad index or arity
        """
        try:
            statements = self.program.parse_string(source, parse_all=True)
        except pp.ParseBaseException as e:
            found = source[e.loc:e.loc + 12].split("\n")[0]
            if isinstance(e, pp.ParseFatalException):
                message = e.msg
            else:
                message = f"syntax error near '{found}'" if found else "unexpected end of input"
            err = QasmSyntaxError(message, SourceSpan.from_loc(source, e.loc, e.loc + len(found)))
            raise (err.with_path(path) if path else err) from None

        ctx = ProgramContext()
        try:
            for stmt in statements:
                stmt.apply(ctx)
        except QasmSyntaxError as e:
            raise (e.with_path(path) if path else e) from None

        circuit = Circuit(n_qubits=ctx.n_qubits, n_clbits=ctx.n_clbits, gates=tuple(ctx.gates))
        logger.bind(log_tag="qasm").debug(
            f"parsed {len(circuit)} gates on {circuit.n_qubits} qubits from {path or '<source>'}"
        )
        return circuit


_PARSER: Optional[QasmParser] = None


def parse_qasm(source: str, path: Optional[str] = None) -> Circuit:
    global _PARSER
    if _PARSER is None:
        _PARSER = QasmParser()
    return _PARSER.parse(source, path)
