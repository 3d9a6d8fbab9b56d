"""Circuit → OpenQASM 2.0 text."""
from core.circuit import Circuit, GateKind
from core.errors import CircuitError

_QASM_NAME = {
    GateKind.I: "id",
    GateKind.X: "x",
    GateKind.Y: "y",
    GateKind.Z: "z",
    GateKind.H: "h",
    GateKind.S: "s",
    GateKind.T: "t",
    GateKind.RX: "rx",
    GateKind.RY: "ry",
    GateKind.RZ: "rz",
    GateKind.U3: "u3",
    GateKind.CNOT: "cx",
    GateKind.CZ: "cz",
    GateKind.SWAP: "swap",
    GateKind.CP: "cu1",
}


def _angle(value: float) -> str:
    return format(value, ".17g")


def emit_qasm(c: Circuit) -> str:
    """Print ``c`` so that parsing the text gives back an equal circuit.

    Raises:
        CircuitError: for GPI2, which has no OpenQASM 2.0 counterpart
    """
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    if c.n_qubits:
        lines.append(f"qreg q[{c.n_qubits}];")
    if c.n_clbits:
        lines.append(f"creg c[{c.n_clbits}];")
    for g in c.gates:
        if g.kind == GateKind.M:
            if g.classical_target is None:
                raise CircuitError(f"measurement on qubit {g.qubits[0]} has no classical target")
            lines.append(f"measure q[{g.qubits[0]}] -> c[{g.classical_target}];")
            continue
        if g.kind not in _QASM_NAME:
            raise CircuitError(f"{g.kind.value} is not an OpenQASM 2.0 gate; export native circuits as JSON")
        params = f"({','.join(_angle(p) for p in g.params)})" if g.params else ""
        operands = ",".join(f"q[{q}]" for q in g.qubits)
        lines.append(f"{_QASM_NAME[g.kind]}{params} {operands};")
    return "\n".join(lines) + "\n"
