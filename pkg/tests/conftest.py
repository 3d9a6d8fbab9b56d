import math
import os
import sys

import numpy as np
import pytest

project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
emulator_core_root = os.path.join(project_root, "emulator-core")
if emulator_core_root not in sys.path:
    sys.path.insert(0, emulator_core_root)
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from core.circuit import Circuit, gate  # noqa: E402
from core.dynamics import evolve  # noqa: E402
from core.pulse import schedule  # noqa: E402
from core.state.state_schema import SimOptions  # noqa: E402
from core.transpiler import transpile  # noqa: E402
from infrastructure.platform import load_platform  # noqa: E402

PLATFORM_DIR = os.path.join(project_root, "platforms")
CORPUS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "corpus")

BELL_STATE = [1 / math.sqrt(2), 0.0, 0.0, 1 / math.sqrt(2)]

ONE_QUBIT_KINDS = ("I", "X", "Y", "Z", "H", "S", "T", "RX", "RY", "RZ", "U3", "GPI2")
TWO_QUBIT_KINDS = ("CNOT", "CZ", "CP", "SWAP")
PARAM_COUNTS = {"RX": 1, "RY": 1, "RZ": 1, "GPI2": 1, "CP": 1, "U3": 3}


def corpus_path(name: str) -> str:
    return os.path.join(CORPUS_DIR, name)


def random_circuit(rng: np.random.Generator, n_qubits: int, depth: int, kinds=None, measure: bool = False) -> Circuit:
    """Seeded random circuit over ``kinds`` (all unitary kinds by default)."""
    if kinds is None:
        kinds = ONE_QUBIT_KINDS + (TWO_QUBIT_KINDS if n_qubits > 1 else ())
    gates = []
    for _ in range(depth):
        kind = str(rng.choice(kinds))
        width = 2 if kind in TWO_QUBIT_KINDS else 1
        qubits = tuple(int(q) for q in rng.choice(n_qubits, size=width, replace=False))
        params = tuple(float(x) for x in rng.uniform(-2 * math.pi, 2 * math.pi, PARAM_COUNTS.get(kind, 0)))
        gates.append(gate(kind, *qubits, params=params))
    n_clbits = n_qubits if measure else 0
    if measure:
        gates += [gate("M", q, clbit=q) for q in range(n_qubits)]
    return Circuit(n_qubits=n_qubits, n_clbits=n_clbits, gates=tuple(gates))


@pytest.fixture(scope="session")
def platform_2q():
    return load_platform(os.path.join(PLATFORM_DIR, "anyon_2q.json"))


@pytest.fixture(scope="session")
def platform_4q():
    return load_platform(os.path.join(PLATFORM_DIR, "anyon_4q.json"))


@pytest.fixture(scope="session")
def bell_circuit():
    return Circuit(
        n_qubits=2,
        n_clbits=2,
        gates=(gate("H", 0), gate("CNOT", 0, 1), gate("M", 0, clbit=0), gate("M", 1, clbit=1)),
    )


@pytest.fixture(scope="session")
def bell_transpiled(bell_circuit, platform_2q):
    return transpile(bell_circuit, platform_2q)


@pytest.fixture(scope="session")
def bell_schedule(bell_transpiled, platform_2q):
    return schedule(bell_transpiled.native, platform_2q)


@pytest.fixture(scope="session")
def bell_noise_free(bell_schedule, platform_2q):
    return evolve(bell_schedule, platform_2q, opts=SimOptions(decoherence=False, output_dt=1.0))


@pytest.fixture(scope="session")
def bell_noisy(bell_schedule, platform_2q):
    return evolve(bell_schedule, platform_2q, opts=SimOptions(output_dt=1.0))
