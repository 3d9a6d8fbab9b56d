import itertools
import math

import numpy as np
import pytest
from pydantic import ValidationError

from conftest import random_circuit
from core.circuit import (
    Circuit,
    build_qft,
    circuit_unitary,
    equivalent_up_to_global_phase,
    gate,
    layout_permutation,
    phase_aligned_distance,
)
from core.errors import TranspileError
from core.state.state_schema import TranspileOptions
from core.transpiler import (
    Layout,
    PhaseFrame,
    fold_virtual_z,
    place,
    preprocess,
    route,
    transpile,
    translate_gate,
    unroll,
)
from core.transpiler.preprocess import optimize_gates
from core.validation import TransformationValidator
from infrastructure.platform import Coupling, PlatformSpec, QubitParams

PI = math.pi

TRANSLATED = [
    gate("H", 0),
    gate("X", 0),
    gate("Y", 0),
    gate("S", 0),
    gate("T", 0),
    gate("RX", 0, params=(0.37,)),
    gate("RY", 0, params=(-1.2,)),
    gate("U3", 0, params=(0.3, 1.1, -0.6)),
    gate("CNOT", 0, 1),
    gate("CNOT", 1, 0),
    gate("CP", 0, 1, params=(PI / 4,)),
    gate("SWAP", 0, 1),
]


def _wrap(g, n=2):
    return Circuit(n_qubits=n, gates=(g,))


def _disconnected_platform():
    qubits = tuple(QubitParams(id=i, frequency=2 * PI * 5.0, anharmonicity=-1.2) for i in range(2))
    return PlatformSpec(name="islands", qubits=qubits)


class TestBellTranspile:
    def test_native_sequence(self, bell_circuit, platform_2q):
        result = transpile(bell_circuit, platform_2q, TranspileOptions(fold_virtual_z=False))
        assert result.native.gates == (
            gate("Z", 0),
            gate("GPI2", 0, params=(PI / 2,)),
            gate("Z", 1),
            gate("GPI2", 1, params=(PI / 2,)),
            gate("CZ", 0, 1),
            gate("Z", 1),
            gate("GPI2", 1, params=(PI / 2,)),
            gate("M", 0, clbit=0),
            gate("M", 1, clbit=1),
        )

    def test_folded_phases(self, bell_transpiled):
        native = bell_transpiled.native
        assert native.folded
        phases = [g.params[0] for g in native.gates if g.kind.value == "GPI2"]
        assert phases == pytest.approx([3 * PI / 2, 3 * PI / 2, 5 * PI / 2])
        assert [g.kind.value for g in native.gates] == ["GPI2", "GPI2", "CZ", "GPI2", "M", "M"]
        assert native.final_frames == pytest.approx((PI, 2 * PI))

    def test_report(self, bell_transpiled):
        report = bell_transpiled.report
        assert report.swap_count == 0
        assert report.native_gate_count == 9
        assert report.gate_count_after == 6
        assert report.physical_pulse_count == 6
        assert report.virtual_z_reduction == pytest.approx(3 / 9)
        assert report.counts["input"] == {"CNOT": 1, "H": 1, "M": 2}
        assert report.initial_layout == (0, 1) and report.final_layout == (0, 1)

    def test_equivalent_to_source(self, bell_transpiled, platform_2q):
        t = bell_transpiled
        verdict = TransformationValidator(platform_2q).validate_circuit_equivalence(
            t.original, t.native, t.final_layout, t.initial_layout
        )
        assert verdict.passed
        assert verdict.metric < 1e-9


class TestTranslate:
    @pytest.mark.parametrize("g", TRANSLATED, ids=str)
    def test_rule_preserves_unitary(self, g):
        rewritten = Circuit(n_qubits=2, gates=tuple(translate_gate(g)))
        assert equivalent_up_to_global_phase(circuit_unitary(rewritten), circuit_unitary(_wrap(g)))

    def test_h_rule(self):
        assert translate_gate(gate("H", 1)) == [gate("Z", 1), gate("GPI2", 1, params=(PI / 2,))]

    def test_native_gates_are_untouched(self):
        g = gate("GPI2", 0, params=(0.1,))
        assert translate_gate(g) == [g]

    def test_unroll_three_qubit_circuit(self):
        c = Circuit(n_qubits=3, gates=(
            gate("H", 0), gate("CNOT", 0, 2), gate("U3", 1, params=(0.9, -0.4, 2.2)),
            gate("CP", 2, 1, params=(0.7,)), gate("SWAP", 0, 1), gate("T", 2), gate("RY", 0, params=(1.3,)),
            gate("Y", 1), gate("S", 0), gate("RX", 2, params=(-0.8,)),
        ))
        native = unroll(c)
        assert {g.kind.value for g in native.gates} <= {"Z", "RZ", "GPI2", "CZ"}
        assert equivalent_up_to_global_phase(circuit_unitary(native), circuit_unitary(c))


class TestVirtualZ:
    def test_folding_preserves_unitary_with_frames(self):
        c = Circuit(n_qubits=2, gates=(
            gate("RZ", 0, params=(0.3,)), gate("H", 0), gate("CNOT", 0, 1),
            gate("T", 1), gate("RX", 1, params=(0.5,)), gate("S", 0),
        ))
        native = unroll(c)
        folded = fold_virtual_z(native)
        assert all(g.kind.value in ("GPI2", "CZ") for g in folded.gates)
        assert equivalent_up_to_global_phase(
            circuit_unitary(folded.with_frames_appended()), circuit_unitary(native)
        )

    def test_frames_are_not_reduced(self):
        c = Circuit(n_qubits=1, gates=(gate("Z", 0), gate("Z", 0), gate("Z", 0)))
        assert fold_virtual_z(unroll(c)).final_frames == pytest.approx((3 * PI,))

    def test_rz_shifts_drive_phase_backwards(self):
        frame = PhaseFrame(1)
        frame.absorb(gate("RZ", 0, params=(0.4,)))
        assert frame.frames == pytest.approx([0.4])
        assert frame.drive_phase(0, 1.0) == pytest.approx(0.6)


class TestPreprocess:
    def test_cascading_cancellation(self):
        gates = [gate("H", 0), gate("X", 0), gate("X", 0), gate("H", 0)]
        assert optimize_gates(gates, 1) == []

    def test_rz_merge(self):
        gates = [gate("RZ", 0, params=(0.25,)), gate("RZ", 0, params=(0.5,))]
        assert optimize_gates(gates, 1) == [gate("RZ", 0, params=(0.75,))]

    def test_full_turn_drops(self):
        gates = [gate("RZ", 0, params=(PI,)), gate("RZ", 0, params=(PI,))]
        assert optimize_gates(gates, 1) == []

    def test_blocked_by_other_qubit(self):
        gates = [gate("H", 0), gate("CZ", 0, 1), gate("H", 0)]
        assert optimize_gates(gates, 2) == gates

    def test_widens_to_platform(self, platform_4q):
        assert preprocess(Circuit(n_qubits=2, gates=(gate("H", 0),)), platform_4q).n_qubits == 4

    def test_too_wide(self, platform_2q):
        with pytest.raises(TranspileError):
            preprocess(Circuit(n_qubits=3), platform_2q)


class TestPlaceAndRoute:
    def test_cz_across_the_line(self, platform_4q):
        c = Circuit(n_qubits=4, gates=(gate("CZ", 0, 2),))
        routed, final = route(c, Layout.trivial(4), platform_4q)
        assert routed.gates == (gate("SWAP", 0, 1), gate("CZ", 1, 2))
        assert final.logical_to_physical == (1, 0, 2, 3)

    def test_routed_circuit_is_equivalent(self, platform_4q):
        c = Circuit(n_qubits=4, gates=(gate("H", 0), gate("CNOT", 0, 3), gate("CZ", 1, 3)))
        t = transpile(c, platform_4q)
        assert t.report.swap_count > 0
        verdict = TransformationValidator(platform_4q).validate_circuit_equivalence(
            t.original, t.native, t.final_layout, t.initial_layout
        )
        assert verdict.passed, verdict.details

    def test_disconnected_pair(self):
        p = _disconnected_platform()
        with pytest.raises(TranspileError, match="disconnected"):
            route(Circuit(n_qubits=2, gates=(gate("CZ", 0, 1),)), Layout.trivial(2), p)

    def test_random_placement_is_seeded(self, platform_4q):
        c = Circuit(n_qubits=4)
        opts = TranspileOptions(placement="random", seed=7)
        assert place(c, platform_4q, opts) == place(c, platform_4q, opts)

    def test_random_placement_needs_seed(self):
        with pytest.raises(ValidationError):
            TranspileOptions(placement="random")

    def test_random_layout_stays_equivalent(self, platform_4q):
        t = transpile(build_qft(3), platform_4q, TranspileOptions(placement="random", seed=3))
        verdict = TransformationValidator(platform_4q).validate_circuit_equivalence(
            t.original, t.native, t.final_layout, t.initial_layout
        )
        assert verdict.passed, verdict.details

    def test_after_swap(self):
        layout = Layout(logical_to_physical=(2, 0, 1))
        assert layout.after_swap(0, 2).logical_to_physical == (0, 2, 1)


class TestQftTranspile:
    @pytest.mark.parametrize("n, platform", [(2, "platform_2q"), (4, "platform_4q")])
    def test_equivalent(self, n, platform, request):
        p = request.getfixturevalue(platform)
        t = transpile(build_qft(n), p)
        verdict = TransformationValidator(p).validate_circuit_equivalence(
            t.original, t.native, t.final_layout, t.initial_layout
        )
        assert verdict.passed, verdict.details
        assert t.report.physical_pulse_count == t.native.physical_pulse_count()

    def test_qft4_folding_removes_a_third_of_the_gates(self, platform_4q):
        t = transpile(build_qft(4), platform_4q)
        assert t.report.virtual_z_reduction >= 0.30
        unfolded = transpile(build_qft(4), platform_4q, TranspileOptions(fold_virtual_z=False)).native
        assert len(t.native.gates) <= 0.70 * len(unfolded.gates)


def _line_platform(n):
    qubits = tuple(QubitParams(id=i, frequency=2 * PI * 5.0, anharmonicity=-1.2) for i in range(n))
    couplings = tuple(Coupling(pair=(i, i + 1)) for i in range(n - 1))
    return PlatformSpec(name=f"line{n}", qubits=qubits, couplings=couplings)


class TestRandomCircuits:
    @pytest.mark.parametrize("seed", range(200))
    def test_transpiled_circuit_is_equivalent(self, seed, platform_4q):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 4))
        c = random_circuit(rng, n, int(rng.integers(1, 11)), measure=seed % 4 == 0)
        opts = TranspileOptions(placement="random", seed=seed) if seed % 2 else TranspileOptions()
        t = transpile(c, platform_4q, opts)
        assert {g.kind.value for g in t.native.gates} <= {"GPI2", "CZ", "M"}
        verdict = TransformationValidator(platform_4q).validate_circuit_equivalence(
            t.original, t.native, t.final_layout, t.initial_layout
        )
        assert verdict.passed, verdict.details
        assert verdict.metric < 1e-9

    @pytest.mark.parametrize("seed", range(50))
    def test_routing_on_a_line(self, seed, platform_4q):
        rng = np.random.default_rng(1000 + seed)
        c = random_circuit(rng, 4, 12, kinds=("CNOT", "CZ", "CP", "SWAP", "H", "RZ"))
        layout = Layout(logical_to_physical=tuple(int(x) for x in rng.permutation(4)))
        routed, final = route(c, layout, platform_4q)
        for g in routed.gates:
            if len(g.qubits) == 2:
                assert platform_4q.are_coupled(*g.qubits), g
        lhs = circuit_unitary(routed) @ layout_permutation(layout.logical_to_physical)
        rhs = layout_permutation(final.logical_to_physical) @ circuit_unitary(c)
        assert phase_aligned_distance(lhs, rhs) < 1e-9

    def test_random_placement_reaches_every_permutation(self):
        p = _line_platform(3)
        c = Circuit(n_qubits=3)
        seen = {place(c, p, TranspileOptions(placement="random", seed=seed)).logical_to_physical for seed in range(200)}
        assert seen == set(itertools.permutations(range(3)))
