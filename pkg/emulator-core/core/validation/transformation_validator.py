"""
Stage-by-stage checks across transpile → compile → simulate.

Each check returns a StageVerdict instead of raising, so one report can carry every
stage's outcome.
"""
import math
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from loguru import logger

from config.settings import MAX_UNITARY_QUBITS
from core.circuit import Circuit, GateKind, basis_state, circuit_unitary, layout_permutation, phase_aligned_distance
from core.dynamics import (
    DensityMatrix,
    SimResult,
    apply_frames,
    evolve,
    fidelity,
    project_computational,
)
from core.errors import EmulatorError
from core.pulse import PulseSchedule, coupling_channel_id, drive_channel_id, readout_channel_id
from core.state.state_schema import SimOptions, ValidationOptions
from core.transpiler import Layout, NativeCircuit, PhaseFrame
from infrastructure.platform import PlatformSpec
from .validation_schema import StageVerdict

_log = logger.bind(log_tag="validator")
TIME_TOL = 1e-9  # ns


def ideal_state(native: NativeCircuit) -> np.ndarray:
    """U(native with final frames re-appended)·|0…0⟩ on the 2^n subspace."""
    u = circuit_unitary(native.with_frames_appended())
    return u @ basis_state(native.n_qubits)


def _as_density(target: Union[np.ndarray, DensityMatrix]) -> DensityMatrix:
    if isinstance(target, DensityMatrix):
        return target
    return DensityMatrix.from_pure(np.asarray(target, dtype=complex))


class TransformationValidator:
    """Runs the four verification stages with tolerances from ``options``."""

    def __init__(self, platform: PlatformSpec, options: Optional[ValidationOptions] = None):
        self.platform = platform
        self.options = options or ValidationOptions()

    def validate_circuit_equivalence(
        self,
        original: Circuit,
        native: NativeCircuit,
        final_layout: Optional[Layout] = None,
        initial_layout: Optional[Layout] = None,
    ) -> StageVerdict:
        """U_native·P_initial ≍ P_final·U_original up to global phase, frames re-appended."""
        tol = self.options.equivalence_tol
        n = native.n_qubits
        final_layout = final_layout or Layout.trivial(n)
        initial_layout = initial_layout or Layout.trivial(n)
        if n > MAX_UNITARY_QUBITS:
            return StageVerdict(
                stage="circuit_equivalence", passed=True, skipped=True, threshold=tol,
                details=f"unitary oracle is limited to {MAX_UNITARY_QUBITS} qubits, got {n}",
            )
        try:
            u_orig = circuit_unitary(original.widened(n), strip_measurements=True)
            u_native = circuit_unitary(native.with_frames_appended())
            lhs = u_native @ layout_permutation(initial_layout.logical_to_physical)
            rhs = layout_permutation(final_layout.logical_to_physical) @ u_orig
            distance = phase_aligned_distance(lhs, rhs)
        except (EmulatorError, ValueError) as e:
            return StageVerdict(stage="circuit_equivalence", passed=False, threshold=tol, details=str(e))
        passed = distance < tol
        _log.info(f"circuit equivalence: distance {distance:.3e} ({'pass' if passed else 'FAIL'})")
        return StageVerdict(
            stage="circuit_equivalence",
            passed=passed,
            metric=distance,
            threshold=tol,
            details="" if passed else f"Frobenius distance {distance:.3e} after optimal global phase exceeds {tol:g}",
        )

    def _expected_pulses(self, native: NativeCircuit) -> Dict[int, tuple]:
        """label -> (channel, kind, duration, phase) for each physical gate."""
        timings = self.platform.timings
        frame = PhaseFrame(native.n_qubits, native.final_frames)
        expected: Dict[int, tuple] = {}
        for label, g in enumerate(native.gates):
            if frame.absorb(g):
                continue
            if g.kind == GateKind.GPI2:
                q = g.qubits[0]
                expected[label] = (drive_channel_id(q), "drive", timings.gpi2_duration, frame.drive_phase(q, g.params[0]))
            elif g.kind == GateKind.CZ:
                expected[label] = (coupling_channel_id(*g.qubits), "coupling", timings.cz_duration, None)
            elif g.kind == GateKind.M:
                expected[label] = (readout_channel_id(g.qubits[0]), "readout", timings.readout_duration, None)
        return expected

    def validate_schedule(self, s: PulseSchedule, native: Optional[NativeCircuit] = None) -> StageVerdict:
        """Channel disjointness, per-gate mapping, readout simultaneity and buffer."""
        native = native or s.circuit
        violations: List[str] = []

        by_channel = defaultdict(list)
        for pulse in s.pulses:
            by_channel[pulse.channel].append(pulse)
        for channel, pulses in sorted(by_channel.items()):
            pulses.sort(key=lambda x: x.start)
            for prev, nxt in zip(pulses, pulses[1:]):
                if prev.end > nxt.start + TIME_TOL:
                    violations.append(f"overlap on {channel}: gate {prev.label} and gate {nxt.label}")

        if native is not None:
            expected = self._expected_pulses(native)
            actual = defaultdict(list)
            for pulse in s.pulses:
                actual[pulse.label].append(pulse)
            for label in sorted(set(expected) | set(actual)):
                want = expected.get(label)
                got = actual.get(label, [])
                if want is None:
                    violations.append(f"gate {label} should emit no pulse, found {len(got)}")
                    continue
                if len(got) != 1:
                    violations.append(f"gate {label} should emit one {want[1]} pulse, found {len(got)}")
                    continue
                pulse = got[0]
                channel, kind, duration, phase = want
                if (pulse.channel, pulse.kind) != (channel, kind) or abs(pulse.duration - duration) > TIME_TOL:
                    violations.append(
                        f"gate {label}: expected {kind} {duration:g} ns on {channel}, "
                        f"got {pulse.kind} {pulse.duration:g} ns on {pulse.channel}"
                    )
                elif phase is not None and abs(pulse.phase - phase) > 1e-12:
                    violations.append(f"gate {label}: drive phase {pulse.phase:.12g} != {phase:.12g}")

        readouts = s.readouts
        if readouts:
            starts = sorted({round(r.start, 9) for r in readouts})
            if len(starts) > 1:
                violations.append(f"readouts start at {len(starts)} different times: {starts}")
            gap = readouts[0].start - s.gate_end
            buffer = self.platform.timings.measurement_buffer
            if abs(gap - buffer) > TIME_TOL:
                violations.append(f"pre-readout idle is {gap:g} ns, platform buffer is {buffer:g} ns")

        passed = not violations
        _log.info(f"schedule: {len(violations)} violation(s)")
        return StageVerdict(
            stage="pulse_validity",
            passed=passed,
            metric=float(len(violations)),
            threshold=0.0,
            details="; ".join(violations),
        )

    def validate_evolution(self, schedule: PulseSchedule, native: Optional[NativeCircuit] = None,
                           sim_options: Optional[SimOptions] = None) -> StageVerdict:
        """Noise-free pulse-level evolution against the circuit-level ideal state."""
        tol = self.options.evolution_tol
        native = native or schedule.circuit
        if native is None:
            return StageVerdict(stage="evolution", passed=False, threshold=tol,
                                details="schedule carries no native circuit to compare against")
        base = sim_options or SimOptions()
        gate_end = schedule.gate_end
        opts = base.model_copy(update={
            "decoherence": False,
            "engine": "schrodinger",
            "shots": 0,
            "output_dt": max(gate_end, 1.0),
        })
        try:
            result = evolve(schedule, self.platform, opts=opts, duration=gate_end)
            projected, leakage = project_computational(result.state_at("gate_end"), result.space)
            corrected = apply_frames(projected, schedule.final_frames)
            infidelity = 1.0 - fidelity(corrected, _as_density(ideal_state(native)))
        except EmulatorError as e:
            return StageVerdict(stage="evolution", passed=False, threshold=tol, details=str(e))
        passed = infidelity < tol
        _log.info(f"evolution: infidelity {infidelity:.3e}, leakage {leakage:.3e}")
        return StageVerdict(
            stage="evolution",
            passed=passed,
            metric=infidelity,
            threshold=tol,
            details=f"leakage {leakage:.3e}" if passed else f"1 - F = {infidelity:.3e} exceeds {tol:g} (leakage {leakage:.3e})",
        )

    def validate_fidelity(self, result: SimResult, target_state: Union[np.ndarray, DensityMatrix],
                          instant: Optional[str] = None, frames: Optional[Sequence[float]] = None) -> StageVerdict:
        """Fidelity of the frame-corrected projected state with ``target_state``."""
        threshold = self.options.fidelity_threshold
        instant = instant or self.options.fidelity_instant
        frames = result.frames if frames is None else frames
        try:
            projected, _ = project_computational(result.state_at(instant), result.space)
            value = fidelity(apply_frames(projected, frames), _as_density(target_state))
        except (EmulatorError, KeyError, ValueError) as e:
            return StageVerdict(stage="fidelity", passed=False, threshold=threshold, details=str(e))
        return self.fidelity_verdict(value, instant)

    def fidelity_verdict(self, value: float, instant: str) -> StageVerdict:
        """Verdict for an already computed fidelity (re-validation of a run directory)."""
        threshold = self.options.fidelity_threshold
        passed = value >= threshold
        _log.info(f"fidelity at {instant}: {value:.6f}")
        return StageVerdict(
            stage="fidelity",
            passed=passed,
            metric=value,
            threshold=threshold,
            details=f"at {instant}" if passed else f"F = {value:.6f} below {threshold:g} at {instant}",
        )
