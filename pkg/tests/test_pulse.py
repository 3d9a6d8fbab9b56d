import json
import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.integrate import quad
from scipy.special import erf

from conftest import corpus_path, random_circuit
from core.circuit import Circuit, build_qft, gate
from core.errors import ScheduleError
from core.pulse import (
    Pulse,
    PulseSchedule,
    calibrate_pi2_amplitude,
    channel_map,
    compile_gate,
    coupling_channel_id,
    default_sigma,
    drive_channel_id,
    gaussian_envelope,
    readout_channel_id,
    schedule,
)
from core.state.state_schema import SchedulerPolicy, TranspileOptions
from core.transpiler import PhaseFrame, transpile
from infrastructure.platform import GateTimings
from infrastructure.storage import FileService

PI = math.pi


def _assert_same_document(actual, expected, path="$"):
    """Same keys in the same order and same values; floats to 1e-12."""
    if isinstance(expected, dict):
        assert isinstance(actual, dict) and list(actual) == list(expected), path
        for key in expected:
            _assert_same_document(actual[key], expected[key], f"{path}.{key}")
    elif isinstance(expected, list):
        assert isinstance(actual, list) and len(actual) == len(expected), path
        for index, (a, e) in enumerate(zip(actual, expected)):
            _assert_same_document(a, e, f"{path}[{index}]")
    elif isinstance(expected, float):
        assert actual == pytest.approx(expected, rel=1e-12, abs=1e-12), path
    else:
        assert actual == expected, path


class TestCalibration:
    def test_closed_form(self):
        sigma = 10.0
        expected = (PI / 2) / (sigma * math.sqrt(2 * PI) * erf(40.0 / (2 * sigma * math.sqrt(2))))
        assert default_sigma(40.0) == 10.0
        assert calibrate_pi2_amplitude(40.0) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("duration", [20.0, 40.0, 64.0])
    def test_area_is_quarter_turn(self, duration):
        amp = calibrate_pi2_amplitude(duration)
        area, _ = quad(lambda t: gaussian_envelope(t, 0.0, duration, amp), 0.0, duration, epsabs=1e-13, epsrel=1e-12)
        assert area == pytest.approx(PI / 2, rel=1e-9)

    def test_envelope_window(self):
        amp = calibrate_pi2_amplitude(40.0)
        assert gaussian_envelope(100.0, 100.0, 40.0, amp) > 0.0
        assert gaussian_envelope(99.9, 100.0, 40.0, amp) == 0.0
        assert gaussian_envelope(140.0, 100.0, 40.0, amp) == 0.0
        assert gaussian_envelope(120.0, 100.0, 40.0, amp) == pytest.approx(amp)

    def test_zero_duration(self):
        with pytest.raises(ValueError):
            calibrate_pi2_amplitude(0.0)


class TestCompileGate:
    def test_virtual_z_emits_nothing(self, platform_2q):
        frame = PhaseFrame(2)
        assert compile_gate(gate("Z", 1), frame, platform_2q) == []
        assert compile_gate(gate("RZ", 0, params=(0.2,)), frame, platform_2q) == []
        assert compile_gate(gate("I", 0), frame, platform_2q) == []
        assert frame.frames == pytest.approx([0.2, PI])

    def test_gpi2_uses_frame(self, platform_2q):
        frame = PhaseFrame(2)
        frame.absorb(gate("Z", 0))
        (pulse,) = compile_gate(gate("GPI2", 0, params=(PI / 2,)), frame, platform_2q, label=3)
        assert (pulse.channel, pulse.kind, pulse.duration, pulse.label) == ("drive_q0", "drive", 40, 3)
        assert pulse.phase == pytest.approx(3 * PI / 2)
        assert pulse.amplitude == pytest.approx(calibrate_pi2_amplitude(40.0))

    def test_cz_on_coupler(self, platform_2q):
        (pulse,) = compile_gate(gate("CZ", 1, 0), PhaseFrame(2), platform_2q)
        assert (pulse.channel, pulse.kind, pulse.duration, pulse.qubits) == ("coupler_q0_q1", "coupling", 96, (0, 1))

    def test_measurement_on_readout(self, platform_2q):
        (pulse,) = compile_gate(gate("M", 1), PhaseFrame(2), platform_2q)
        assert (pulse.channel, pulse.kind, pulse.duration) == ("readout_q1", "readout", 1000)

    def test_cz_on_uncoupled_pair(self, platform_4q):
        with pytest.raises(ScheduleError, match="uncoupled"):
            compile_gate(gate("CZ", 0, 2), PhaseFrame(4), platform_4q)

    def test_non_native_gate(self, platform_2q):
        with pytest.raises(ScheduleError, match="not native"):
            compile_gate(gate("H", 0), PhaseFrame(2), platform_2q)

    def test_zero_duration(self, platform_2q):
        p = platform_2q.model_copy(update={"timings": GateTimings(gpi2_duration=0.0)})
        with pytest.raises(ScheduleError, match="duration"):
            compile_gate(gate("GPI2", 0, params=(0.0,)), PhaseFrame(2), p)


class TestChannels:
    def test_ids(self):
        assert drive_channel_id(0) == "drive_q0"
        assert readout_channel_id(3) == "readout_q3"
        assert coupling_channel_id(2, 1) == "coupler_q1_q2"

    def test_channel_map(self, platform_4q):
        ids = set(channel_map(platform_4q))
        assert {"drive_q3", "readout_q0", "coupler_q2_q3"} <= ids
        assert "coupler_q0_q2" not in ids


class TestBellSchedule:
    def test_timing(self, bell_schedule):
        timed = [(x.channel, x.start, x.end) for x in bell_schedule.pulses]
        assert timed == [
            ("drive_q0", 0, 40),
            ("drive_q1", 40, 80),
            ("coupler_q0_q1", 80, 176),
            ("drive_q1", 176, 216),
            ("readout_q0", 272, 1272),
            ("readout_q1", 272, 1272),
        ]
        assert bell_schedule.total_duration == 1272
        assert bell_schedule.gate_end == 216
        assert bell_schedule.readout_onset == 272

    def test_phases_and_frames(self, bell_schedule):
        phases = [x.phase for x in bell_schedule.pulses if x.kind == "drive"]
        assert phases == pytest.approx([3 * PI / 2, 3 * PI / 2, 5 * PI / 2])
        assert bell_schedule.final_frames == pytest.approx((PI, 2 * PI))

    def test_unfolded_native_gives_the_same_pulses(self, bell_circuit, bell_schedule, platform_2q):
        native = transpile(bell_circuit, platform_2q, TranspileOptions(fold_virtual_z=False)).native
        unfolded = schedule(native, platform_2q)
        assert [(x.channel, x.start, x.duration) for x in unfolded.pulses] == \
            [(x.channel, x.start, x.duration) for x in bell_schedule.pulses]
        assert [x.phase for x in unfolded.pulses if x.kind == "drive"] == pytest.approx(
            [x.phase for x in bell_schedule.pulses if x.kind == "drive"]
        )
        assert unfolded.final_frames == pytest.approx(bell_schedule.final_frames)
        assert [(v.qubit, v.time) for v in unfolded.virtual_z] == [(0, 0), (1, 40), (1, 176)]

    def test_asap(self, bell_transpiled, platform_2q):
        s = schedule(bell_transpiled.native, platform_2q, SchedulerPolicy(mode="asap"))
        starts = {(x.channel, x.label): x.start for x in s.pulses}
        drive_starts = sorted(x.start for x in s.pulses if x.kind == "drive")
        assert drive_starts == [0, 0, 136]
        assert starts[("coupler_q0_q1", 2)] == 40
        assert s.readout_onset == 176 + 56
        assert s.total_duration == 1232

    def test_deterministic_bytes(self, bell_transpiled, platform_2q):
        a = FileService.dumps_json(schedule(bell_transpiled.native, platform_2q).to_dict())
        b = FileService.dumps_json(schedule(bell_transpiled.native, platform_2q).to_dict())
        assert a == b

    def test_document_form(self, bell_schedule):
        data = bell_schedule.to_dict()
        assert set(data) >= {"platform", "policy", "total_duration_ns", "pulses", "frames"}
        assert data["pulses"][0]["start_ns"] == 0
        assert data["frames"]["1"] == pytest.approx(2 * PI)
        assert PulseSchedule.from_dict(data) == bell_schedule

    def test_matches_golden_file(self, bell_schedule):
        golden_text = FileService.read_text(corpus_path("bell_schedule.json"))
        assert FileService.dumps_json(json.loads(golden_text)) == golden_text
        produced = json.loads(FileService.dumps_json(bell_schedule.to_dict()))
        _assert_same_document(produced, json.loads(golden_text))


class TestScheduleProperties:
    def test_qft2_sequential_duration(self, platform_2q):
        measured = Circuit(
            n_qubits=2, n_clbits=2,
            gates=build_qft(2).gates + (gate("M", 0, clbit=0), gate("M", 1, clbit=1)),
        )
        native = transpile(measured, platform_2q).native
        s = schedule(native, platform_2q)
        gates = sum(x.duration for x in s.gate_pulses)
        assert s.total_duration == pytest.approx(gates + 56 + 1000)

    def test_no_readout(self, platform_2q):
        native = transpile(Circuit(n_qubits=2, gates=(gate("H", 0),)), platform_2q).native
        s = schedule(native, platform_2q)
        assert s.readouts == [] and s.readout_onset is None
        assert s.total_duration == 40

    def test_channels_never_overlap(self, platform_4q):
        s = schedule(transpile(build_qft(4), platform_4q).native, platform_4q, SchedulerPolicy(mode="asap"))
        for channel in {x.channel for x in s.pulses}:
            pulses = s.on_channel(channel)
            for prev, nxt in zip(pulses, pulses[1:]):
                assert prev.end <= nxt.start + 1e-9

    def test_drive_needs_phase(self):
        with pytest.raises(ValidationError):
            Pulse(channel="drive_q0", kind="drive", duration=40.0, qubits=(0,), label=0)

    def test_unsorted_pulses_rejected(self):
        a = Pulse(channel="readout_q0", kind="readout", start=50.0, duration=10.0, qubits=(0,), label=1)
        b = Pulse(channel="readout_q1", kind="readout", start=0.0, duration=10.0, qubits=(1,), label=0)
        with pytest.raises(ValidationError):
            PulseSchedule(platform="x", n_qubits=2, pulses=(a, b), total_duration=60.0)


def _assert_no_overlap(s: PulseSchedule) -> None:
    for channel in {x.channel for x in s.pulses}:
        pulses = s.on_channel(channel)
        for prev, nxt in zip(pulses, pulses[1:]):
            assert prev.end <= nxt.start + 1e-9, channel
    for q in range(s.n_qubits):
        busy = sorted((x for x in s.gate_pulses if q in x.qubits), key=lambda x: x.start)
        for prev, nxt in zip(busy, busy[1:]):
            assert prev.end <= nxt.start + 1e-9, q


class TestRandomSchedules:
    @pytest.fixture(scope="class", params=range(200))
    def schedules(self, request, platform_4q):
        rng = np.random.default_rng(request.param)
        n = int(rng.integers(1, 5))
        c = random_circuit(rng, n, int(rng.integers(1, 11)), measure=request.param % 2 == 0)
        native = transpile(c, platform_4q).native
        return (
            schedule(native, platform_4q),
            schedule(native, platform_4q, SchedulerPolicy(mode="asap")),
        )

    def test_channels_are_disjoint(self, schedules):
        for s in schedules:
            _assert_no_overlap(s)

    def test_asap_is_never_longer(self, schedules):
        sequential, asap = schedules
        assert asap.total_duration <= sequential.total_duration + 1e-9
        assert asap.gate_end <= sequential.gate_end + 1e-9

    def test_sequential_gate_time_is_the_sum_of_durations(self, schedules, platform_4q):
        sequential, _ = schedules
        assert sequential.gate_end == pytest.approx(sum(x.duration for x in sequential.gate_pulses))
        if sequential.readouts:
            assert sequential.readout_onset == pytest.approx(
                sequential.gate_end + platform_4q.timings.measurement_buffer
            )
            assert sequential.total_duration == pytest.approx(
                sequential.readout_onset + platform_4q.timings.readout_duration
            )
