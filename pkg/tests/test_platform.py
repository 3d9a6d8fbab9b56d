import json
import math

import pytest

from core.errors import ArtifactError, PlatformError
from infrastructure.platform import (
    QubitParams,
    load_platform,
    platform_from_dict,
    platform_to_dict,
    pure_dephasing_time,
    save_platform,
)


def _document(**qubit_overrides):
    qubit = {"id": 0, "frequency_ghz": 5.0, "anharmonicity_mhz": -200.0, "t1_us": 24.0, "t2_us": 33.0}
    qubit.update(qubit_overrides)
    return {"name": "single", "qubits": [qubit]}


class TestLoadPlatform:
    def test_anyon_2q_units(self, platform_2q):
        assert platform_2q.n_qubits == 2
        assert platform_2q.qubits[0].t1 == pytest.approx(24000.0)
        assert platform_2q.qubits[0].t2 == pytest.approx(33000.0)
        assert platform_2q.qubits[0].frequency == pytest.approx(2 * math.pi * 5.0)
        assert platform_2q.qubits[0].anharmonicity == pytest.approx(-2 * math.pi * 0.2)
        assert platform_2q.hilbert_dimension == 9

    def test_anyon_2q_timings(self, platform_2q):
        t = platform_2q.timings
        assert (t.gpi2_duration, t.cz_duration, t.readout_duration, t.measurement_buffer) == (40, 96, 1000, 56)

    def test_anyon_4q_is_a_line(self, platform_4q):
        graph = platform_4q.connectivity()
        assert sorted(graph.edges()) == [(0, 1), (1, 2), (2, 3)]
        assert platform_4q.are_coupled(2, 1)
        assert not platform_4q.are_coupled(0, 2)

    def test_round_trip_through_file(self, platform_2q, tmp_path):
        path = save_platform(platform_2q, str(tmp_path / "copy.json"))
        loaded = load_platform(path)
        assert loaded.couplings == platform_2q.couplings
        assert loaded.timings == platform_2q.timings
        for a, b in zip(loaded.qubits, platform_2q.qubits):
            assert a.frequency == pytest.approx(b.frequency, rel=1e-12)
            assert a.anharmonicity == pytest.approx(b.anharmonicity, rel=1e-12)
            assert (a.t1, a.t2) == (b.t1, b.t2)

    def test_timing_defaults(self):
        spec = platform_from_dict(_document())
        t = spec.timings
        assert (t.gpi2_duration, t.cz_duration, t.readout_duration, t.measurement_buffer) == (40, 96, 1000, 56)
        assert spec.levels_per_qubit == 3

    def test_missing_coherence_fields_disable_decoherence(self):
        doc = _document()
        del doc["qubits"][0]["t1_us"]
        del doc["qubits"][0]["t2_us"]
        q = platform_from_dict(doc).qubits[0]
        assert q.t1 is None and q.t2 is None


class TestPlatformErrors:
    def test_t2_above_twice_t1(self):
        with pytest.raises(PlatformError, match="t2 exceeds 2·t1"):
            platform_from_dict(_document(t1_us=10.0, t2_us=30.0))

    def test_zero_anharmonicity(self):
        with pytest.raises(PlatformError, match="anharmonicity"):
            platform_from_dict(_document(anharmonicity_mhz=0.0))

    def test_unknown_field_names_its_path(self):
        with pytest.raises(PlatformError) as info:
            platform_from_dict(_document(colour="blue"))
        assert info.value.field == "qubits[0]"

    def test_both_unit_variants(self):
        with pytest.raises(PlatformError, match="not both"):
            platform_from_dict(_document(t1_ns=24000.0))

    def test_coupling_to_unknown_qubit(self):
        doc = _document()
        doc["couplings"] = [{"pair": [0, 3]}]
        with pytest.raises(PlatformError, match="unknown qubit"):
            platform_from_dict(doc)

    def test_negative_duration(self):
        doc = _document()
        doc["timings"] = {"cz_duration_ns": -1}
        with pytest.raises(PlatformError):
            platform_from_dict(doc)

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ArtifactError) as info:
            load_platform(str(path))
        assert "broken.json" in str(info.value)


class TestPureDephasingTime:
    def test_anyon_values(self):
        q = QubitParams(id=0, frequency=1.0, anharmonicity=-1.0, t1=24000.0, t2=33000.0)
        expected = 1.0 / (1.0 / 33000.0 - 1.0 / 48000.0)
        assert pure_dephasing_time(q) == pytest.approx(expected, rel=1e-12)
        assert pure_dephasing_time(q) == pytest.approx(105600.0, rel=1e-9)

    def test_rates_add_up(self, platform_4q):
        for q in platform_4q.qubits:
            t_phi = pure_dephasing_time(q)
            assert 1 / t_phi + 1 / (2 * q.t1) == pytest.approx(1 / q.t2, rel=1e-12)

    def test_t2_equal_twice_t1_has_no_channel(self):
        q = QubitParams(id=0, frequency=1.0, anharmonicity=-1.0, t1=1000.0, t2=2000.0)
        assert pure_dephasing_time(q) == math.inf

    def test_relaxation_disabled(self):
        q = QubitParams(id=0, frequency=1.0, anharmonicity=-1.0, t2=1000.0)
        assert pure_dephasing_time(q) == pytest.approx(1000.0)

    def test_dict_uses_ns_fields(self, platform_2q):
        data = platform_to_dict(platform_2q)
        assert data["qubits"][0]["t1_ns"] == pytest.approx(24000.0)
        assert json.loads(json.dumps(data))["timings"]["cz_duration_ns"] == 96
