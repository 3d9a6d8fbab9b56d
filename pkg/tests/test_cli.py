import json
import os

import pytest

from conftest import PLATFORM_DIR, corpus_path
from core.errors import ArtifactError, InvariantError, ScheduleError, StiffnessError
from infrastructure.storage import ArtifactService
from main import EXIT_INVALID, EXIT_OK, EXIT_PARSE, EXIT_SOLVER, EXIT_USAGE, exit_code_for, main

PLATFORM_2Q = os.path.join(PLATFORM_DIR, "anyon_2q.json")
PLATFORM_4Q = os.path.join(PLATFORM_DIR, "anyon_4q.json")


def _read(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def _run(out_dir, *args, qasm="bell.qasm", platform=PLATFORM_2Q):
    return main(["run", corpus_path(qasm), "--platform", platform, "--out-dir", str(out_dir), *args])


@pytest.fixture(scope="module")
def bell_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("bell_run")
    code = _run(out, "--no-noise", "--output-dt", "4", "--shots", "500", "--validate")
    return out, code


class TestStages:
    def test_transpile(self, tmp_path):
        assert main(["transpile", corpus_path("bell.qasm"), "--platform", PLATFORM_2Q, "--out-dir", str(tmp_path)]) == EXIT_OK
        native = _read(tmp_path / "native.json")
        assert [g["kind"] for g in native["gates"]] == ["GPI2", "GPI2", "CZ", "GPI2", "M", "M"]
        report = _read(tmp_path / "transpile_report.json")
        assert report["physical_pulse_count"] == 6
        assert (tmp_path / "manifest.json").exists()

    def test_transpile_empty(self, tmp_path):
        assert main(["transpile", corpus_path("empty.qasm"), "--platform", PLATFORM_2Q, "--out-dir", str(tmp_path)]) == EXIT_OK
        assert _read(tmp_path / "native.json")["gates"] == []

    def test_transpile_without_folding(self, tmp_path):
        args = ["transpile", corpus_path("bell.qasm"), "--platform", PLATFORM_2Q, "--out-dir", str(tmp_path), "--no-fold"]
        assert main(args) == EXIT_OK
        assert len(_read(tmp_path / "native.json")["gates"]) == 9

    def test_compile_is_byte_stable(self, tmp_path):
        main(["transpile", corpus_path("bell.qasm"), "--platform", PLATFORM_2Q, "--out-dir", str(tmp_path / "t")])
        outputs = []
        for name in ("a", "b"):
            out = tmp_path / name
            code = main(["compile", str(tmp_path / "t" / "native.json"), "--platform", PLATFORM_2Q, "--out-dir", str(out)])
            assert code == EXIT_OK
            outputs.append((out / "schedule.json").read_bytes())
        assert outputs[0] == outputs[1]
        schedule = json.loads(outputs[0])
        assert schedule["total_duration_ns"] == 1272
        assert [p["start_ns"] for p in schedule["pulses"]] == [0, 40, 80, 176, 272, 272]

    def test_simulate_is_seeded(self, tmp_path):
        main(["transpile", corpus_path("bell.qasm"), "--platform", PLATFORM_2Q, "--out-dir", str(tmp_path / "t")])
        main(["compile", str(tmp_path / "t" / "native.json"), "--platform", PLATFORM_2Q, "--out-dir", str(tmp_path / "c")])
        counts = []
        for name in ("a", "b"):
            out = tmp_path / name
            code = main(["simulate", str(tmp_path / "c" / "schedule.json"), "--platform", PLATFORM_2Q,
                         "--out-dir", str(out), "--no-noise", "--output-dt", "8", "--shots", "200", "--seed", "5"])
            assert code == EXIT_OK
            counts.append((out / "counts.json").read_bytes())
        assert counts[0] == counts[1]
        metrics = _read(tmp_path / "a" / "metrics.json")
        assert metrics["fidelity"] >= 1 - 1e-6
        assert metrics["decoherence"] is False
        assert sum(json.loads(counts[0]).values()) == 200


class TestRun:
    def test_all_stages_pass(self, bell_run):
        out, code = bell_run
        assert code == EXIT_OK
        report = _read(out / "validation.json")
        assert report["passed"]
        assert [v["stage"] for v in report["verdicts"]] == [
            "circuit_equivalence", "pulse_validity", "evolution", "fidelity",
        ]

    def test_artifacts_and_hashes(self, bell_run):
        out, _ = bell_run
        manifest = ArtifactService.read_manifest(str(out))
        assert set(manifest["artifacts"]) >= {
            "original", "native", "transpile_report", "schedule", "populations", "counts", "state", "metrics", "validation",
        }
        assert all(ArtifactService.verify_hashes(str(out), manifest).values())
        assert (out / "run.log").exists()

    def test_populations_csv(self, bell_run):
        out, _ = bell_run
        lines = (out / "populations.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "time_ns,00,01,10,11,leakage"
        assert len(lines) == 1 + 319

    def test_revalidate(self, bell_run):
        out, _ = bell_run
        assert main(["validate", str(out), "--platform", PLATFORM_2Q]) == EXIT_OK

    def test_revalidate_detects_tampering(self, bell_run, tmp_path):
        out, _ = bell_run
        for name in ("original.json", "native.json", "transpile_report.json", "schedule.json", "metrics.json"):
            (tmp_path / name).write_bytes((out / name).read_bytes())
        schedule = _read(tmp_path / "schedule.json")
        schedule["pulses"][1]["phase_rad"] += 0.5
        (tmp_path / "schedule.json").write_text(json.dumps(schedule), encoding="utf-8")
        assert main(["validate", str(tmp_path), "--platform", PLATFORM_2Q]) == EXIT_INVALID

    def test_noisy_bell(self, tmp_path):
        code = _run(tmp_path, "--output-dt", "8", "--validate")
        assert code == EXIT_OK
        metrics = _read(tmp_path / "metrics.json")
        assert 0.990 <= metrics["fidelity"] <= 0.9999
        assert metrics["fidelity_at"]["gate_end"] > metrics["fidelity_at"]["readout_end"]
        counts = _read(tmp_path / "counts.json")
        assert counts["00"] + counts["11"] >= 960

    def test_strict_threshold_fails(self, tmp_path):
        code = _run(tmp_path, "--output-dt", "50", "--validate", "--fidelity-threshold", "0.99995")
        assert code == EXIT_INVALID

    def test_qft2(self, tmp_path):
        assert _run(tmp_path, "--output-dt", "20", "--validate", "--fidelity-threshold", "0.9", qasm="qft2.qasm") == EXIT_OK
        metrics = _read(tmp_path / "metrics.json")
        assert metrics["fidelity_at"]["gate_end"] > metrics["fidelity_at"]["readout_end"]

    def test_qft2_noise_free(self, tmp_path):
        assert _run(tmp_path, "--no-noise", "--output-dt", "20", "--shots", "0", qasm="qft2.qasm") == EXIT_OK
        metrics = _read(tmp_path / "metrics.json")
        assert metrics["fidelity"] >= 0.999
        assert _read(tmp_path / "counts.json") == {}

    def test_env_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv("EMULATOR_OUTPUT_DIR", str(tmp_path / "from_env"))
        assert main(["transpile", corpus_path("bell.qasm"), "--platform", PLATFORM_2Q]) == EXIT_OK
        assert (tmp_path / "from_env" / "native.json").exists()

    @pytest.mark.slow
    def test_qft4(self, tmp_path):
        code = _run(tmp_path, "--no-noise", "--engine", "schrodinger", "--output-dt", "50",
                    qasm="qft4.qasm", platform=PLATFORM_4Q)
        assert code == EXIT_OK
        metrics = _read(tmp_path / "metrics.json")
        assert metrics["fidelity"] >= 0.99
        report = _read(tmp_path / "transpile_report.json")
        assert report["physical_pulse_count"] > 0


class TestExitCodes:
    def test_parse_error(self, tmp_path, capsys):
        code = main(["transpile", corpus_path("bad.qasm"), "--platform", PLATFORM_2Q, "--out-dir", str(tmp_path)])
        assert code == EXIT_PARSE
        assert "bad.qasm:6:1:" in capsys.readouterr().err

    @pytest.mark.parametrize("name", ["div_zero.qasm", "overflow.qasm"])
    def test_bad_angles_are_parse_errors(self, tmp_path, capsys, name):
        code = main(["transpile", corpus_path(name), "--platform", PLATFORM_2Q, "--out-dir", str(tmp_path)])
        assert code == EXIT_PARSE
        assert f"{name}:4:" in capsys.readouterr().err

    def test_missing_input(self, tmp_path):
        code = main(["transpile", str(tmp_path / "nope.qasm"), "--platform", PLATFORM_2Q, "--out-dir", str(tmp_path)])
        assert code == EXIT_PARSE

    def test_unknown_extension(self, tmp_path):
        source = tmp_path / "bell.txt"
        source.write_text("OPENQASM 2.0;", encoding="utf-8")
        assert main(["transpile", str(source), "--platform", PLATFORM_2Q, "--out-dir", str(tmp_path)]) == EXIT_PARSE

    def test_malformed_schedule(self, tmp_path):
        path = tmp_path / "schedule.json"
        path.write_text(json.dumps({"platform": "anyon_2q", "pulses": [{"channel": "drive_q0"}]}), encoding="utf-8")
        assert main(["simulate", str(path), "--platform", PLATFORM_2Q, "--out-dir", str(tmp_path / "o")]) == EXIT_PARSE

    def test_uncoupled_cz(self, tmp_path):
        native = {"n_qubits": 4, "n_clbits": 0, "gates": [{"kind": "CZ", "qubits": [0, 2]}], "folded": True}
        path = tmp_path / "native.json"
        path.write_text(json.dumps(native), encoding="utf-8")
        assert main(["compile", str(path), "--platform", PLATFORM_4Q, "--out-dir", str(tmp_path / "o")]) == EXIT_INVALID

    def test_bad_platform(self, tmp_path):
        doc = _read(PLATFORM_2Q)
        doc["qubits"][0]["t2_us"] = 100.0
        path = tmp_path / "bad_platform.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code = main(["transpile", corpus_path("bell.qasm"), "--platform", str(path), "--out-dir", str(tmp_path)])
        assert code == EXIT_INVALID

    def test_invalid_option_value(self, tmp_path):
        assert _run(tmp_path, "--shots", "-5") == EXIT_USAGE

    def test_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["run"])
        assert info.value.code == EXIT_USAGE

    @pytest.mark.parametrize(
        "error, code",
        [
            (StiffnessError("step size underflow", 12.0), EXIT_SOLVER),
            (ArtifactError("bad", path="x.json"), EXIT_PARSE),
            (ScheduleError("bad"), EXIT_INVALID),
            (InvariantError("trace", 1.0, 1e-3), EXIT_INVALID),
            (AssertionError("overlap"), EXIT_INVALID),
        ],
    )
    def test_mapping(self, error, code):
        assert exit_code_for(error) == code
