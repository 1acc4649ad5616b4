"""Command-line behavior: subcommands, exit codes, determinism, streams."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ravkit.cli import dispatch


def run(*argv: str) -> tuple[int, bytes, bytes]:
    return dispatch(list(argv))


class TestRavCommand:
    def test_toy_json_contains_published_value(self, fixtures):
        code, out, err = run("rav", str(fixtures / "toy.json"), "--format", "json")
        assert code == 0 and err == b""
        doc = json.loads(out)
        assert doc["breakdown"]["actsec"] == pytest.approx(-12.744, abs=0.01)
        assert doc["breakdown"]["seclim_sum"] == "176121/400"

    def test_empty_scope_scores_100(self, fixtures):
        code, out, err = run("rav", str(fixtures / "empty.json"))
        assert code == 0
        assert b"actsec       100.000000" in out

    def test_text_default_format(self, fixtures):
        code, out, _ = run("rav", str(fixtures / "toy.json"))
        assert code == 0
        assert out.startswith(b"rav report: toy")

    def test_missing_file_is_input_error(self):
        code, out, err = run("rav", "no-such-file.json")
        assert code == 1
        assert out == b""
        assert b"no-such-file.json" in err

    def test_invalid_scope_file_is_input_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_bytes(b'{"schema": "ravkit-scope/1", "scopes": [{"id": "x", "oops": 1}]}')
        code, out, err = run("rav", str(bad))
        assert code == 1 and out == b"" and b"oops" in err

    def test_zero_porosity_with_limitations_is_domain_error(self, tmp_path):
        bad = tmp_path / "degenerate.json"
        bad.write_bytes(
            b'{"schema": "ravkit-scope/1", "scopes": '
            b'[{"id": "x", "limitations": {"anomalies": 1}}]}'
        )
        code, out, err = run("rav", str(bad))
        assert code == 2 and out == b"" and b"porosity" in err

    def test_byte_identical_across_runs(self, fixtures):
        for fmt in ("text", "json"):
            first = run("rav", str(fixtures / "toy.json"), "--format", fmt)
            second = run("rav", str(fixtures / "toy.json"), "--format", fmt)
            assert first == second


class TestImportNmap:
    def test_scan_to_scope_document(self, fixtures):
        code, out, err = run("import-nmap", str(fixtures / "scan_1host_3ports.xml"))
        assert code == 0 and err == b""
        doc = json.loads(out)
        assert doc["schema"] == "ravkit-scope/1"
        assert doc["scopes"][0]["porosity"] == {"visibility": 1, "access": 3, "trust": 0}

    def test_merge_reproduces_worked_example_end_to_end(self, fixtures, tmp_path):
        code, merged, err = run(
            "import-nmap", str(fixtures / "scan_1host_1port.xml"),
            "--merge", str(fixtures / "controls_limits.json"),
        )
        assert code == 0, err
        merged_path = tmp_path / "merged.json"
        merged_path.write_bytes(merged)
        code, out, err = run("rav", str(merged_path), "--format", "json")
        assert code == 0, err
        doc = json.loads(out)
        assert doc["breakdown"]["actsec"] == pytest.approx(-12.744, abs=0.01)
        assert doc["scope"]["porosity"] == {"visibility": 1, "access": 1, "trust": 0}

    def test_malformed_xml_is_input_error(self, tmp_path):
        bad = tmp_path / "bad.xml"
        bad.write_bytes(b"<nmaprun><host>")
        code, _, err = run("import-nmap", str(bad))
        assert code == 1 and b"malformed" in err


class TestAggregate:
    def test_fifty_plus_hundred_gives_150_targets(self, fixtures):
        code, out, err = run(
            "aggregate", str(fixtures / "fifty.json"), str(fixtures / "hundred.json"),
            "--format", "json",
        )
        assert code == 0, err
        doc = json.loads(out)
        assert doc["scope"]["porosity"]["visibility"] == 150
        assert doc["scope"]["channel"] == "aggregate"
        assert doc["scope"]["controls"]["authentication"] == 8
        assert doc["scope"]["limitations"]["vulnerabilities"] == 2
        assert doc["scope"]["limitations"]["weaknesses"] == 4

    def test_text_output(self, fixtures):
        code, out, _ = run("aggregate", str(fixtures / "fifty.json"),
                           str(fixtures / "hundred.json"))
        assert code == 0
        assert b"visibility=150" in out


class TestTrustCommand:
    def test_average_mode(self, fixtures):
        code, out, err = run("trust", str(fixtures / "applicants.csv"), "--format", "json")
        assert code == 0, err
        doc = json.loads(out)
        by_id = {a["applicant_id"]: a for a in doc["applicants"]}
        assert by_id["conviction-case"]["combined"] == "1/32"
        assert by_id["community-case"]["per_property"]["porosity"] == "39/1250"
        assert by_id["mixed-case"]["per_property"]["consistency"] == "8/45"

    def test_max_mode_differs_from_average(self, fixtures):
        _, avg_out, _ = run("trust", str(fixtures / "applicants.csv"),
                            "--mode", "average", "--format", "json")
        _, max_out, _ = run("trust", str(fixtures / "applicants.csv"),
                            "--mode", "max", "--format", "json")
        avg = json.loads(avg_out)["applicants"][2]
        top = json.loads(max_out)["applicants"][2]
        assert avg["combined"] != top["combined"]

    def test_all_undefined_record_is_domain_error(self, tmp_path):
        csv = tmp_path / "undef.csv"
        csv.write_bytes(b"applicant_id,age_years\nghost,18\n")
        code, out, err = run("trust", str(csv))
        assert code == 2 and out == b"" and b"undefined" in err

    def test_bad_csv_is_input_error(self, tmp_path):
        csv = tmp_path / "bad.csv"
        csv.write_bytes(b"applicant_id,age_years\nx,NaNish\n")
        code, _, err = run("trust", str(csv))
        assert code == 1 and b"line 2" in err


class TestSymbolicCommand:
    def test_renders_expression_and_unit_value(self, fixtures):
        code, out, err = run("symbolic", str(fixtures / "toy.json"))
        assert code == 0, err
        text = out.decode()
        assert "ln(" in text and ")^2" in text
        assert "at h=1, l=1, p=1: -12.743031" in text

    def test_eval_override(self, fixtures):
        code, out, _ = run("symbolic", str(fixtures / "toy.json"), "--eval", "h=2")
        assert code == 0
        assert "h=2" in out.decode()

    def test_deterministic(self, fixtures):
        assert run("symbolic", str(fixtures / "toy.json")) == run(
            "symbolic", str(fixtures / "toy.json")
        )

    def test_bad_eval_spec(self, fixtures):
        code, _, err = run("symbolic", str(fixtures / "toy.json"), "--eval", "h=two")
        assert code == 1 and b"rational" in err


class TestDemoCommand:
    def test_each_kind_runs(self):
        for kind in ("permutation", "formula", "trust"):
            code, out, err = run("demo", "--kind", kind)
            assert code == 0, err
            doc = json.loads(out)
            assert doc["schema"] == "ravkit-finding/1"
            assert doc["findings"]

    def test_collision_kind_small_bounds(self):
        code, out, err = run("demo", "--kind", "collision", "--bounds", "1")
        assert code == 0, err
        doc = json.loads(out)
        assert any(f["kind"] == "score-collision" for f in doc["findings"])

    def test_deterministic_output(self):
        assert run("demo", "--kind", "formula") == run("demo", "--kind", "formula")

    def test_seed_env_fallback(self, monkeypatch, fixtures):
        monkeypatch.setenv("RAVKIT_SEED", "7")
        code, out, _ = run("demo", "--kind", "collision", "--bounds", "1")
        assert code == 0
        doc = json.loads(out)
        assert doc["findings"][0]["inputs"]["seed"] == 7


class TestUsageErrors:
    def test_unknown_subcommand(self):
        code, out, err = run("frobnicate")
        assert code == 1 and out == b""
        assert b"usage" in err.lower()

    def test_unknown_flag(self, fixtures):
        code, _, err = run("rav", str(fixtures / "toy.json"), "--sideways")
        assert code == 1 and b"usage" in err.lower()

    def test_no_command_prints_usage(self):
        code, _, err = run()
        assert code == 1 and b"usage" in err.lower()


class TestInstalledEntryPoint:
    def test_module_invocation_matches_dispatch(self, fixtures):
        proc = subprocess.run(
            [sys.executable, "-m", "ravkit.cli", "rav", str(fixtures / "toy.json")],
            capture_output=True,
        )
        code, out, err = run("rav", str(fixtures / "toy.json"))
        assert proc.returncode == code == 0
        assert proc.stdout == out
        assert proc.stderr == err == b""
