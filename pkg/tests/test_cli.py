import json
import shutil
from pathlib import Path

import pytest

from relcoeff import ManifestMismatch
from relcoeff.cli import jsonify, main
from relcoeff.corpus import corpus_run, load_entry, run_entry

DATA = Path(__file__).resolve().parent.parent / "src" / "relcoeff" / "corpus_data"


@pytest.fixture()
def problem_path(tmp_path):
    src = DATA / "staircase-pair" / "problem.txt"
    dst = tmp_path / "problem.txt"
    shutil.copy(src, dst)
    return str(dst)


def test_cli_length(problem_path, capsys):
    assert main(["length", problem_path, "I"]) == 0
    assert "= 4" in capsys.readouterr().out


def test_cli_coeffs_json(problem_path, capsys):
    assert main(["coeffs", problem_path, "J", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["e"] == ["4", "1", "0"]
    assert payload["numerator"] == ["3", "1"]


def test_cli_hilbert_display(problem_path, capsys):
    assert main(["hilbert", problem_path, "J"]) == 0
    assert "(3 + t)/(1-t)^2" in capsys.readouterr().out


def test_cli_relcoeffs(problem_path, capsys):
    assert main(["relcoeffs", problem_path, "I", "J"]) == 0
    out = capsys.readouterr().out
    assert "c = (1, 0)" in out


def test_cli_reduction(problem_path, capsys):
    assert main(["reduction", problem_path, "I", "J"]) == 0
    assert "reduction number 1" in capsys.readouterr().out


def test_cli_rr(problem_path, capsys):
    assert main(["rr", problem_path, "J", "2"]) == 0
    assert "stabilized" in capsys.readouterr().out


def test_cli_cmtest(problem_path, capsys):
    assert main(["cmtest", problem_path, "J", "--seed", "3"]) == 0
    assert "CERTIFIED_CM" in capsys.readouterr().out


def test_cli_verify(problem_path, capsys):
    assert main(["verify", problem_path, "northcott", "I", "J"]) == 0
    assert "EQUALITY_CASE_VERIFIED" in capsys.readouterr().out


def test_cli_explore(problem_path, capsys):
    assert main(["explore", problem_path, "J", "--range", "1..2",
                 "--seed", "4"]) == 0
    assert "first certified power: 1" in capsys.readouterr().out


def test_cli_engine_error_exit_code(problem_path, capsys):
    # m alone is not a reduction pair with I in the other direction
    code = main(["relcoeffs", problem_path, "J", "I"])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_cli_json_integers_are_strings(problem_path, capsys):
    main(["length", problem_path, "I", "--format", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert payload["length"] == "4"


def test_jsonify_bools_survive():
    assert jsonify({"ok": True, "n": 3}) == {"ok": True, "n": "3"}


def test_corpus_entry_roundtrip_json():
    report = run_entry("staircase-pair")
    encoded = json.dumps(jsonify({"entries": [
        {"label": report.label, "checks": [
            {"id": r.check_id, "passed": r.passed} for r in report.results
        ]}
    ]}))
    decoded = json.loads(encoded)
    assert decoded["entries"][0]["label"] == "staircase-pair"
    assert all(c["passed"] for c in decoded["entries"][0]["checks"])


def test_corpus_filter_trivial():
    report = corpus_run("trivial")
    assert [e.label for e in report.entries] == ["identity-pair"]
    assert report.passed


def test_corrupted_manifest_raises(tmp_path, monkeypatch):
    # copy an entry, corrupt one expected value, and run it strictly
    problem, manifest = load_entry("staircase-pair")
    manifest = json.loads(json.dumps(manifest))
    manifest["checks"][0]["expected"] = "999"
    with pytest.raises(ManifestMismatch) as err:
        report = run_entry("staircase-pair", problem=problem, manifest=manifest)
        for r in report.results:
            if not r.passed:
                raise ManifestMismatch(report.label, r.check_id, r.expected, r.got)
    assert "999" in str(err.value)
