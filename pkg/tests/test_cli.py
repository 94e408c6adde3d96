from __future__ import annotations

import json
import subprocess
import sys

import pytest

from graded_descent.cli import main


def run(*argv) -> tuple[int, str]:
    lines: list[str] = []
    code = main(list(argv), out=lines.append)
    return code, "\n".join(lines)


def test_trivial_test_nontrivial():
    code, out = run("russell-trivial-test", "--field", "GF(2)(u)", "--n", "1", "--tau", "1 + u*F")
    assert code == 0
    assert json.loads(out)["results"]["verdict"] == "nontrivial"
    code, out = run("russell-trivial-test", "--field", "GF(2)(u)", "--n", "1", "--tau", "u + F")
    rep = json.loads(out)
    assert rep["results"]["verdict"] == "trivial" and rep["results"]["witness"] == "1/u"


def test_derivation_table():
    code, out = run("derivation-table", "--p", "2", "--mprime", "2", "--imax", "8")
    assert code == 0
    rep = json.loads(out)
    rows = rep["results"]["table"]
    assert all(r["match"] for r in rows)
    assert {"i": 3, "j": 1, "value": "t^2", "predicted": "t^2", "match": True} in rows
    assert {"i": 4, "j": 1, "value": "0", "predicted": "0", "match": True} in rows
    assert all(c["status"] == "pass" for c in rep["checks"])


def test_report_fields():
    code, out = run("tame-classify", "--q", "5", "--e", "4")
    rep = json.loads(out)
    assert code == 0
    assert set(rep) >= {"command", "inputs", "results", "checks", "artifact_version", "field_presentation_choices"}
    assert len(rep["results"]["classes"]) == 4


def test_trivialize_and_pic():
    code, out = run("russell-trivialize", "--field", "GF(2)", "--stride", "2", "--n", "1",
                    "--r", "q_t", "--s", "q_t", "--f", "1,t^-2")
    assert code == 0
    assert json.loads(out)["results"]["triv"] == "t^-1*x + y"
    code, out = run("pic-report", "--field", "GF(2)", "--stride", "2", "--n", "1",
                    "--r", "q_t", "--s", "q_t", "--f", "1,t^-2")
    assert code == 0
    assert json.loads(out)["results"]["deg_T"] == 2


def test_iso_test():
    code, out = run("russell-iso-test", "--field", "GF(2)(u)", "--n", "1", "--tau", "u + F", "--tau2", "1")
    rep = json.loads(out)["results"]
    assert code == 0 and rep["exact"]["status"] == "isomorphic"


@pytest.mark.parametrize(
    "argv,code",
    [
        (["russell-trivial-test", "--field", "GF(6)", "--n", "1", "--tau", "1"], 1),
        (["russell-trivial-test", "--field", "GF(2)(u)", "--n", "1", "--tau", "1 + + F"], 1),
        (["no-such-command"], 1),
        (["tame-classify", "--q", "x", "--e", "2"], 1),
        (["russell-trivialize", "--field", "GF(2)(u)", "--n", "1", "--f", "1,u"], 2),
        (["russell-build", "--field", "GF(7)", "--n", "1", "--f", "0"], 2),
        (["tame-classify", "--q", "5", "--e", "3"], 2),
        (["russell-build", "--form", "{not json"], 1),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(*argv)[0] == code


def test_selfcheck_deterministic():
    a = run("selfcheck", "--seed", "7", "--count", "10")
    b = run("selfcheck", "--seed", "7", "--count", "10")
    assert a == b and a[0] == 0


def test_entry_point_and_env_seed(monkeypatch):
    monkeypatch.setenv("GRADED_DESCENT_SEED", "3")
    code, out = run("selfcheck", "--count", "6")
    assert code == 0 and json.loads(out)["inputs"]["seed"] == 3
    proc = subprocess.run([sys.executable, "-m", "graded_descent", "derivation-table", "--p", "3",
                           "--mprime", "1", "--imax", "3", "--json"], capture_output=True, text=True)
    assert proc.returncode == 0 and "\n" not in proc.stdout.strip()
