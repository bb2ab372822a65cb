import json
import subprocess
import sys
from pathlib import Path

import pytest

from prg.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_form_check_antisymmetric(capsys):
    code, out, _ = run(capsys, "form", "check", DATA / "eq-antisym.json")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "verified"
    assert rep["report"]["nondegenerate"] is True
    assert rep["report"]["twist"] == "-I"


def test_form_check_singular_is_falsified(capsys):
    code, out, _ = run(capsys, "form", "check", DATA / "eq-singular.json")
    assert code == 1
    assert json.loads(out)["report"]["witness"] == ["0", "1"]


def test_form_dual_and_aut(capsys):
    code, out, _ = run(capsys, "form", "dual", DATA / "eq-symmetric.json")
    assert code == 0
    code, out, _ = run(capsys, "form", "aut", DATA / "eq-antisym.json", DATA / "phi-diag-2-3.json")
    assert code == 0 and json.loads(out)["report"]["lambda"] == "6"


def test_algebra_dims(capsys):
    code, out, _ = run(capsys, "algebra", "dims", DATA / "eq-jordan.json", "--N", 2, "--max-deg", 4)
    assert code == 0
    assert json.loads(out)["report"]["dims"] == [1, 2, 3, 4, 5]


def test_tiny_bound_is_inconclusive(capsys):
    e = DATA / "eq-antisym.json"
    code, out, _ = run(capsys, "uqg", "verify-axioms", e, e, "--len-bound", 2)
    assert code == 2 and json.loads(out)["status"] == "inconclusive"


def test_twist_commands(capsys):
    e = DATA / "eq-antisym.json"
    assert run(capsys, "twist", "pair", e, DATA / "phi-diag-2-3.json")[0] == 0
    assert run(capsys, "twist", "cocycle", e, DATA / "phi-diag-2-half.json", "--len-bound", 8)[0] == 0
    assert run(capsys, "twist", "conditions", e)[0] == 0


def test_nonvanishing_certificate_round_trip(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    code, _, _ = run(
        capsys, "nonvanishing", DATA / "eq-quantum-plane-q2.json", DATA / "eq-jordan.json",
        "--rng-seed", 5, "--cert-out", cert,
    )
    assert code == 0 and cert.exists()
    code, out, _ = run(capsys, "certify", "verify", cert)
    assert code == 0 and json.loads(out)["report"]["valid"] is True
    obj = json.loads(cert.read_text())
    obj["verdict"] = "failed"
    cert.write_text(json.dumps(obj))
    assert run(capsys, "certify", "verify", cert)[0] == 1


def test_module_family_with_seed(capsys):
    e = DATA / "eq-antisym.json"
    code, out, _ = run(capsys, "module-family", e, e, "--seed", DATA / "seed-identity.json", "--window", -2, 2)
    assert code == 0
    rep = json.loads(out)["report"]
    assert rep["family"]["window"] == [-2, 2] and rep["verify"]["passed"]


def test_reports_are_deterministic(capsys):
    argv = ("nonvanishing", DATA / "eq-antisym.json", DATA / "eq-jordan.json", "--rng-seed", 11)
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_malformed_json_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"m": 2,\n "dim": 2 "entries": []}')
    code, out, err = run(capsys, "form", "check", bad)
    assert code == 3
    assert json.loads(out)["status"] == "input-error"
    assert "line 2" in err and "column" in err


def test_missing_file_and_bad_flags(capsys, tmp_path):
    assert run(capsys, "form", "check", tmp_path / "nope.json")[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["uqg", "lemma", str(DATA / "eq-antisym.json"), "--len-bound", "0"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 3


def test_text_format(capsys):
    code, out, _ = run(capsys, "form", "check", DATA / "eq-symmetric.json", "--format", "text")
    assert code == 0
    assert "status: verified" in out and "twist: I" in out


def test_console_script_exit_code(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run(
        [sys.executable, "-m", "prg.cli", "form", "check", str(DATA / "eq-singular.json"), "-o", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert json.loads(out.read_text())["status"] == "falsified"
