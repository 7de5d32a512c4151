"""The dgz command line."""
import json
import subprocess
import sys

import pytest

from dgz.cli import main
from dgz.tripoly import TriPoly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_writes_text(tmp_path, capsys):
    path = tmp_path / "f.txt"
    code, out, _ = run(capsys, "build", "--q", "2", "--show", "--out", str(path))
    assert code == 0
    assert "deg F = 4" in out
    assert str(TriPoly.from_text(path.read_text())) == out.strip().splitlines()[-1]


def test_p_h_flags(capsys):
    code, out, _ = run(capsys, "build", "--p", "2", "--h", "2")
    assert code == 0 and out.startswith("q=4: deg F = 48")


def test_q_excludes_p(capsys):
    code, _, err = run(capsys, "build", "--q", "4", "--p", "2")
    assert code == 2 and "InvalidQ" in err


def test_invalid_q(capsys):
    code, _, err = run(capsys, "verify", "--q", "6")
    assert code == 2 and "InvalidQ" in err


def test_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--q", "2", "--suite", "bogus")
    assert code == 2 and "UnknownSuite" in err


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--q", "3", "--ext", "2")
    assert code == 0 and json.loads(out) == {"q": 3, "ext": 2, "count": 78, "expected": 78}
    code, out, _ = run(capsys, "count", "--q", "2", "--ext", "5")
    assert json.loads(out)["expected"] == "no-formula"


def test_arc_json(tmp_path, capsys):
    path = tmp_path / "arc.json"
    code, out, _ = run(capsys, "arc", "--q", "2", "--json", str(path))
    doc = json.loads(path.read_text())
    assert code == 0 and doc == json.loads(out)
    assert doc["histogram"] == {"0": 7, "2": 24, "4": 42} and doc["complete"]


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "--q", "2", "--point", "(1:0,1:0)")
    doc = json.loads(out)
    assert code == 0 and doc["orbit"]["orbit_size"] == 14 and doc["orbit"]["stabilizer_order"] == 12
    code, out, _ = run(capsys, "orbits", "--q", "3", "--subgroup", "Singer")
    assert json.loads(out)["order"] == 13


def test_local_point(capsys):
    code, out, _ = run(capsys, "local", "--q", "3", "--point", "(0,1:0:1)")
    doc = json.loads(out)
    assert doc["multiplicity"] == 2 and doc["j_sequence"] == [0, 2, 3] and (doc["vR"], doc["vS"]) == (1, 0)


def test_local_off_curve(capsys):
    code, _, err = run(capsys, "local", "--q", "3", "--point", "(1:0:0)")
    assert code == 2 and "PointNotOnCurve" in err


def test_local_sweep(capsys):
    code, out, _ = run(capsys, "local", "--q", "2", "--sweep", "--samples", "4")
    doc = json.loads(out)
    assert doc["vR_sum"] == 24 and doc["counts"]["generic"] == 4


def test_quotient_exit_codes(capsys):
    code, out, _ = run(capsys, "quotient", "--q", "4")
    assert code == 0  # the printed M form is reported but not used for the exit status
    assert "FAIL" in out
    code, out, _ = run(capsys, "quotient", "--q", "5")
    assert code == 0


def test_verify_and_report(tmp_path, capsys):
    j, c = tmp_path / "r.json", tmp_path / "r.csv"
    code, out, _ = run(capsys, "verify", "--q", "2,3", "--suite", "genus,arc", "--json", str(j), "--csv", str(c))
    assert code == 0 and sum(ln.startswith("pass") for ln in out.splitlines()) == 4
    assert json.loads(j.read_text())["schema"] == "dgz-report/1"
    assert c.read_text().splitlines()[0] == "suite,q,status,detail,ms"
    code, out, _ = run(capsys, "report", "--q", "4", "--suite", "quotient")
    assert code == 1 and json.loads(out)["results"][0]["status"] == "fail"


def test_config_env(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("seed=42\n")
    monkeypatch.setenv("DGZ_CONFIG", str(cfg))
    _, out, _ = run(capsys, "report", "--q", "2", "--suite", "genus")
    assert json.loads(out)["seed"] == 42
    _, out, _ = run(capsys, "report", "--q", "2", "--suite", "genus", "--seed", "3")
    assert json.loads(out)["seed"] == 3


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dgz.cli", "build", "--q", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and "deg F = 18" in proc.stdout
