import json
import shutil
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from lsmtools import mps, projective
from lsmtools.cli import parse_tolerances, ParseError, run

CFG = Path(__file__).resolve().parents[1] / "demos" / "configs"


def call(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = run([*argv, "--out", str(out)])
    return code, json.loads(out.read_text())


def test_cohomology(tmp_path):
    code, r = call(tmp_path, "cohomology", "--group", "z2xz2")
    assert code == 0 and r["results"]["invariant_factors"] == [2]
    code, r = call(tmp_path, "cohomology", "--group", "z3xz3")
    assert code == 0 and r["results"]["order"] == 3
    code, r = call(tmp_path, "cohomology", "--group", "z4")
    assert code == 0 and r["results"]["order"] == 1


def test_classify_rep(tmp_path):
    for ref, cls in (("spin_z2xz2:1", [1]), ("spin_z2xz2:2", [0]), ("spin_tr:3", [1]),
                     ("clock:3:2", [2])):
        code, r = call(tmp_path, "classify-rep", "--rep", ref)
        assert code == 0 and r["results"]["class"] == cls, ref


def test_classify_rep_from_file(tmp_path):
    f = tmp_path / "rep.json"
    f.write_text(json.dumps(projective.spin_rep_z2xz2(3).to_dict() | {"group": "z2xz2"}))
    code, r = call(tmp_path, "classify-rep", "--rep", str(f))
    assert code == 0 and r["results"]["class"] == [1]


def test_lsm_check(tmp_path):
    code, r = call(tmp_path, "lsm-check", "--spec", str(CFG / "reflection_spin_half.cfg"))
    assert code == 0 and r["results"]["obstructed"] is True
    assert all(c["ok"] for c in r["checks"])
    f = tmp_path / "t.json"
    f.write_text(json.dumps({"group": "z2xz2", "symmetry": "translation", "sites": [0]}))
    code, r = call(tmp_path, "lsm-check", "--spec", str(f))
    assert code == 0 and r["results"]["obstructed"] is False


def test_mps_index(tmp_path):
    code, r = call(tmp_path, "mps-index", "--mps", "aklt", "--rep", "spin_z2xz2:2")
    assert code == 0 and r["results"]["sigma_R"] == [1] and r["results"]["sigma_L"] == [1]
    code, r = call(tmp_path, "mps-index", "--mps", "clock_spt:3:1")
    assert code == 0 and r["results"]["sigma_R"] == [1] and r["results"]["sigma_L"] == [2]
    code, r = call(tmp_path, "mps-index", "--mps", "product:2", "--rep", "spin_z2xz2:2")
    assert code == 0 and r["results"]["sigma_R"] == [0]


def test_ed_gap(tmp_path):
    code, r = call(tmp_path, "ed-gap", "--hamiltonian", "heisenberg:1:periodic:4")
    assert code == 0
    assert r["results"]["gap"] == pytest.approx(1.0)
    assert r["results"]["multiplicities"][:2] == [1, 3]
    code, r = call(tmp_path, "ed-gap", "--hamiltonian", "heisenberg:1:periodic:6,8,10")
    assert code == 0 and 0.5 < r["results"]["alpha"] < 1.5


def test_twist(tmp_path):
    f = tmp_path / "h.json"
    f.write_text(json.dumps({"model": "heisenberg", "L": 9, "two_s": 1, "ells": [2, 3],
                             "center": 4}))
    code, r = call(tmp_path, "twist", "--hamiltonian", str(f))
    assert code == 0
    assert r["results"]["identity_error"] < 1e-12
    assert abs(complex(*r["results"]["expectation"]["value"])) < 1e-10


@pytest.mark.parametrize("argv", [
    ["nonsense"],
    ["cohomology"],
    ["cohomology", "--group", "no-such-group"],
    ["cohomology", "--group", "z2xz2", "--tol-bogus", "1"],
    ["cohomology", "--group", "z2xz2", "--tol-snap", "banana"],
    ["cohomology", "--group", "z2xz2", "--tol-snap", "5"],
    ["cohomology", "--group", "z2xz2", "--frobnicate"],
    ["classify-rep", "--rep", "spin_z2xz2:x"],
    ["lsm-check", "--spec", "/nonexistent/spec.json"],
    ["mps-index", "--mps", "aklt"],
    ["ed-gap", "--hamiltonian", "ising:1:open:4"],
    ["twist", "--hamiltonian", "heisenberg:1:open:5"],
])
def test_parse_errors_exit_2(tmp_path, argv, capsys):
    assert run(argv + ["--out", str(tmp_path / "r.json")]) == 2


def test_malformed_json_exit_2(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    assert run(["lsm-check", "--spec", str(f), "--out", str(tmp_path / "r.json")]) == 2
    f.write_text(json.dumps({"group": "z2xz2", "symmetry": "translation", "sites": [{"site": 0}]}))
    assert run(["lsm-check", "--spec", str(f), "--out", str(tmp_path / "r.json")]) == 2


def _write_mps(tmp_path, tensors):
    f = tmp_path / "m.json"
    f.write_text(json.dumps(mps.MPSTensor(tensors, normalize=False).to_dict()))
    return str(f)


def test_computation_errors_exit_3(tmp_path):
    ghz = np.zeros((2, 2, 2))
    ghz[0, 0, 0] = ghz[1, 1, 1] = 1.0
    code, r = call(tmp_path, "mps-index", "--mps", _write_mps(tmp_path, ghz),
                   "--rep", "spin_z2xz2:1")
    assert code == 3 and r["error"]["kind"] == "computation"
    # an injective state that is not symmetric under the given action
    A = np.zeros((2, 2, 2))
    A[0] = [[1, 0], [0, 0.5]]
    A[1] = [[0, 0.8], [0.3, 0]]
    code, r = call(tmp_path, "mps-index", "--mps", _write_mps(tmp_path, A),
                   "--rep", "spin_z2xz2:1")
    assert code == 3


def test_invariant_failure_exit_4(tmp_path):
    doc = projective.spin_rep_z2xz2(1).to_dict() | {"group": "z2xz2"}
    doc["ops"][1]["matrix"][0] = [2.0, 0.0]
    f = tmp_path / "rep.json"
    f.write_text(json.dumps(doc))
    code, r = call(tmp_path, "classify-rep", "--rep", str(f))
    assert code == 4 and not r["checks"][0]["ok"]


def test_tolerance_flags(tmp_path):
    tol = parse_tolerances(["--tol-snap=1e-5", "--tol-eig", "1e-9"])
    assert tol["snap"] == 1e-5 and tol["eig"] == 1e-9
    with pytest.raises(ParseError):
        parse_tolerances(["--tol-snap"])
    code, r = call(tmp_path, "classify-rep", "--rep", "spin_tr:1", "--tol-scalar", "1e-7")
    assert code == 0 and r["tolerances"]["scalar"] == 1e-7


def test_reports_are_deterministic(tmp_path):
    a = call(tmp_path, "mps-index", "--mps", "aklt", "--rep", "spin_tr:2")[1]
    b = call(tmp_path, "mps-index", "--mps", "aklt", "--rep", "spin_tr:2")[1]
    a.pop("timing"), b.pop("timing")
    assert a == b
    assert a["schema_version"] == 1 and a["status"] == 0


def test_stdout_and_module_entry():
    r = subprocess.run([sys.executable, "-m", "lsmtools", "cohomology", "--group", "z2_tr"],
                       capture_output=True, text=True, timeout=60)
    assert r.returncode == 0
    assert json.loads(r.stdout)["results"]["order"] == 2


@pytest.mark.skipif(shutil.which("lsmtools") is None, reason="console script not on PATH")
def test_console_script():
    r = subprocess.run(["lsmtools", "cohomology", "--group", "nope"], capture_output=True,
                       text=True, timeout=60)
    assert r.returncode == 2 and "lsmtools cohomology" in r.stderr
