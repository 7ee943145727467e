import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from momentgate.cli import run_cli

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_counterexample_with_repair():
    code, out, _ = run("check", str(SAMPLES / "counterexample.json"), "--repair")
    assert code == 1
    assert "INFEASIBLE" in out
    assert "max feasible mass 0.3704" in out


def test_counterexample_json_format():
    code, out, _ = run("check", str(SAMPLES / "counterexample.json"), "--repair", "--format", "json")
    assert code == 1
    (doc,) = json.loads(out)
    assert doc["repairs"]["max_mass"] == pytest.approx(0.3704, abs=1e-4)


def test_feasible_file_exits_zero():
    code, out, _ = run("check", str(SAMPLES / "mixed.json"), "--format", "json")
    assert code == 0
    assert [d["label"] for d in json.loads(out)] == ["centered", "point-mass", "sphere-like"]


def test_empty_file(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_bytes(b"")
    code, _, err = run("check", str(empty))
    assert code == 2
    assert "malformed JSON" in err


def test_missing_file(tmp_path):
    assert run("check", str(tmp_path / "nope.json"))[0] == 2


def test_unknown_suffix(tmp_path):
    f = tmp_path / "jobs.yaml"
    f.write_text("{}")
    assert run("check", str(f))[0] == 2


def test_urdf_modes():
    urdf = str(SAMPLES / "robot.urdf")
    code, out, _ = run("check", urdf, "--mode", "origin_hypothesis", "--format", "json")
    assert code == 1
    docs = {d["label"]: d for d in json.loads(out)}
    assert docs["base"]["status"] == "strict_interior"
    assert docs["offset_link"]["status"] == "infeasible_center"
    assert docs["bad_tensor"]["status"] == "invalid_second_moments"
    code, out, _ = run("check", urdf, "--format", "json")
    docs = {d["label"]: d for d in json.loads(out)}
    assert docs["offset_link"]["status"] == "strict_interior"
    assert code == 1  # bad_tensor is invalid under either reading


def test_urdf_link_error_exit_code(tmp_path):
    f = tmp_path / "r.urdf"
    f.write_text(
        "<robot name='r'><link name='a'><inertial><mass value='1'/>"
        "<inertia ixx='1' ixy='0' ixz='0' iyy='1' iyz='0' izz='1'/></inertial></link>"
        "<link name='b'><inertial><mass value='1'/></inertial></link></robot>"
    )
    code, out, err = run("check", str(f), "--format", "json")
    assert code == 2
    assert "link b" in err
    assert [d["label"] for d in json.loads(out)] == ["a"]


def test_tolerance_flags(tmp_path):
    f = tmp_path / "near.json"
    f.write_text('{"kind":"moments","mean":[1.00000001],"second":[[1]]}')
    assert run("check", str(f))[0] == 1
    code, out, _ = run("check", str(f), "--tol-margin", "1e-6", "--format", "json")
    assert code == 0
    assert json.loads(out)[0]["status"] == "boundary"
    assert run("check", str(f), "--tol-margin", "-1")[0] == 2


def test_eigen_threshold_precedence(tmp_path, monkeypatch):
    # eigenvalue 1e-7, mean 5e-4 along it: ratio 2.5 at the default threshold,
    # a singular direction with |mean| <= sqrt(1e-6) once the threshold is 1e-6
    plain = tmp_path / "tiny.json"
    plain.write_text('{"kind":"moments","mean":[0,0.0005],"second":[[1,0],[0,1e-7]]}')
    with_tol = tmp_path / "tiny_tol.json"
    with_tol.write_text(
        '{"kind":"moments","mean":[0,0.0005],"second":[[1,0],[0,1e-7]],"tolerances":{"eig_rel_tol":1e-6}}'
    )
    monkeypatch.delenv("MOMENTGATE_TOL_EIG", raising=False)
    assert run("check", str(plain))[0] == 1
    assert run("check", str(plain), "--tol-eig", "1e-6")[0] == 0
    assert run("check", str(with_tol))[0] == 0
    assert run("check", str(with_tol), "--tol-eig", "1e-10")[0] == 1
    monkeypatch.setenv("MOMENTGATE_TOL_EIG", "1e-6")
    assert run("check", str(plain))[0] == 0
    assert run("check", str(plain), "--tol-eig", "1e-10")[0] == 1
    monkeypatch.setenv("MOMENTGATE_TOL_EIG", "garbage")
    assert run("check", str(plain))[0] == 2


def test_volume_ratio():
    code, out, _ = run("volume-ratio", "--n", "3")
    assert code == 0 and out.strip() == "0.5236"
    assert run("volume-ratio", "--n", "0")[0] == 2


def test_bad_arguments():
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2


def test_selftest():
    code, out, _ = run("selftest", "--scale", "0.1")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6 and all(line.startswith("PASS") for line in lines)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "momentgate", "volume-ratio", "--n", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0.7854"
