import io
import json
import subprocess
import sys

import pytest

from harmext import cli

FOLD_KEYS = ["p", "z", "n_phi", "n_theta", "F3_plus", "F3_minus", "fold_gap", "folded",
             "axis_offset", "convergence_delta", "resolution_ok"]


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out=out)
    return code, out.getvalue()


def test_wood_eval():
    assert run("wood", "--eval", "1,2,3") == (0, "-20 -7 3\n")
    assert run("wood", "--invert=-20,-7,3") == (0, "1 2 3\n")
    assert run("wood", "--dim", "5", "--eval", "7,9,1,2,3") == (0, "7 9 -20 -7 3\n")


def test_tennisball_eval_fixed_line():
    code, out = run("tennisball", "--p", "5", "--eval", "0,1.0")
    assert code == 0
    assert [float(v) for v in out.split()] == [0.0, 1.0]


def test_fold_json_schema():
    code, out = run("fold", "--p", "50", "--z", "0.4")
    assert code == 0
    rep = json.loads(out)
    assert list(rep) == FOLD_KEYS
    assert rep["folded"] is True


def test_fold_absent_exit_code():
    code, out = run("fold", "--p", "0.01", "--z", "0.4")
    assert code == 2 and json.loads(out)["folded"] is False


def test_collision_none():
    assert run("collision", "--p", "0.01") == (2, "none\n")
    code, out = run("collision", "--p", "5")
    assert code == 0 and set(json.loads(out)) == {"p", "z1", "z2", "F3", "image_distance"}


def test_kernel_and_extend():
    assert run("kernel", "--r", "0.5", "--theta", "0") == (0, "3\n")
    code, out = run("extend-disk", "--boundary", "identity", "--at", "0.5,0")
    assert code == 0
    re_, im_ = map(float, out.split())
    assert abs(re_ - 0.5) < 1e-10 and abs(im_) < 1e-10


def test_rkc_verify():
    code, out = run("rkc-verify", "--boundary", "sinperturb:a=0.5", "--grid", "12x48")
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "consistent-with-injective"
    assert rep["n_radii"] == 12 and rep["n_angles"] == 48


def test_lemma(tmp_path):
    f = tmp_path / "sin.txt"
    f.write_text("1 0 -0.5\n-1 0 0.5\n")
    code, out = run("lemma-hz", "--boundary", f"fourier:{f}")
    rep = json.loads(out)
    assert code == 0 and abs(rep["hz_im"] + 0.5) < 1e-12 and rep["verdict"] == "nonzero"
    assert run("lemma-hz", "--boundary", "identity")[0] == 2


def test_samples_boundary(tmp_path):
    import numpy as np
    t = 2 * np.pi * np.arange(64) / 64
    f = tmp_path / "s.txt"
    np.savetxt(f, np.column_stack([np.cos(t), np.sin(t)]))
    code, out = run("extend-disk", "--boundary", f"samples:{f}", "--at", "0.3,1.0")
    w = complex(*map(float, out.split()))
    assert code == 0 and abs(w - 0.3 * np.exp(1j)) < 1e-10


def test_checks_pass():
    assert run("wood", "--check")[0] == 0
    assert run("wood", "--check", "--dim", "5")[0] == 0
    code, out = run("tennisball", "--p", "20", "--identities")
    assert code == 0 and json.loads(out)["passed"] is True


def test_ball_extend():
    code, out = run("ball-extend", "--p", "5", "--at", "0,0,0.4")
    assert code == 0 and float(out.split()[2]) < 0
    assert run("ball-extend", "--p", "5", "--at", "0,0,0.9")[0] == 1


def test_polydisk(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("1 0 : 3 0 0 0 0 0\n1 0 : 0 0 4 0 2 0\n1 0 : 0 0 0 5 0 0\n1 0 : 0 1 2 2 0 0\n")
    assert run("polydisk", "--poly", str(f), "--degree") == (0, "6\n")
    assert run("polydisk", "--poly", str(f), "--homogeneous") == (0, "false\n")
    g = tmp_path / "q.txt"
    g.write_text("1 0 : 2 1\n")
    code, out = run("polydisk", "--poly", str(g), "--coeff", "2,1")
    assert code == 0 and abs(complex(*map(float, out.split())) - 1) < 1e-12
    code, out = run("polydisk", "--poly", str(g), "--eval", "0.5,0.2j")
    w = complex(*map(float, out.split()))
    assert code == 0 and abs(w - 0.05j) < 1e-12


def test_csv_sweep():
    code, out = run("--format", "csv", "fold", "--sweep")
    lines = out.strip().split("\n")
    assert code == 0 and lines[0] == ",".join(FOLD_KEYS) and len(lines) == 16


def test_csv_profile():
    code, out = run("--format", "csv", "fold", "--p", "5", "--profile", "--points", "9")
    lines = out.strip().split("\n")
    assert code == 0 and lines[0] == "z,F1,F2,F3" and len(lines) == 10


@pytest.mark.parametrize("argv", [
    ["kernel", "--r", "abc", "--theta", "0"],
    ["wood", "--eval", "1,2"],
    ["wood", "--eval", "1,x,3"],
    ["--tol", "bogus=1", "kernel", "--r", "0.5", "--theta", "0"],
    ["--tol", "step", "kernel", "--r", "0.5", "--theta", "0"],
    ["extend-disk", "--boundary", "nonsense", "--at", "0.5,0"],
    ["rkc-verify", "--boundary", "identity", "--grid", "12by48"],
    ["nosuchcommand"],
    [],
])
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == 1
    assert capsys.readouterr().err


def test_tol_override():
    # a demanding identity tolerance turns the suite into a failure
    code, out = run("--tol", "identity=1e-30", "tennisball", "--p", "5", "--identities")
    assert code == 2 and json.loads(out)["passed"] is False


def test_deterministic_bytes():
    a = subprocess.run([sys.executable, "-m", "harmext", "--seed", "3", "wood", "--check"],
                       capture_output=True, check=True).stdout
    b = subprocess.run([sys.executable, "-m", "harmext", "--seed", "3", "wood", "--check"],
                       capture_output=True, check=True).stdout
    assert a == b and a


def test_seed_changes_samples():
    assert run("--seed", "1", "wood", "--check")[1] != run("--seed", "2", "wood", "--check")[1]
