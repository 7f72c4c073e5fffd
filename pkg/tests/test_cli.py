import json
import subprocess
import sys

import pytest

from orbitnf.cli import EXIT_CHECK, EXIT_INPUT, EXIT_OK, InputError, RunConfig, main, parse_spectrum

WORKED = ["--lambda", "6,6,5,3,3,2,1,0", "--mu", "6,5,4,3,3,1,1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_worked(capsys):
    code, out, _ = run(capsys, "analyze", *WORKED)
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["shapes"] == {"W": ["6", "2", "0"], "M": ["4", "1"], "P": ["5", "3"]}
    assert rep["normal_form"]["W"] == "{0} + C + {0} + C^2 + {0}"
    assert rep["normal_form"]["dimensions"] == {"dim_orbit": 52, "dim_KmodL": 42, "dim_mstar": 4, "dim_W": 6}
    assert all(c["passed"] for c in rep["selfchecks"])
    assert rep["status"] == "pass"


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", *WORKED, "--format", "text")
    assert code == EXIT_OK
    assert "W-shapes: 6, 2, 0" in out
    assert "dim orbit 52 = 42 + 4 + 6" in out


def test_verify_pass_and_reproducible(capsys):
    code1, out1, _ = run(capsys, "verify", *WORKED, "--seed", "42")
    code2, out2, _ = run(capsys, "verify", *WORKED, "--seed", "42")
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    assert "runtime_s" not in out1
    names = [c["name"] for c in json.loads(out1)["checks"]]
    assert names == ["spectrum", "slice_dims", "symplectic_form", "isotropy", "sampled_points"]


def test_verify_timings(capsys):
    code, out, _ = run(capsys, "verify", *WORKED, "--timings", "--samples", "2")
    assert code == EXIT_OK
    assert all("runtime_s" in c for c in json.loads(out)["checks"])


def test_verify_strict_tolerance_fails(capsys):
    code, out, _ = run(capsys, "verify", *WORKED, "--tol", "1e-16")
    assert code == EXIT_CHECK
    assert json.loads(out)["status"] == "fail"


def test_verify_zero_samples_and_skip(capsys):
    code, out, _ = run(capsys, "verify", "--lambda", "2,1,0", "--mu", "3/2,1/2", "--samples", "0")
    assert code == EXIT_OK
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert "sampled_points" not in checks
    assert checks["symplectic_form"]["status"] == "skipped"


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--lambda", "1,0", "--mu", "1,0"],
        ["analyze", "--lambda", "1,0", "--mu", "2"],
        ["analyze", "--lambda", "1,x", "--mu", "0"],
        ["analyze", "--lambda", "1/0,0", "--mu", "0"],
        ["analyze", "--lambda", "1,0"],
        ["verify", *WORKED, "--samples", "-1"],
        ["verify", *WORKED, "--tol", "0"],
        ["faces", "--lambda", ",".join(str(k) for k in range(13, -1, -1))],
    ],
)
def test_input_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert out == "" and err.startswith("error:")


def test_input_file(capsys, tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps({"lambda": ["6", 6, 5, 3, 3, 2, 1, 0], "mu": [6, 5, 4, 3, 3, 1, 1]}))
    code, out, _ = run(capsys, "analyze", "--input", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["shapes"]["P"] == ["5", "3"]
    path.write_text("{not json")
    assert run(capsys, "analyze", "--input", str(path))[0] == EXIT_INPUT
    assert run(capsys, "analyze", "--input", str(tmp_path / "missing.json"))[0] == EXIT_INPUT


def test_faces(capsys):
    code, out, _ = run(capsys, "faces", "--lambda", "2,1,0", "--no-invariants")
    assert code == EXIT_OK
    lat = json.loads(out)["lattice"]
    assert lat["f_vector"] == [4, 4, 1]
    code, out, _ = run(capsys, "faces", "--lambda", "2,1,0", "--format", "text")
    assert "f-vector: (4, 4, 1)" in out


def test_parse_and_config():
    assert parse_spectrum("1, 3/2 ,-2") == (1, 1.5, -2)
    with pytest.raises(InputError):
        parse_spectrum(" , ")
    with pytest.raises(InputError):
        RunConfig("verify", None, None, seed=-1)


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "orbitnf", "analyze", "--lambda", "1,0", "--mu", "1"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["shapes"]["P"] == ["1"]
