import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from freefield.cli import cross_check, main, parse_generator
from freefield.affine import E, K, d

SCHEMA = json.loads(resources.files("freefield").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_verify_finite(capsys):
    code, rep = run_json(capsys, "verify-finite", "--m", "2", "--n", "2", "--degree-cap", "3")
    assert code == 0 and rep["violations"] == [] and rep["checked"] == 3072
    assert rep["runtime_ms"] is None and rep["signature"] == {"m": 2, "n": 2, "affine": False}


def test_apply_text(capsys):
    code, out, _ = run(capsys, "apply", "--m", "2", "--n", "1", "--gen", "e[1,2]", "--elem", "x2^2",
                       "--output", "text")
    assert code == 0 and out.strip() == "2*(mu - 1) * x2"


def test_apply_affine_and_specialized(capsys):
    code, rep = run_json(capsys, "apply", "--m", "2", "--n", "1", "--gen", "e[1,1](5)", "--elem", "x2(-3)")
    assert code == 0 and rep["result"] == "-1 * x2(2)" and rep["signature"]["affine"]
    code, out, _ = run(capsys, "apply", "--m", "2", "--n", "1", "--mu", "1", "--gen", "e[1,2]",
                       "--elem", "x2^2", "--output", "text")
    assert out.strip() == "0"


def test_reach_affine_mu_zero_is_usage_error(capsys):
    code, out, err = run(capsys, "reach-affine", "--m", "1", "--n", "1", "--mu", "0", "--start", "y1(0)")
    assert code == 2 and "mu-zero" in err and out == ""


def test_reach_exit_codes(capsys):
    code, rep = run_json(capsys, "reach-finite", "--m", "2", "--n", "1", "--mu", "1/2", "--start", "x2^2*y1")
    assert code == 0 and rep["certificate"]["reached"]
    code, rep = run_json(capsys, "reach-finite", "--m", "2", "--n", "1", "--mu", "2", "--start", "x2^3")
    assert code == 1 and not rep["certificate"]["reached"]
    code, rep = run_json(capsys, "reach-affine", "--m", "1", "--n", "2", "--mu", "1/2", "--start", "y1(2)")
    assert code == 0 and rep["certificate"]["certificate"] == [{"coeff": "2", "steps": ["e[1,2](-2)"]}]


@pytest.mark.parametrize("argv", [
    ["collisions", "--m", "2", "--n", "2", "--degree-cap", "3"],
    ["singular", "--m", "2", "--n", "1", "--mu", "2", "--degree-cap", "4"],
    ["singular", "--m", "2", "--n", "1", "--degree-cap", "3"],
    ["weights", "--m", "2", "--n", "1", "--degree-cap", "2"],
    ["weights", "--m", "1", "--n", "1", "--affine", "--degree-cap", "1", "--mode-window", "-1", "1"],
    ["vmu", "--m", "2", "--n", "1", "--mu", "2", "--elem", "x2*y1"],
    ["character", "--m", "2", "--n", "2", "--mu", "2", "--degree-cap", "4"],
    ["span-check", "--m", "2", "--n", "1", "--s", "2"],
    ["mu-zero", "--m", "1", "--n", "1", "--mode-window", "-1", "1", "--degree-cap", "2"],
    ["verify-affine", "--m", "1", "--n", "1", "--degree-cap", "1", "--mode-window", "-1", "1",
     "--bracket-mode-range", "-1", "1"],
    ["cross-check", "--m", "2", "--n", "1", "--count", "5", "--seed", "3"],
])
def test_reports_validate_and_are_deterministic(capsys, argv):
    code, first = run_json(capsys, *argv)
    assert code == 0 and first["ok"]
    _, out2, _ = run(capsys, *argv)
    assert json.dumps(first, sort_keys=True) == out2.strip()


def test_payload_values(capsys):
    _, rep = run_json(capsys, "collisions", "--m", "2", "--n", "2", "--degree-cap", "3")
    assert rep["basis"] == [["x2", "y1*y2"], ["x2^2", "x2*y1*y2"], ["x2^3", "x2^2*y1*y2"]]
    _, rep = run_json(capsys, "singular", "--m", "2", "--n", "1", "--mu", "2", "--degree-cap", "4")
    assert [b["vector"] for b in rep["basis"]] == ["1 * 1", "1 * x2^3"]
    _, rep = run_json(capsys, "vmu", "--m", "2", "--n", "1", "--mu", "2", "--elem", "x2*y1")
    assert rep["result"] == {"generator": "x2^3", "element": "x2*y1", "contains": False}


@pytest.mark.parametrize("argv", [
    ["apply", "--m", "2", "--n", "1", "--gen", "e[1,4]", "--elem", "x2"],
    ["apply", "--m", "2", "--n", "1", "--gen", "e[1,2]", "--elem", "x3"],
    ["apply", "--m", "2", "--n", "1", "--mu", "0.5", "--gen", "e[1,2]", "--elem", "x2"],
    ["vmu", "--m", "2", "--n", "1", "--mu", "1/2"],
    ["reach-affine", "--m", "1", "--n", "1", "--mu", "1", "--start", "y1(5)"],
    ["verify-finite", "--m", "0", "--n", "1"],
    ["verify-affine", "--m", "1", "--n", "1", "--mode-window", "1", "2"],
    ["span-check", "--m", "1", "--n", "2", "--s", "3"],
    ["nonsense"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_timing_flag(capsys):
    _, rep = run_json(capsys, "collisions", "--m", "2", "--n", "1", "--degree-cap", "1", "--timing")
    assert isinstance(rep["runtime_ms"], float)


def test_parse_generator():
    assert parse_generator("e[1,2]") == (1, 2)
    assert parse_generator("e[3,1](-2)") == E(3, 1, -2)
    assert parse_generator("K") == K and parse_generator("d") == d
    with pytest.raises(ValueError):
        parse_generator("f[1,2]")


def test_cross_check_seeded():
    assert cross_check(2, 2, 10, seed=1) == []


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "freefield", "apply", "--m", "2", "--n", "1",
                          "--gen", "e[1,2]", "--elem", "x2^2", "--output", "text"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "2*(mu - 1) * x2"
