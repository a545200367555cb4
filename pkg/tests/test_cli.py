import io
import json

import pytest

from wilson_daha.cli import ConfigError, parse_weights, read_config_file, run_command


def run(argv):
    buf = io.StringIO()
    code = run_command(argv, stdout=buf)
    return code, json.loads(buf.getvalue())


PARAM_FLAGS = ["--t0", "7/10", "--u0", "3/10", "--t", "1/2", "--tn", "4/5", "--un", "2/5"]


def test_parse_weights():
    assert parse_weights("-1,0") == [(-1, 0)]
    assert parse_weights("1,0; 0,-1") == [(1, 0), (0, -1)]
    with pytest.raises(ConfigError):
        parse_weights("1,x")


def test_compute_eval_matches_product():
    code, out = run(["compute", "--lambda", "-1,0;1,1"] + PARAM_FLAGS)
    assert code == 0
    rec = out["records"][0]
    assert rec["eval"] == rec["eval_product"] == "-416/25"
    assert rec["gamma"] == ["-3", "3/2"]
    assert out["records"][1]["lambda"] == [1, 1]


def test_compute_needs_lambda():
    code, out = run(["compute"])
    assert code == 2 and out["key"] == "lambda"


def test_compute_symmetric():
    code, out = run(["compute-symmetric", "--lambda", "1,0"])
    assert code == 0
    assert out["records"][0]["E_plus"]
    code, out = run(["compute-symmetric", "--lambda", "0,1"])
    assert code == 2 and out["key"] == "lambda"


def test_spectrum():
    code, out = run(["spectrum", "--range", "1"])
    assert code == 0
    assert len(out["spectrum"]) == 5
    zero = out["spectrum"][0]
    assert zero["lambda"] == [0, 0] and zero["eval"] == "1" and zero["rel_norm"] == "1"


def test_verify_passes():
    code, out = run(["verify", "--suite", "eigen,evaluation,norms", "--lambda-sum", "2"])
    assert code == 0 and out["pass"]
    assert set(out["suites"]) == {"eigen", "evaluation", "norms"}


def test_verify_unknown_suite():
    code, out = run(["verify", "--suite", "bogus"])
    assert code == 2 and out["key"] == "suite"


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("t0 = 7/10\nu0 = 3/10  # comment\nt = 1/2\ntn = 4/5\nun = 2/5\nn = 2\nsuite = evaluation\nlambda_sum = 2\n")
    assert read_config_file(str(cfg))["u0"] == "3/10"
    code, out = run(["verify", "--config", str(cfg)])
    assert code == 0 and out["params"]["u0"] == "3/10"


def test_config_missing_parameter_named(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("t0 = 7/10\nu0 = 3/10\nt = 1/2\ntn = 4/5\n")
    code, out = run(["verify", "--config", str(cfg), "--suite", "eigen"])
    assert code == 2 and out["key"] == "un"


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = blue\n")
    code, out = run(["verify", "--config", str(cfg), "--suite", "eigen"])
    assert code == 2 and out["key"] == "colour"


def test_bad_rational():
    code, out = run(["verify", "--suite", "eigen", "--t", "0.5"])
    assert code == 2 and out["key"] == "t"


def test_t_zero_exact_ok_numeric_rejected():
    code, out = run(["verify", "--suite", "evaluation", "--t", "0"])
    assert code == 0
    code, out = run(["quadrature", "--suite", "constant", "--t", "0"])
    assert code == 2 and out["key"] == "t"


def test_pole_is_reported():
    code, out = run(["verify", "--suite", "duality", "--t", "0"])
    assert code == 2 and "error" in out


def test_quadrature_constant():
    code, out = run(["quadrature", "--suite", "constant"])
    assert code == 0 and out["suites"]["constant"]["pass"]


def test_output_file_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["verify", "--suite", "evaluation,norms", "--lambda-sum", "2"]
    assert run_command(argv + ["--output", str(a)], stdout=io.StringIO()) == 0
    assert run_command(argv + ["--output", str(b)], stdout=io.StringIO()) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["pass"] is True
