import json
import subprocess
import sys

import numpy as np
import pytest

from maxwellqm.cli import ConfigError, RunConfig, build_parser, main, run_checks
from maxwellqm.grid import load_array

BASE = {"grid": {"n": 16, "k_max": 4.0}, "experiment": "t"}


def _write(tmp_path, cfg):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(cfg))
    return path


def _cfg(tmp_path, **extra):
    raw = dict(BASE, output=str(tmp_path / "out"), **extra)
    return _write(tmp_path, raw)


@pytest.mark.parametrize("raw, match", [
    ({}, "grid"),
    ({"grid": {"n": 16}}, "k_max"),
    ({"grid": {"n": 16, "k_max": 4.0, "spacing": 1}}, "unknown grid"),
    ({"grid": {"n": 15, "k_max": 4.0}}, "invalid grid"),
    ({"grid": {"n": 16, "k_max": 4.0}, "colour": 1}, "unknown config"),
    ({"grid": {"n": 16, "k_max": 4.0}, "tolerances": {"parseval": 0}}, "positive"),
    ({"grid": {"n": 16, "k_max": 4.0}, "tolerances": {"nope": 1.0}}, "unknown tolerance"),
    ({"grid": {"n": 16, "k_max": 4.0}, "state": {"constructor": "cat"}}, "constructor"),
    ({"grid": {"n": 16, "k_max": 4.0},
      "state": {"constructor": "plane_wave", "params": {"k": 1}}}, "unknown parameters"),
    ({"grid": {"n": 16, "k_max": 4.0}, "constants": {"G": 1}}, "constants"),
])
def test_config_validation(raw, match):
    with pytest.raises(ConfigError, match=match):
        RunConfig.from_dict(raw)


def test_config_defaults():
    cfg = RunConfig.from_dict({"grid": {"n": 8, "k_max": 2.0}, "tolerances": {"oracle": 1e-9}})
    assert cfg.tolerance("oracle") == 1e-9 and cfg.tolerance("parseval") == 1e-10
    assert cfg.make_grid().offset and not cfg.make_grid(offset=False).offset
    assert cfg.make_state().normalizable


def test_config_state_constructors():
    g = {"n": 16, "k_max": 4.0}
    pk = RunConfig.from_dict({"grid": g, "state": {"constructor": "gaussian_packet",
                                                   "params": {"k0": [0, 0, 0.5], "s": 2.5}}})
    assert pk.make_state().coeffs
    loc = RunConfig.from_dict({"grid": g, "state": {"constructor": "localized_state",
                                                    "params": {"y": [0, 0, 0]}}})
    assert not loc.make_state().normalizable
    bad = RunConfig.from_dict({"grid": g, "state": {"constructor": "plane_wave", "params": {}}})
    with pytest.raises(ConfigError):
        bad.make_state()


def test_missing_file():
    with pytest.raises(ConfigError):
        RunConfig.load("/nonexistent/run.json")


def test_run_checks_all_pass():
    checks = run_checks(RunConfig.from_dict(BASE))
    failed = [c.name for c in checks if not c.passed]
    assert not failed
    assert len(checks) >= 15


def test_check_command(tmp_path, capsys):
    assert main(["check", "--config", str(_cfg(tmp_path))]) == 0
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert all(c["passed"] for c in report["checks"])


def test_check_failure_exit_code(tmp_path):
    # an impossible lower bound on the refinement ratio
    path = _cfg(tmp_path, tolerances={"eigen_ratio": 1e6})
    assert main(["check", "--config", str(path)]) == 1


@pytest.mark.parametrize("name, extra", [
    ("linear-wave", []), ("circular-wave", ["--lam", "-1"]),
    ("localized", ["--s", "0.05", "--ct", "0.5"]), ("hegerfeldt", ["--smoothing", "0.1"]),
])
def test_demos(tmp_path, name, extra):
    assert main(["demo", name, "--config", str(_cfg(tmp_path))] + extra) == 0
    manifests = list((tmp_path / "out").glob("*.json"))
    assert manifests
    for csv in (tmp_path / "out").glob("*.csv"):
        assert csv.read_text().count("\n") > 10


def test_linear_wave_demo_matches_cosine(tmp_path):
    main(["demo", "linear-wave", "--config", str(_cfg(tmp_path))])
    meta = json.loads(next((tmp_path / "out").glob("*.json")).read_text())
    assert meta["max_relative_deviation_from_cos"] < 1e-12


def test_evolve(tmp_path, capsys):
    path = _cfg(tmp_path)
    assert main(["evolve", "--config", str(path), "--tau", "0.1", "--dump-times", "0,0.35,1"]) == 0
    log = json.loads((tmp_path / "out" / "evolve.json").read_text())
    assert [r["t"] for r in log["dumps"]] == [0.0, 0.35, 1.0]
    assert max(r["drift"] for r in log["dumps"]) < 1e-12
    arr, meta = load_array(tmp_path / "out" / "t001_E.bin")
    assert arr.shape == (3, 16, 16, 16) and meta["t"] == 0.0
    assert "norm^2" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["demo", "nope"],
    ["evolve", "--tau=-0.1", "--dump-times", "1"],
    ["check"],
    ["evolve", "--tau", "0.1", "--dump-times", "a,b"],
])
def test_usage_errors_exit_2(tmp_path, argv):
    args = argv + (["--config", str(_cfg(tmp_path))] if argv != ["check"] else [])
    if argv == ["check"]:
        with pytest.raises(SystemExit) as info:
            main(args)
        assert info.value.code == 2
        return
    try:
        code = main(args)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_plane_wave_cannot_be_evolved(tmp_path):
    path = _cfg(tmp_path, state={"constructor": "plane_wave", "params": {"q": [0.25, 0.25, 0.75]}})
    assert main(["evolve", "--config", str(path), "--tau", "0.1", "--dump-times", "0"]) == 2


def test_bad_thread_variable(tmp_path, monkeypatch):
    monkeypatch.setenv("MAXWELLQM_THREADS", "zero")
    assert main(["check", "--config", str(_cfg(tmp_path))]) == 2


def test_parser_defaults():
    args = build_parser().parse_args(["demo", "hyperplane", "--config", "x"])
    assert args.rapidities == [0.0, 0.1, 0.2, 0.3] and args.resolution == 24


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "maxwellqm", "demo", "hegerfeldt",
                          "--config", str(_cfg(tmp_path))], capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert "hegerfeldt" in out.stdout
