# tests/test_cli.py
import json

import pandas as pd
import pytest

from gi.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_SCHEMA, PIPELINES, list_pipelines, main, run
from gi.errors import InsufficientGridError, SchemaError

DK4 = {"family": "DkSymmetric", "m": 1.0, "centers": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]}
AK2 = {"family": "Ak", "m": 1.0, "centers": [[1.0, 0.0, 0.0], [-0.5, 0.8, 0.1], [0.2, -0.3, 1.2]]}
DK3_PARAMS = [[1.0, 1.0, 0.5], [-0.25, 2.0, 1.0], [0.5, -0.5, -1.0]]


def _write(tmp_path, payload, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def _main(tmp_path, command, payload=None, *extra):
    out = tmp_path / f"{command}.json"
    argv = [command, "--out", str(out), *extra]
    if payload is not None:
        argv += ["--config", str(_write(tmp_path, payload))]
    code = main(argv)
    report = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
    return code, report


def test_alg_delta_default_table(tmp_path):
    code, report = _main(tmp_path, "alg-delta")
    assert code == EXIT_OK
    assert report["results"]["deltas"] == ["1", "2", "2", "4/5", "2", "2/3", "2", "1/2"]
    assert report["passed"] is True
    assert "wall_time_s" not in report


def test_alg_delta_wrong_expectation(tmp_path):
    code, report = _main(tmp_path, "alg-delta", {"inputs": {"betas": ["1/2"], "expected": ["1"]}})
    assert code == EXIT_CHECK_FAILED
    failed = [c["name"] for c in report["checks"] if not c["passed"]]
    assert failed == ["expected_deltas"]


def test_kodaira_generated_dcase3(tmp_path):
    code, report = _main(tmp_path, "kodaira-classify", {"inputs": {"generate": {"type": "DCase3", "m": 1}}})
    assert code == EXIT_OK
    assert report["results"]["classification"] == {"type": "DCase3", "m": 1}


def test_kodaira_invalid_config_fails_checks(tmp_path):
    payload = {"inputs": {"n": [1, 1], "S": [[-1, 1], [1, -2]], "a": [1, 1]}}
    code, report = _main(tmp_path, "kodaira-classify", payload)
    assert code == EXIT_CHECK_FAILED
    assert report["results"]["classification"]["type"] == "Invalid"


def test_malformed_json_exits_with_schema_code(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    assert main(["alg-delta", "--config", str(path)]) == EXIT_SCHEMA


@pytest.mark.parametrize(
    "payload",
    [
        {"tolerances": {"nonsense": 1e-3}},
        {"schema_version": 99},
        {"command": "torelli"},
        {"seed": -1},
        {"unknown_key": 1},
    ],
)
def test_schema_violations(tmp_path, payload):
    code, report = _main(tmp_path, "alg-delta", payload)
    assert code == EXIT_SCHEMA
    assert report is None


@pytest.mark.parametrize(
    "command, inputs",
    [
        ("alg-delta", {"betas": ["abc"]}),
        ("alg-delta", {"betas": [[1, 0]]}),
        ("kodaira-classify", {"generate": {"type": "AChain", "m": "x"}}),
        ("kodaira-classify", {"n": [1], "S": [[0]], "a": [2], "expected": {"m": 1}}),
        ("decay-fit", {"csv": "/nonexistent/samples.csv"}),
        ("twistor-check", {"family": "Ak", "params": [[1, 0, 0], [0, 1, 0]], "zeta_range": [2, 1]}),
        ("twistor-check", {"family": "Dk", "params": DK3_PARAMS, "transition_zeta_range": [2, 2]}),
    ],
)
def test_bad_inputs_exit_with_schema_code(tmp_path, capsys, command, inputs):
    code, report = _main(tmp_path, command, {"inputs": inputs})
    assert code == EXIT_SCHEMA
    assert report is None
    assert f"gi {command}:" in capsys.readouterr().err


def test_nonpositive_tol_flag(tmp_path):
    code, _ = _main(tmp_path, "alg-delta", None, "--tol", "0")
    assert code == EXIT_SCHEMA


def test_list(capsys):
    assert main(["list"]) == EXIT_OK
    printed = capsys.readouterr().out
    for name in PIPELINES:
        assert name in printed
    assert set(list_pipelines()) == set(PIPELINES)


def test_decay_fit_dumps_samples(tmp_path):
    csv = tmp_path / "samples.csv"
    payload = {"seed": 7, "window": {"n_radii": 32, "n_directions": 4}, "inputs": {**DK4, "expected_exponent": 3.0}}
    code, report = _main(tmp_path, "decay-fit", payload, "--dump-samples", str(csv))
    assert code == EXIT_OK
    frame = pd.read_csv(csv)
    assert list(frame.columns) == ["r", "value"]
    assert len(frame) == report["results"]["n_samples"] == 32


def test_decay_fit_from_csv(tmp_path):
    csv = tmp_path / "in.csv"
    r = [10.0**(i / 4) for i in range(13)]
    pd.DataFrame({"r": r, "value": [x**-2.5 for x in r]}).to_csv(csv, sep=";", index=False)
    code, report = _main(tmp_path, "decay-fit", {"inputs": {"csv": str(csv), "expected_exponent": 2.5}})
    assert code == EXIT_OK
    assert report["results"]["exponent"] == pytest.approx(2.5, abs=1e-9)


@pytest.mark.parametrize(
    "command, inputs",
    [
        ("decay-fit", DK4),
        ("gh-verify", {**AK2, "n_points": 4}),
        ("expansion-check", AK2),
        ("twistor-check", {"family": "Dk", "params": DK3_PARAMS, "n_points": 4}),
        ("period-integral", AK2),
    ],
)
def test_report_does_not_depend_on_threads(tmp_path, command, inputs):
    payload = {"seed": 11, "window": {"n_radii": 16, "n_directions": 8}, "inputs": inputs}
    config = _write(tmp_path, payload)
    one, many = tmp_path / "one.json", tmp_path / "many.json"
    main([command, "--config", str(config), "--threads", "1", "--out", str(one)])
    main([command, "--config", str(config), "--threads", "8", "--out", str(many)])
    assert one.read_bytes() == many.read_bytes()


def test_seed_flag_changes_echo(tmp_path):
    code, report = _main(tmp_path, "torelli", {"inputs": {"family": "Dk", "params": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}}, "--seed", "5")
    assert code == EXIT_OK
    assert report["inputs"]["seed"] == 5
    assert report["results"]["n_roots"] == 12


def test_with_timing(tmp_path):
    _, report = _main(tmp_path, "alg-delta", None, "--with-timing")
    assert report["wall_time_s"] >= 0.0


def test_tol_flag_overrides_tolerances(tmp_path):
    _, report = _main(tmp_path, "alh-delta", {"inputs": {"basis": [[1, 0, 0], [0, 2, 0], [0, 0, 3]]}}, "--tol", "1e-3")
    tolerances = report["inputs"]["tolerances"]
    assert tolerances["gram"] == 1e-3
    assert tolerances["order_ratio"] == 0.1


def test_expansion_check_without_remainder(tmp_path):
    payload = {"inputs": {"family": "Ak", "m": 1.0, "centers": [[0, 0, 0]]}}
    with pytest.raises(InsufficientGridError):
        run("expansion-check", payload)
    assert _main(tmp_path, "expansion-check", payload)[0] == EXIT_SCHEMA


def test_unknown_command():
    with pytest.raises(SchemaError):
        run("nope", {})


def test_gh_verify_pointwise_checks(tmp_path):
    payload = {"seed": 3, "inputs": {**AK2, "n_points": 4}}
    _, report = _main(tmp_path, "gh-verify", payload)
    checks = {c["name"]: c for c in report["checks"]}
    for name in ("gram_identity", "volume_equals_potential", "metric_reconstruction", "flux_pole_0", "chart_overlap_pole_2"):
        assert checks[name]["passed"], name
    assert {"closedness_order_w1", "monopole_equation_order", "harmonic_order"} <= set(checks)


def test_twistor_dk_with_golden(tmp_path):
    payload = {
        "inputs": {
            "family": "Dk",
            "params": DK3_PARAMS,
            "n_points": 8,
            "golden": {"zeta": "2", "z0": "1/2", "rho0": "1", "rho1": "1/3"},
        }
    }
    code, report = _main(tmp_path, "twistor-check", payload)
    assert code == EXIT_OK, [c for c in report["checks"] if not c["passed"]]
    assert "quadric_exact" in {c["name"] for c in report["checks"]}


def test_period_integral(tmp_path):
    code, report = _main(tmp_path, "period-integral", {"inputs": AK2})
    assert code == EXIT_OK
    assert report["results"]["constant"]["im"] == pytest.approx(-8 * 3.141592653589793, rel=1e-10)
