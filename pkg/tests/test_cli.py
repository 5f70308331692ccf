import csv
import io
import json

import pytest

from src.main import main

ONE_WAY = {
    "n_channels": 8,
    "lambda_a": 1.0,
    "lambda_b": 1.0,
    "lambda_c": 3.0,
    "tx_power_db": 10.0,
    "jam_budget_db": 20.0,
    "outage_target": 0.05,
}
TWO_WAY = {**ONE_WAY, "lambda_a": 5.0, "lambda_b": 1.0, "lambda_c": 4.0}
TWO_CHANNEL = {**ONE_WAY, "n_channels": 2, "lambda_b": 3.0}


def _header(output: str) -> dict:
    lines = [line[2:] for line in output.splitlines() if line.startswith("# ")]
    return dict(line.split("=", 1) for line in lines)


def _rows(output: str) -> list:
    body = "\n".join(line for line in output.splitlines() if not line.startswith("#"))
    return list(csv.DictReader(io.StringIO(body)))


def test_optimize_reports_best_count(scenario_file, capsys):
    assert main(["optimize", "--scenario", scenario_file(ONE_WAY)]) == 0
    output = capsys.readouterr().out
    header = _header(output)
    assert header["command"] == "optimize"
    assert header["n_star"] == "5"
    assert header["chosen_scheme"] == "jamming"
    rows = _rows(output)
    assert [row["n"] for row in rows] == [str(n) for n in range(8)]


def test_optimize_with_budget_override(scenario_file, capsys):
    assert main(["optimize", "--scenario", scenario_file(ONE_WAY), "--qmax-db=-10"]) == 0
    header = _header(capsys.readouterr().out)
    assert header["chosen_scheme"] == "passive"
    assert header["n_star"] == "0"
    assert float(header["jam_budget_db"]) == pytest.approx(-10.0)


def test_optimize_near_tie_budget(scenario_file, capsys):
    assert main(["optimize", "--scenario", scenario_file(ONE_WAY), "--qmax-db", "4"]) == 0
    header = _header(capsys.readouterr().out)
    assert header["chosen_scheme"] == "jamming"
    assert header["n_star"] == "1"
    assert abs(float(header["phi_star"]) - float(header["phi_passive"])) < 2e-4
    assert header["jam_budget_db"] == "4"


def test_twoway_reports_benchmarks(scenario_file, capsys):
    assert main(["twoway", "--scenario", scenario_file(TWO_WAY)]) == 0
    header = _header(capsys.readouterr().out)
    assert header["n_star_ab"] == "2"
    assert header["n_star_ba"] == "6"
    assert header["n_star"] == "5"


def test_eval_passive_only(scenario_file, capsys):
    assert main(["eval", "--scenario", scenario_file(ONE_WAY), "--n", "0"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 1
    assert rows[0]["scheme"] == "passive"
    assert float(rows[0]["rho"]) == 0.0


def test_eval_json_output(scenario_file, capsys):
    assert main(["eval", "--scenario", scenario_file(ONE_WAY), "--n", "5", "--format", "json"]) == 0
    lines = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert lines[0]["header"]["command"] == "eval"
    assert [line["scheme"] for line in lines[1:]] == ["passive", "jamming"]
    assert lines[2]["phi"] > lines[1]["phi"]


def test_eval_rejects_out_of_range_count(scenario_file, capsys):
    assert main(["eval", "--scenario", scenario_file(ONE_WAY), "--n", "8"]) == 1
    assert "エラー" in capsys.readouterr().err


def test_output_file(scenario_file, tmp_path, capsys):
    out = tmp_path / "result.csv"
    assert main(["threshold", "--scenario", scenario_file(TWO_CHANNEL), "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    rows = _rows(out.read_text(encoding="utf-8"))
    assert float(rows[0]["q_threshold"]) > 0


def test_threshold_requires_two_channels(scenario_file):
    assert main(["threshold", "--scenario", scenario_file(ONE_WAY)]) == 1


def test_regimes(scenario_file, capsys):
    assert main(["regimes", "--scenario", scenario_file(TWO_WAY)]) == 0
    row = _rows(capsys.readouterr().out)[0]
    assert float(row["q_lower"]) == min(float(row["q_lower_ab"]), float(row["q_lower_ba"]))


def test_usage_errors(scenario_file):
    assert main(["optimize", "--scenario", scenario_file(ONE_WAY), "--bogus"]) == 1
    assert main([]) == 1
    assert main(["--workers", "0", "optimize", "--scenario", scenario_file(ONE_WAY)]) == 1


def test_scenario_errors(scenario_file, tmp_path):
    missing_power = {key: value for key, value in ONE_WAY.items() if key != "tx_power_db"}
    assert main(["optimize", "--scenario", scenario_file(missing_power)]) == 1
    assert main(["optimize", "--scenario", scenario_file({**ONE_WAY, "colour": "red"})]) == 1
    assert main(["optimize", "--scenario", str(tmp_path / "missing.json")]) == 1
    assert main(["optimize", "--scenario", scenario_file(ONE_WAY), "--delta", "1.5"]) == 1


def test_version(capsys):
    assert main(["--version"]) == 0
    assert "eavesdrop" in capsys.readouterr().out


def test_sweep_preset(tmp_path, capsys):
    svg = tmp_path / "profile.svg"
    assert main(["sweep", "--preset", "profile", "--svg", str(svg)]) == 0
    output = capsys.readouterr().out
    assert _header(output)["preset"] == "profile"
    rows = _rows(output)
    assert len(rows) == 8
    assert all(row["n_star"] == "5" for row in rows)
    assert svg.read_text(encoding="utf-8").startswith("<svg")


def test_sweep_requires_kind_or_preset():
    assert main(["sweep"]) == 1


def test_validate(scenario_file, capsys):
    code = main(["validate", "--scenario", scenario_file(TWO_CHANNEL), "--samples", "20000", "--seed", "5"])
    assert code == 0
    output = capsys.readouterr().out
    header = _header(output)
    assert header["samples"] == "20000"
    assert header["seed"] == "5"
    assert len(_rows(output)) == 3 * 2


def test_validate_rejects_small_sample_count(scenario_file):
    assert main(["validate", "--scenario", scenario_file(TWO_CHANNEL), "--samples", "100"]) == 1


@pytest.mark.parametrize("command", ["optimize", "twoway", "eval"])
def test_scenario_is_required(command):
    assert main([command] if command != "eval" else [command, "--n", "1"]) == 1
