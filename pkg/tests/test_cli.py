import json
import math
import xml.etree.ElementTree as ET

import pytest

from pmlab import cli, matching
from pmlab.graphs import Matching


def run(args):
    return cli.main(args)


def test_simulate_writes_one_row(tmp_path, capsys):
    out = tmp_path / "r.csv"
    code = run(
        [
            "simulate", "--n", "100", "--d", "2", "--pos", "gaussian", "--noise",
            "gaussian", "--sigma2", "1e-4", "--trials", "50", "--estimator", "lss",
            "--seed", "42", "--out", str(out), "--no-timing",
        ]
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 2
    assert lines[0].startswith("experiment,position,noise")


def test_simulate_byte_identical_across_runs_and_parallelism(tmp_path):
    outs = []
    for name, par in (("a.csv", "1"), ("b.csv", "1"), ("c.csv", "8")):
        path = tmp_path / name
        code = run(
            [
                "simulate", "--n", "60", "--d", "2", "--pos", "gaussian", "--noise",
                "gaussian", "--sigma2", "1e-4,1e-3", "--trials", "40",
                "--estimator", "lss", "--estimator", "greedy-distance",
                "--seed", "7", "--out", str(path), "--no-timing",
                "--parallelism", par,
            ]
        )
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_simulate_zero_noise(tmp_path):
    out = tmp_path / "z.csv"
    assert run(
        [
            "simulate", "--n", "30", "--d", "2", "--sigma2", "0", "--trials", "20",
            "--seed", "1", "--out", str(out), "--no-timing",
        ]
    ) == 0
    row = out.read_text().strip().split("\n")[1].split(",")
    assert float(row[9]) == 0.0  # mean_error_rate


def test_unknown_flag_is_usage_error(tmp_path):
    assert run(["simulate", "--n", "10", "--bogus", "1"]) == 2
    assert run(["nonsense-command"]) == 2


def test_invalid_values_are_usage_errors(tmp_path):
    out = tmp_path / "x.csv"
    code = run(
        [
            "simulate", "--n", "10", "--d", "2", "--sigma2", "1e-3,1e-4",
            "--trials", "5", "--seed", "1", "--out", str(out),
        ]
    )
    assert code == 2  # grid not increasing


def test_io_failure_exit_code(tmp_path):
    code = run(
        [
            "simulate", "--n", "10", "--d", "2", "--sigma2", "1e-4", "--trials", "2",
            "--seed", "1", "--out", str(tmp_path / "missing_dir" / "r.csv"),
        ]
    )
    assert code == 3


def test_bounds_log_regime(capsys):
    assert run(["bounds", "log-regime", "--a", "1", "--sigma2", "1"]) == 0
    lines = [json.loads(line) for line in capsys.readouterr().out.strip().split("\n")]
    by_name = {doc["name"]: doc["value"] for doc in lines}
    assert by_name["log-regime-alpha"] == pytest.approx(2 - 0.5 * math.log(2), abs=1e-9)
    assert by_name["log-regime-gamma-star"] == pytest.approx(1.0)


def test_bounds_snr(capsys):
    assert run(["bounds", "snr", "--sigma-x", "1,1", "--sigma-z", "1,4", "--n", "2.718281828459045"]) == 0
    lines = [json.loads(line) for line in capsys.readouterr().out.strip().split("\n")]
    by_name = {doc["name"]: doc["value"] for doc in lines}
    assert by_name["snr-lss"] == pytest.approx(0.8, abs=1e-9)
    assert by_name["snr-lssc"] == pytest.approx(1.25, abs=1e-9)


def test_bounds_minimax_domain_error():
    assert run(["bounds", "minimax", "--n", "2", "--d", "2", "--sigma", "0.1"]) == 2


def test_figure_error_rate_outputs(tmp_path):
    csv_path = tmp_path / "er.csv"
    svg_path = tmp_path / "er.svg"
    code = run(
        [
            "figure-error-rate", "--d", "2", "--n", "50", "--trials", "40",
            "--grid", "1e-4,1e-3", "--seed", "5", "--out-csv", str(csv_path),
            "--out-svg", str(svg_path), "--no-timing", "--parallelism", "4",
        ]
    )
    assert code == 0
    lines = csv_path.read_text().strip().split("\n")
    assert len(lines) == 1 + 4 * 2  # four noise families x two grid points
    families = {line.split(",")[2] for line in lines[1:]}
    assert families == {"gaussian", "sphere", "uniform", "rademacher"}
    root = ET.parse(svg_path).getroot()
    assert root.tag.endswith("svg")
    text = svg_path.read_text()
    assert "Gaussian prediction" in text


def test_figure_error_rate_gaussian_rows_track_prediction(tmp_path):
    csv_path = tmp_path / "erp.csv"
    code = run(
        [
            "figure-error-rate", "--d", "2", "--n", "100", "--trials", "1000",
            "--grid", "1e-4,1e-3", "--seed", "17", "--out-csv", str(csv_path),
            "--out-svg", str(tmp_path / "erp.svg"), "--no-timing",
        ]
    )
    assert code == 0
    header, *rows = csv_path.read_text().strip().split("\n")
    cols = header.split(",")
    idx = {name: k for k, name in enumerate(cols)}
    for line in rows:
        f = line.split(",")
        if f[idx["noise"]] != "gaussian":
            continue
        rate = float(f[idx["mean_error_rate"]])
        pred = float(f[idx["theory_value"]])
        se = float(f[idx["std_error"]])
        assert abs(rate - pred) <= 3 * se, line


def test_figure_error_rate_d3_prediction_uses_cubed_sigma(tmp_path):
    csv_path = tmp_path / "er3.csv"
    code = run(
        [
            "figure-error-rate", "--d", "3", "--n", "30", "--trials", "10",
            "--grid", "1e-3", "--seed", "5", "--out-csv", str(csv_path),
            "--out-svg", str(tmp_path / "er3.svg"), "--no-timing",
        ]
    )
    assert code == 0
    row = csv_path.read_text().strip().split("\n")[1].split(",")
    tau3 = 2 / (3 * math.pi)
    assert float(row[12]) == pytest.approx(tau3 * 30 * (1e-3) ** 1.5, rel=1e-9)


def test_figure_rgg_outputs(tmp_path, capsys):
    svg = tmp_path / "rgg.svg"
    js = tmp_path / "rgg.json"
    code = run(
        [
            "figure-rgg", "--n", "200", "--sigma2", "1e-4", "--seed", "3",
            "--out-svg", str(svg), "--out-json", str(js),
        ]
    )
    assert code == 0
    doc = json.loads(js.read_text())
    assert doc["bound_holds"] is True
    ET.parse(svg)


def test_recovery_command(tmp_path, capsys):
    out = tmp_path / "rec.csv"
    code = run(
        [
            "recovery", "--d", "64", "--n", "30", "--sigma-z2", "0.5",
            "--trials", "20", "--seed", "2", "--out", str(out), "--no-timing",
        ]
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 3  # lss and lssc rows
    printed = [json.loads(line) for line in capsys.readouterr().out.strip().split("\n")]
    assert {doc["estimator"] for doc in printed} == {"lss", "lssc"}


def test_rgg_sweep_command(tmp_path):
    out = tmp_path / "sweep.csv"
    code = run(
        [
            "rgg-sweep", "--n", "50", "--d", "2", "--r-grid", "0.1,0.5",
            "--trials", "20", "--seed", "4", "--out", str(out), "--no-timing",
        ]
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 1 + 2 * 2  # matching and edges series per radius


def test_verify_passes_and_quick_mode(capsys):
    assert run(["verify", "--quick"]) == 0
    table = capsys.readouterr().out
    for suite in ("lap-vs-brute", "matching-vs-brute", "gaug-bound", "tau-consistency"):
        assert suite in table
    assert "FAIL" not in table


def test_verify_detects_corrupted_matcher(monkeypatch, capsys):
    monkeypatch.setattr(matching, "max_matching", lambda g: Matching.empty())
    assert run(["verify", "--quick"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_parallelism_env_default(monkeypatch):
    monkeypatch.setenv("PMLAB_THREADS", "6")
    args = cli.build_parser().parse_args(
        ["simulate", "--n", "5", "--sigma2", "1e-4", "--out", "x.csv"]
    )
    assert args.parallelism == 6
    monkeypatch.setenv("PMLAB_THREADS", "not-a-number")
    args = cli.build_parser().parse_args(
        ["simulate", "--n", "5", "--sigma2", "1e-4", "--out", "x.csv"]
    )
    assert args.parallelism == 1
