import json
import math

import numpy as np
import pytest

from pmlab.estimators import EstimatorKind
from pmlab.experiments import (
    CSV_HEADER,
    ExperimentConfig,
    run_experiment,
    run_recovery_sweep,
    run_rgg_sweep,
    rows_to_csv,
    rows_to_json,
)
from pmlab.model import NoiseSpec, NormKind, PositionSpec

GAUSS2 = PositionSpec.gaussian(2)


def _config(**overrides):
    base = dict(
        position=GAUSS2,
        noise=NoiseSpec.gaussian(2, 1.0),
        n=40,
        sigma2_grid=(1e-4,),
        trials=50,
        estimators=(EstimatorKind.lss(),),
        master_seed=99,
        parallelism=1,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def test_zero_noise_grid_point_gives_zero_error():
    rows = run_experiment(_config(sigma2_grid=(0.0,), estimators=(
        EstimatorKind.lss(),
        EstimatorKind.greedy_distance(),
    )))
    for row in rows:
        assert row.mean_hamming == 0.0
        assert row.perfect_recovery_fraction == 1.0


def test_parallelism_does_not_change_aggregates():
    rows1 = run_experiment(_config(parallelism=1, trials=60))
    rows8 = run_experiment(_config(parallelism=8, trials=60))
    assert rows_to_csv(rows1, include_timing=False) == rows_to_csv(rows8, include_timing=False)


def test_rerun_is_identical():
    a = rows_to_csv(run_experiment(_config()), include_timing=False)
    b = rows_to_csv(run_experiment(_config()), include_timing=False)
    assert a == b


def test_grid_must_increase():
    with pytest.raises(ValueError):
        _config(sigma2_grid=(1e-3, 1e-4))
    with pytest.raises(ValueError):
        _config(sigma2_grid=())


def test_mean_is_exact_integer_ratio():
    rows = run_experiment(_config(trials=30))
    row = rows[0]
    assert row.mean_hamming == row.sum_hamming / 30
    assert row.mean_error_rate == row.mean_hamming / row.n


def test_error_rate_trend_increases_with_noise():
    grid = (1e-5, 1e-4, 1e-3, 1e-2)
    rows = run_experiment(_config(sigma2_grid=grid, trials=300, n=60, parallelism=4))
    rates = [row.mean_error_rate for row in rows]
    # Spearman rank correlation between grid order and rate order
    order = np.argsort(rates)
    ranks = np.empty(len(grid))
    ranks[order] = np.arange(len(grid))
    grid_ranks = np.arange(len(grid))
    rho = np.corrcoef(grid_ranks, ranks)[0, 1]
    assert rho > 0


def test_theory_hook_fills_column():
    rows = run_experiment(
        _config(), theory_fn=lambda s2, kind: 123.5 if kind.name == "lss" else None
    )
    assert rows[0].theory_value == 123.5


def test_csv_schema_and_float_round_trip():
    rows = run_experiment(_config(trials=20))
    text = rows_to_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == CSV_HEADER
    fields = lines[1].split(",")
    assert len(fields) == len(CSV_HEADER.split(","))
    # shortest-repr floats parse back exactly
    assert float(fields[9]) == rows[0].mean_error_rate
    doc = json.loads(rows_to_json(rows))
    assert doc[0]["mean_error_rate"] == rows[0].mean_error_rate
    assert doc[0]["sigma2"] == 1e-4


def test_timing_suppression():
    rows = run_experiment(_config(trials=5))
    text = rows_to_csv(rows, include_timing=False)
    assert text.strip().split("\n")[1].endswith(",")


def test_recovery_degenerate_noiseless_case():
    rows = run_recovery_sweep(
        PositionSpec.diagonal_gaussian((1.0,) * 12),
        NoiseSpec.diagonal_subgaussian((0.0,) * 12, sigma=1.0),
        n=20,
        trials=20,
        master_seed=3,
        estimators=(EstimatorKind.lss(),),
    )
    assert rows[0].perfect_recovery_fraction == 1.0
    assert rows[0].theory_value is None  # ratios undefined without noise


def test_recovery_attaches_snr_and_ranks():
    rows = run_recovery_sweep(
        PositionSpec.diagonal_gaussian((1.0,) * 16),
        NoiseSpec.diagonal_subgaussian((0.5,) * 16, sigma=1.0),
        n=25,
        trials=10,
        master_seed=4,
    )
    labels = sorted(row.estimator_label for row in rows)
    assert labels == ["lss", "lssc"]
    for row in rows:
        assert row.theory_value == pytest.approx(16 / (0.5 * math.log(25)))
        assert row.extras["stable_ranks"]["signal"] == 16.0


def test_rgg_sweep_extremes():
    rows = run_rgg_sweep(
        GAUSS2,
        n=30,
        r_grid=(1e-6, 50.0),
        norm=NormKind.L2,
        trials=30,
        master_seed=6,
        mc_edge_samples=2000,
    )
    by_key = {(row.sigma2, row.estimator_label): row for row in rows}
    assert by_key[(1e-6, "matching")].mean_hamming == 0.0
    # huge radius: the graph is complete, the matching saturates at floor(n/2)
    assert by_key[(50.0, "matching")].mean_hamming == 15.0
    assert by_key[(50.0, "edges")].mean_hamming == 30 * 29 / 2


def test_rgg_sweep_respects_matching_floor():
    rows = run_rgg_sweep(
        GAUSS2,
        n=60,
        r_grid=(0.1, 0.5),
        norm=NormKind.L2,
        trials=60,
        master_seed=8,
        gamma=0.5,
        beta=1.0,
        rd=2.0,
        mc_edge_samples=2000,
    )
    for row in rows:
        if row.estimator_label == "matching":
            assert row.mean_hamming >= row.theory_value
