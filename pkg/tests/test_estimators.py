import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pmlab.cycles import cycle_gap, enumerate_cycles
from pmlab.estimators import EstimatorKind, estimate, hamming, squared_distance_costs
from pmlab.model import NoiseSpec, Permutation, PositionSpec, sample_instance

GAUSS2 = PositionSpec.gaussian(2)
ALL_KINDS = [
    EstimatorKind.lss(),
    EstimatorKind.lssc((1.0, 1.0)),
    EstimatorKind.greedy_distance(),
    EstimatorKind.greedy_inner_product(),
]


def test_zero_noise_recovers_truth_exactly():
    for seed in range(10):
        inst = sample_instance(GAUSS2, NoiseSpec.gaussian(2, 0.0), 9, seed)
        for kind in ALL_KINDS:
            assert estimate(inst, kind) == inst.pistar, kind.name


def test_identity_whitening_reduces_to_plain_lss():
    for seed in range(100):
        inst = sample_instance(GAUSS2, NoiseSpec.gaussian(2, 0.4), 12, seed)
        assert estimate(inst, EstimatorKind.lssc((1.0, 1.0))) == estimate(
            inst, EstimatorKind.lss()
        )


def test_lss_matches_brute_force_objective():
    cols = np.arange(6)
    for seed in range(500):
        inst = sample_instance(GAUSS2, NoiseSpec.gaussian(2, 0.5), 6, seed)
        cost = squared_distance_costs(inst.x, inst.y)
        pi = estimate(inst, EstimatorKind.lss())
        got = float(cost[pi.mapping, cols].sum())
        best = min(
            float(cost[np.asarray(p), cols].sum()) for p in itertools.permutations(range(6))
        )
        assert got == best


def test_whitened_estimator_uses_covariance():
    # stretch one axis of the noise so heavily that the whitened and plain
    # solutions differ on some seed; the whitened cost must prefer its own pick
    variances = (1.0, 400.0)
    differs = 0
    for seed in range(60):
        inst = sample_instance(
            GAUSS2, NoiseSpec.diagonal_subgaussian(variances, sigma=0.4), 10, seed
        )
        plain = estimate(inst, EstimatorKind.lss())
        white = estimate(inst, EstimatorKind.lssc(variances))
        if plain != white:
            differs += 1
        scale = 1.0 / np.sqrt(np.asarray(variances))
        cost = squared_distance_costs(inst.x * scale, inst.y * scale)
        cols = np.arange(inst.n)
        assert cost[white.mapping, cols].sum() <= cost[plain.mapping, cols].sum() + 1e-9
    assert differs > 0


def test_lssc_requires_positive_variances():
    with pytest.raises(ValueError):
        EstimatorKind.lssc((1.0, 0.0))


def test_hamming_trivia():
    ident = Permutation.identity(4)
    assert hamming(ident, ident) == 0
    swapped = Permutation.from_one_based([2, 1, 4, 3])
    assert hamming(ident, swapped) == 4
    with pytest.raises(ValueError):
        hamming(ident, Permutation.identity(3))


@given(st.integers(min_value=2, max_value=30), st.integers(min_value=0, max_value=2**32))
def test_hamming_symmetry_and_no_single_disagreement(n, seed):
    rng = np.random.default_rng(seed)
    a = Permutation(rng.permutation(n).astype(np.int64))
    b = Permutation(rng.permutation(n).astype(np.int64))
    assert hamming(a, b) == hamming(b, a)
    assert hamming(a, b) != 1  # bijections cannot disagree in exactly one place


def test_hamming_properties_over_large_pair_corpus():
    rng = np.random.default_rng(6060)
    for _ in range(1000):
        n = int(rng.integers(2, 40))
        a = Permutation(rng.permutation(n).astype(np.int64))
        b = Permutation(rng.permutation(n).astype(np.int64))
        h = hamming(a, b)
        assert h == hamming(b, a)
        assert h != 1
        assert 0 <= h <= n


def test_translation_and_rotation_keep_lss_optimal():
    theta = 0.7
    rot = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    shift = np.array([3.5, -1.25])
    for seed in range(20):
        inst = sample_instance(GAUSS2, NoiseSpec.gaussian(2, 0.3), 7, seed)
        pi = estimate(inst, EstimatorKind.lss())
        for xt, yt in (
            (inst.x + shift, inst.y + shift),
            (inst.x @ rot.T, inst.y @ rot.T),
        ):
            cost = squared_distance_costs(xt, yt)
            cols = np.arange(inst.n)
            got = cost[pi.mapping, cols].sum()
            best = min(
                cost[np.asarray(p), cols].sum() for p in itertools.permutations(range(7))
            )
            assert got == pytest.approx(best, abs=1e-9)


def test_no_cycle_improves_on_the_lss_output():
    # with the reference set to the estimate itself, every short cycle must
    # fail to strictly increase the assignment objective
    kind = EstimatorKind.lss()
    for seed in range(10):
        inst = sample_instance(GAUSS2, NoiseSpec.gaussian(2, 0.5), 8, seed)
        pi = estimate(inst, kind)
        for t in (2, 3):
            for cyc in enumerate_cycles(inst.n, t):
                assert cycle_gap(inst, cyc, kind, pi) <= 1e-9


def test_greedy_outputs_are_permutations(rng):
    for seed in range(50):
        inst = sample_instance(GAUSS2, NoiseSpec.gaussian(2, 1.5), 15, seed)
        for kind in (EstimatorKind.greedy_distance(), EstimatorKind.greedy_inner_product()):
            perm = estimate(inst, kind)
            assert np.array_equal(np.sort(perm.mapping), np.arange(15))
