import time

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pmlab.assignment import lap_objective, solve_lap_brute, solve_lap_max, solve_lap_min
from pmlab.model import Permutation


def test_diagonal_optimum():
    p = solve_lap_min([[0.0, 1.0], [1.0, 0.0]])
    assert p == Permutation.identity(2)
    assert lap_objective([[0.0, 1.0], [1.0, 0.0]], p) == 0.0


def test_recovers_planted_zero_pattern(rng):
    for _ in range(30):
        n = int(rng.integers(2, 9))
        sigma = rng.permutation(n)
        cost = np.ones((n, n))
        cost[sigma, np.arange(n)] = 0.0
        assert np.array_equal(solve_lap_min(cost).mapping, sigma)


def test_brute_trivia():
    assert solve_lap_brute([[3.0]]) == Permutation.identity(1)
    assert solve_lap_brute([[0.0, 1.0], [1.0, 0.0]]) == Permutation.identity(2)
    with pytest.raises(ValueError, match="n <= 9"):
        solve_lap_brute(np.zeros((10, 10)))


def test_agreement_with_brute_on_random_5x5(rng):
    for trial in range(1000):
        cost = rng.random((5, 5))
        fast = solve_lap_min(cost)
        brute = solve_lap_brute(cost)
        # continuous costs: the optimum is unique almost surely
        assert fast == brute, f"trial {trial}"


def test_integer_cost_objectives_match(rng):
    for _ in range(300):
        n = int(rng.integers(2, 8))
        cost = rng.integers(0, 6, (n, n)).astype(float)
        assert lap_objective(cost, solve_lap_min(cost)) == lap_objective(
            cost, solve_lap_brute(cost)
        )


def test_max_is_negated_min(rng):
    cost = rng.random((6, 6))
    assert solve_lap_max(cost) == solve_lap_min(-cost)


def test_nan_rejected():
    cost = np.zeros((3, 3))
    cost[1, 2] = np.nan
    with pytest.raises(ValueError, match="NaN"):
        solve_lap_min(cost)
    with pytest.raises(ValueError, match="infinite"):
        solve_lap_min(np.full((2, 2), np.inf))
    with pytest.raises(ValueError, match="square"):
        solve_lap_min(np.zeros((2, 3)))


@given(
    st.integers(min_value=0, max_value=2**31),
    st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
    st.integers(min_value=0, max_value=5),
)
def test_row_column_shift_preserves_argmin(seed, shift, index):
    rng = np.random.default_rng(seed)
    n = 6
    cost = rng.random((n, n))
    base = solve_lap_min(cost)
    shifted = cost.copy()
    shifted[index, :] += shift
    perm = solve_lap_min(shifted)
    # the returned permutation attains the optimum of the shifted problem,
    # which differs from the base optimum by exactly the shift
    assert lap_objective(shifted, perm) == pytest.approx(
        lap_objective(cost, base) + shift, abs=1e-9
    )
    col_shifted = cost.copy()
    col_shifted[:, index] += shift
    perm_c = solve_lap_min(col_shifted)
    assert lap_objective(col_shifted, perm_c) == pytest.approx(
        lap_objective(cost, base) + shift, abs=1e-9
    )


def test_deterministic_reruns(rng):
    cost = rng.integers(0, 3, (8, 8)).astype(float)
    first = solve_lap_min(cost)
    for _ in range(5):
        assert solve_lap_min(cost) == first


def test_complexity_guard_200():
    rng = np.random.default_rng(7)
    cost = rng.random((200, 200))
    solve_lap_min(cost)  # warm the jit
    start = time.perf_counter()
    solve_lap_min(cost)
    assert time.perf_counter() - start < 1.0


def test_agreement_with_scipy_at_larger_sizes():
    scipy_opt = pytest.importorskip("scipy.optimize")
    rng = np.random.default_rng(31)
    for n in (20, 50, 120):
        for _ in range(20):
            cost = rng.random((n, n))
            mine = lap_objective(cost, solve_lap_min(cost))
            rows, cols = scipy_opt.linear_sum_assignment(cost)
            reference = float(cost[rows, cols].sum())
            assert mine == pytest.approx(reference, rel=1e-12)
