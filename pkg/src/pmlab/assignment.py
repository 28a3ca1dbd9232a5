"""Exact dense linear assignment: shortest-augmenting-path solver and a brute oracle.

``solve_lap_min`` minimizes sum_j cost[pi(j), j] over permutations pi using the
Jonker-Volgenant scheme (dual potentials plus one Dijkstra-style augmentation
per row, O(n^3) total).  ``solve_lap_brute`` enumerates permutations and is the
test oracle for n <= 9.  Maximization problems are solved by negating costs.

All solvers are pure functions with per-call scratch buffers (the compiled
kernel releases the interpreter lock), so concurrent calls are safe.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np
from numba import njit

from .model import Permutation

__all__ = ["solve_lap_min", "solve_lap_max", "solve_lap_brute", "lap_objective"]

BRUTE_MAX_N = 9


def _check_cost(cost) -> np.ndarray:
    c = np.asarray(cost, dtype=np.float64)
    if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] == 0:
        raise ValueError("cost matrix must be square and nonempty")
    if np.isnan(c).any():
        raise ValueError("cost matrix contains NaN")
    if np.isinf(c).any():
        raise ValueError("cost matrix contains infinite entries")
    return np.ascontiguousarray(c)


@njit(cache=True, nogil=True)
def _lapjv(cost):  # pragma: no cover - exercised through solve_lap_min
    n = cost.shape[0]
    INF = np.inf
    u = np.zeros(n, dtype=np.float64)
    v = np.zeros(n + 1, dtype=np.float64)
    # row assigned to each column; index n is a virtual column holding the
    # row currently looking for a match
    row_of = np.full(n + 1, -1, dtype=np.int64)
    way = np.full(n + 1, -1, dtype=np.int64)
    minv = np.empty(n + 1, dtype=np.float64)
    used = np.empty(n + 1, dtype=np.bool_)

    for i in range(n):
        row_of[n] = i
        j0 = n
        for j in range(n + 1):
            minv[j] = INF
            used[j] = False
        while True:
            used[j0] = True
            i0 = row_of[j0]
            delta = INF
            j1 = -1
            for j in range(n):
                if not used[j]:
                    cur = cost[i0, j] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[row_of[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if row_of[j0] < 0:
                break
        # augment along the recorded alternating path
        while j0 != n:
            j1 = way[j0]
            row_of[j0] = row_of[j1]
            j0 = j1
    return row_of[:n]


def solve_lap_min(cost) -> Permutation:
    """Permutation pi minimizing sum_j cost[pi(j), j].

    Deterministic: rows are inserted in index order and all comparisons are
    strict improvements, so reruns on identical input give identical output
    (ties included).
    """
    c = _check_cost(cost)
    return Permutation(np.asarray(_lapjv(c), dtype=np.int64))


def solve_lap_max(cost) -> Permutation:
    """Permutation pi maximizing sum_j cost[pi(j), j] (negated minimization)."""
    return solve_lap_min(-_check_cost(cost))


def lap_objective(cost, perm: Permutation) -> float:
    c = np.asarray(cost, dtype=np.float64)
    return float(c[perm.mapping, np.arange(c.shape[0])].sum())


@functools.lru_cache(maxsize=None)
def _all_permutations(n: int) -> np.ndarray:
    """All permutations of range(n) as rows, in lexicographic order."""
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


def solve_lap_brute(cost) -> Permutation:
    """Exhaustive minimum over all permutations, n <= 9 only.

    Permutations are scanned in lexicographic order and the first optimum
    wins, so the result is the lexicographically smallest optimal permutation
    in one-line notation.
    """
    c = _check_cost(cost)
    n = c.shape[0]
    if n > BRUTE_MAX_N:
        raise ValueError(f"brute-force solver limited to n <= {BRUTE_MAX_N}, got {n}")
    perms = _all_permutations(n)
    objectives = c[perms, np.arange(n)].sum(axis=1)
    best = int(np.argmin(objectives))  # argmin returns the first minimizer
    return Permutation(perms[best].copy())
