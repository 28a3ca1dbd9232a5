"""Matching estimators and the permutation Hamming loss.

Four estimators map an instance to a permutation pi with pi(j) = index of the
initial point matched to observation j:

* least-sum-of-squares: argmin_pi sum_j ||X[pi(j)] - Y[j]||^2, solved exactly
  as a linear assignment problem on squared Euclidean costs;
* covariance-weighted variant: same with coordinates whitened by the known
  diagonal noise covariance;
* greedy-distance / greedy-inner-product baselines: repeatedly commit the
  globally best remaining pair (smallest distance, resp. largest dot product).

Squared distances rather than the equivalent negated-inner-product costs are
used for the assignment numerics: same argmin, nonnegative entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assignment import solve_lap_min
from .model import Instance, Permutation

__all__ = [
    "EstimatorKind",
    "estimate",
    "hamming",
    "squared_distance_costs",
]

_VALID_NAMES = ("lss", "lssc", "greedy-distance", "greedy-inner-product")


@dataclass(frozen=True)
class EstimatorKind:
    """Estimator selector; the whitened variant carries the noise variances."""

    name: str
    noise_variances: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.name not in _VALID_NAMES:
            raise ValueError(f"unknown estimator {self.name!r}; expected one of {_VALID_NAMES}")
        if self.name == "lssc":
            if self.noise_variances is None:
                raise ValueError("whitened estimator needs the noise variances")
            if any(v <= 0 for v in self.noise_variances):
                raise ValueError("noise variances must be strictly positive")
        elif self.noise_variances is not None:
            raise ValueError("noise variances only apply to the whitened estimator")

    @classmethod
    def lss(cls) -> "EstimatorKind":
        return cls("lss")

    @classmethod
    def lssc(cls, noise_variances) -> "EstimatorKind":
        return cls("lssc", tuple(float(v) for v in noise_variances))

    @classmethod
    def greedy_distance(cls) -> "EstimatorKind":
        return cls("greedy-distance")

    @classmethod
    def greedy_inner_product(cls) -> "EstimatorKind":
        return cls("greedy-inner-product")


def squared_distance_costs(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Dense cost matrix c[i, j] = ||x_i - y_j||^2 via the Gram expansion."""
    xx = (x * x).sum(axis=1)
    yy = (y * y).sum(axis=1)
    c = xx[:, None] + yy[None, :] - 2.0 * (x @ y.T)
    np.maximum(c, 0.0, out=c)
    return c


def _greedy_match(keys: np.ndarray) -> Permutation:
    """Scan all (i, j) pairs by ascending key; commit a pair when both ends are
    free.  The stable sort over the row-major layout breaks key ties toward the
    smallest (i, j)."""
    n = keys.shape[0]
    order = np.argsort(keys.ravel(), kind="stable")
    row_taken = np.zeros(n, dtype=bool)
    col_taken = np.zeros(n, dtype=bool)
    out = np.full(n, -1, dtype=np.int64)
    remaining = n
    for flat in order:
        i, j = divmod(int(flat), n)
        if row_taken[i] or col_taken[j]:
            continue
        out[j] = i
        row_taken[i] = True
        col_taken[j] = True
        remaining -= 1
        if remaining == 0:
            break
    return Permutation(out)


def estimate(instance: Instance, kind: EstimatorKind) -> Permutation:
    """Run an estimator on the instance and return its matching permutation."""
    x, y = instance.x, instance.y
    if kind.name == "lss":
        return solve_lap_min(squared_distance_costs(x, y))
    if kind.name == "lssc":
        if len(kind.noise_variances) != instance.d:
            raise ValueError("noise variance dimension does not match the instance")
        scale = 1.0 / np.sqrt(np.asarray(kind.noise_variances, dtype=float))
        return solve_lap_min(squared_distance_costs(x * scale, y * scale))
    if kind.name == "greedy-distance":
        return _greedy_match(squared_distance_costs(x, y))
    return _greedy_match(-(x @ y.T))


def hamming(a: Permutation, b: Permutation) -> int:
    """Number of indices where the two permutations disagree."""
    if a.n != b.n:
        raise ValueError("permutations have different lengths")
    return int(np.count_nonzero(a.mapping != b.mapping))
