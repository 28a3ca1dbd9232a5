"""Augmenting cycles, the augmenting-pair graph, and the mistake lower bound.

A cycle of indices (i_1, ..., i_t) is *augmenting* relative to a reference
permutation when rotating the assignment along the cycle does not decrease the
matching objective:

    sum_k <w(ref(i_k)), Y[i_{k+1}]>  >=  sum_k <w(ref(i_k)), Y[i_k]>,

cyclically with i_{t+1} = i_1, where w is the identity for the plain
least-squares estimator and the inverse noise covariance for the whitened one.
The comparison is the non-strict >= throughout; ties have measure zero under
continuous noise and are documented behavior for discrete noise.

With the observations relabeled so the truth is the identity, the graph whose
edges are the augmenting 2-cycles has a useful property: the number of
mistakes made by the least-squares estimator is at least the size of a maximum
matching in that graph.  ``verify_gaug_bound`` checks this on a live instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .estimators import EstimatorKind, estimate, hamming
from .graphs import Graph
from .matching import max_matching
from .model import Instance, Permutation

__all__ = [
    "is_augmenting",
    "cycle_gap",
    "build_gaug",
    "GaugBoundReport",
    "verify_gaug_bound",
    "mistake_cycles",
    "MAX_ENUM_CYCLE_LENGTH",
    "MAX_ENUM_VERTICES",
    "enumerate_cycles",
]

# caps for exhaustive cycle enumeration (combinatorial blowup beyond this)
MAX_ENUM_CYCLE_LENGTH = 4
MAX_ENUM_VERTICES = 30


def _cycle_weights(instance: Instance, kind: EstimatorKind) -> np.ndarray:
    if kind.name == "lss":
        return instance.x
    if kind.name == "lssc":
        if len(kind.noise_variances) != instance.d:
            raise ValueError("noise variance dimension does not match the instance")
        return instance.x / np.asarray(kind.noise_variances, dtype=float)
    raise ValueError("cycle predicates are defined for the assignment-based estimators only")


def cycle_gap(
    instance: Instance,
    cycle: Sequence[int],
    kind: EstimatorKind,
    reference: Permutation,
) -> float:
    """Rotated-sum minus in-place-sum for the cycle; >= 0 means augmenting."""
    idx = np.asarray(list(cycle), dtype=np.int64)
    if idx.shape[0] < 2:
        raise ValueError("a cycle needs at least 2 indices")
    if len(set(idx.tolist())) != idx.shape[0]:
        raise ValueError("cycle indices must be distinct")
    w = _cycle_weights(instance, kind)
    ref_rows = w[reference.mapping[idx]]
    y_here = instance.y[idx]
    y_next = instance.y[np.roll(idx, -1)]
    rotated = float((ref_rows * y_next).sum())
    in_place = float((ref_rows * y_here).sum())
    return rotated - in_place


def is_augmenting(
    instance: Instance,
    cycle: Sequence[int],
    kind: EstimatorKind,
    reference: Permutation,
) -> bool:
    """Non-strict cycle inequality; ``reference`` is normally the hidden truth."""
    return cycle_gap(instance, cycle, kind, reference) >= 0.0


def build_gaug(instance: Instance) -> Graph:
    """Graph on point indices whose edges are the augmenting 2-cycles.

    Observations are relabeled so the truth is the identity (Yr[i] is the
    observation of initial point i); the pair {i, j} is then an edge exactly
    when swapping the two observations does not decrease the objective,
    equivalently <X_i - X_j, Yr_j - Yr_i> >= 0.  The difference form makes
    duplicated initial positions an exact zero, so the non-strict convention
    resolves those ties deterministically.
    """
    inv = instance.pistar.inverse()
    yr = instance.y[inv.mapping]
    x = instance.x
    n = instance.n
    edges: list[tuple[int, int]] = []
    block = max(1, min(n, 8_000_000 // (max(n, 1) * instance.d)))
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        dx = x[lo:hi, None, :] - x[None, :, :]
        dy = yr[None, :, :] - yr[lo:hi, None, :]
        gain = np.einsum("bnd,bnd->bn", dx, dy)
        ii, jj = np.nonzero(gain >= 0.0)
        for bi, j in zip(ii.tolist(), jj.tolist()):
            i = lo + bi
            if i < j:
                edges.append((i, j))
    return Graph(n, frozenset(edges))


@dataclass(frozen=True)
class GaugBoundReport:
    hamming: int
    matching_size: int
    holds: bool


def verify_gaug_bound(instance: Instance, lss_perm: Permutation | None = None) -> GaugBoundReport:
    """Check hamming(lss, truth) >= |maximum matching of the augmenting-pair graph|.

    Must hold on every instance.  ``lss_perm`` lets callers that already ran
    the least-squares estimator skip the second solve.
    """
    if lss_perm is None:
        lss_perm = estimate(instance, EstimatorKind.lss())
    dist = hamming(lss_perm, instance.pistar)
    gaug = build_gaug(instance)
    if gaug.edge_count == 0:
        size = 0
    else:
        size = len(max_matching(gaug))
    return GaugBoundReport(hamming=dist, matching_size=size, holds=dist >= size)


def mistake_cycles(estimated: Permutation, truth: Permutation) -> list[tuple[int, ...]]:
    """Cycles along which the estimate disagrees with the truth.

    Returns the nontrivial cycles of estimated^{-1} o truth, traversed
    forward.  Their total length equals hamming(estimated, truth), and for an
    assignment-optimal estimate each returned cycle is augmenting relative to
    the truth (rotating it back cannot improve the objective the optimizer
    already maximized).
    """
    rel = estimated.inverse().compose(truth)
    return rel.cycles(nontrivial_only=True)


def enumerate_cycles(n: int, length: int) -> list[tuple[int, ...]]:
    """All distinct cycles of the given length over [n], up to rotation.

    Capped at length ``MAX_ENUM_CYCLE_LENGTH`` and ``MAX_ENUM_VERTICES``
    vertices; meant for exhaustive checks on small instances.
    """
    import itertools

    if length < 2 or length > MAX_ENUM_CYCLE_LENGTH:
        raise ValueError(f"cycle length must be in [2, {MAX_ENUM_CYCLE_LENGTH}]")
    if n > MAX_ENUM_VERTICES:
        raise ValueError(f"cycle enumeration limited to {MAX_ENUM_VERTICES} vertices")
    out = []
    for combo in itertools.combinations(range(n), length):
        first, rest = combo[0], combo[1:]
        for tail in itertools.permutations(rest):
            out.append((first, *tail))
    return out
