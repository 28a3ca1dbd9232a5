"""Geometric graphs over point clouds and the grid-cell pair construction.

The geometric graph joins points whose norm-distance is strictly below a
radius r.  ``grid_pair_matching`` is the constructive witness used by the
matching-size bound: partition space into axis-aligned cells whose norm
diameter stays below r and match the two points of every cell that holds
exactly two.  Any two points sharing a cell are then guaranteed to share a
graph edge, and distinct cells give vertex-disjoint pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, Matching, read_edge_list, write_edge_list
from .mc import McEstimate
from .model import NormKind, PositionSpec, derive_seed, sample_positions
from . import theory

__all__ = [
    "LDParams",
    "build_rgg",
    "count_expected_edges",
    "grid_pair_matching",
    "pairwise_in_radius",
    "read_edge_list",
    "write_edge_list",
]


@dataclass(frozen=True)
class LDParams:
    """Shape parameters of a position/noise pair for the closed-form floors.

    ``rd`` is a reference radius whose ball carries mass at least ``gamma``
    under ``norm``; ``beta`` bounds the density variation inside that ball
    (and must be at least log 2); ``kq`` bounds the sub-Gaussian norm of the
    noise directions and ``fp_sup`` the density sup.
    """

    rd: float
    norm: NormKind
    gamma: float
    beta: float
    kq: float
    fp_sup: float

    def __post_init__(self) -> None:
        if self.rd <= 0:
            raise ValueError("rd must be > 0")
        if not (0.0 < self.gamma <= 1.0):
            raise ValueError("gamma must lie in (0, 1]")
        if self.beta < math.log(2.0) - 1e-12:
            raise ValueError("beta must be >= log 2")
        if self.kq <= 0 or self.fp_sup <= 0:
            raise ValueError("kq and fp_sup must be positive")

    @classmethod
    def gaussian(cls, d: int) -> "LDParams":
        """Standard instantiation for isotropic Gaussian positions and noise."""
        return cls(
            rd=math.sqrt(2.0 * d),
            norm=NormKind.L2,
            gamma=0.5,
            beta=1.0,
            kq=1.0,
            fp_sup=(2.0 * math.pi) ** (-d / 2.0),
        )

    def matching_floor(self, n: int, d: int, r: float) -> float:
        return theory.matching_size_lower_bound(n, d, r, self.rd, self.gamma, self.beta)

    def minimax_floor(self, n: int, d: int, sigma: float) -> float:
        return theory.minimax_lower_bound(n, d, sigma, self.gamma, self.beta)


def _pairwise_norms(points: np.ndarray, norm: NormKind) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if norm is NormKind.L2:
        sq = (pts * pts).sum(axis=1)
        d2 = sq[:, None] + sq[None, :] - 2.0 * (pts @ pts.T)
        np.maximum(d2, 0.0, out=d2)
        return np.sqrt(d2)
    diff = pts[:, None, :] - pts[None, :, :]
    if norm is NormKind.L1:
        return np.abs(diff).sum(axis=2)
    return np.abs(diff).max(axis=2)


def pairwise_in_radius(points: np.ndarray, r: float, norm: NormKind) -> np.ndarray:
    """Boolean matrix of strict norm-distance comparisons, diagonal False."""
    dist = _pairwise_norms(points, norm)
    within = dist < r
    np.fill_diagonal(within, False)
    return within


def build_rgg(points: np.ndarray, r: float, norm: NormKind = NormKind.L2) -> Graph:
    """Graph with an edge {i, j} whenever norm(x_i - x_j) < r (strict)."""
    if r <= 0:
        raise ValueError("radius must be > 0")
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    within = pairwise_in_radius(pts, r, norm)
    ii, jj = np.nonzero(np.triu(within, k=1))
    return Graph(n, frozenset(zip(ii.tolist(), jj.tolist())))


def count_expected_edges(
    position_spec: PositionSpec,
    n: int,
    r: float,
    norm: NormKind,
    mc_samples: int,
    seed: int,
) -> McEstimate:
    """Monte Carlo estimate of C(n,2) * P(norm(X1 - X2) < r) with its standard error."""
    if mc_samples < 1:
        raise ValueError("mc_samples must be >= 1")
    a = sample_positions(position_spec, mc_samples, derive_seed(seed, 0))
    b = sample_positions(position_spec, mc_samples, derive_seed(seed, 1))
    hits = norm.of(a - b) < r
    p = float(hits.mean())
    pairs = n * (n - 1) / 2.0
    se = pairs * math.sqrt(max(p * (1.0 - p), 0.0) / mc_samples)
    return McEstimate(value=pairs * p, std_error=se, samples=mc_samples)


def _cell_side(r: float, d: int, norm: NormKind) -> float:
    if norm is NormKind.L2:
        return r / math.sqrt(d)
    if norm is NormKind.L1:
        return r / d
    return r


def grid_pair_matching(points: np.ndarray, r: float, norm: NormKind = NormKind.L2) -> Matching:
    """Match the two points of every grid cell containing exactly two points.

    Cells are half-open axis-aligned cubes indexed by floor-division of the
    coordinates, with side r/sqrt(d), r/d or r for the L2, L1 and Linf norms,
    so two points in one cell are strictly within distance r of each other.
    """
    if r <= 0:
        raise ValueError("radius must be > 0")
    pts = np.asarray(points, dtype=float)
    side = _cell_side(r, pts.shape[1], norm)
    keys = np.floor(pts / side).astype(np.int64)
    cells: dict[tuple[int, ...], list[int]] = {}
    for idx, key in enumerate(map(tuple, keys)):
        cells.setdefault(key, []).append(idx)
    edges = [(members[0], members[1]) for members in cells.values() if len(members) == 2]
    return Matching(frozenset(edges))
