"""Closed-form bound values, sharp constants, and signal-to-noise calculators.

Everything here is either a deterministic formula evaluation or a Monte Carlo
estimate returned as an :class:`~pmlab.mc.McEstimate` triple (value, standard
error, sample count) so callers can apply error-bar-aware tolerances.

Absolute constants that the underlying analysis leaves unspecified are never
baked in: formulas that contain one take it as an explicit argument.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .mc import McEstimate
from .model import (
    NoiseSpec,
    PositionSpec,
    density_at_rows,
    derive_seed,
    sample_noise_direction,
    sample_positions,
)

__all__ = [
    "TheoryReport",
    "HDParams",
    "StableRanks",
    "LogRegime",
    "HpBounds",
    "ball_volume",
    "minimax_lower_bound",
    "matching_size_lower_bound",
    "lss_upper_bound",
    "tau_constant",
    "tau_gaussian",
    "augmenting_2cycle_rate",
    "snr_lss",
    "snr_lssc",
    "stable_ranks",
    "gaussian_q",
    "gaussian_tv_lower",
    "log_regime",
    "hp_bounds",
]

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class TheoryReport:
    """One computed quantity with its inputs, ready for JSON output."""

    name: str
    value: float
    inputs: dict = field(default_factory=dict)
    formula_ref: str = ""

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError("report value must be finite")

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "value": self.value,
                "inputs": self.inputs,
                "formula_ref": self.formula_ref or self.name,
            },
            sort_keys=True,
        )


def _check_shape_params(gamma: float, beta: float) -> None:
    if not (0.0 < gamma <= 1.0):
        raise ValueError("gamma must lie in (0, 1]")
    if beta < LOG2 - 1e-12:
        raise ValueError("beta must be >= log 2")


def ball_volume(d: int) -> float:
    """Volume of the d-dimensional Euclidean unit ball."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0)


def minimax_lower_bound(n: int, d: int, sigma: float, gamma: float, beta: float) -> float:
    """Floor on the expected mistake count of *any* estimator:
    (gamma^2 / 32) * exp(-7 beta d) * min(n^2 sigma^d, n)."""
    if n < 3:
        raise ValueError("the bound requires n >= 3")
    _check_shape_params(gamma, beta)
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    return (gamma**2 / 32.0) * math.exp(-7.0 * beta * d) * min(n**2 * sigma**d, float(n))


def matching_size_lower_bound(
    n: int, d: int, r: float, rd: float, gamma: float, beta: float
) -> float:
    """Floor on the expected maximum matching size of the radius-r geometric
    graph: (gamma^2 / 16) * exp(-6 beta d) * min(n^2 (r / rd)^d, n)."""
    if n < 3:
        raise ValueError("the bound requires n >= 3")
    if r < 0 or rd <= 0:
        raise ValueError("need r >= 0 and rd > 0")
    _check_shape_params(gamma, beta)
    return (gamma**2 / 16.0) * math.exp(-6.0 * beta * d) * min(n**2 * (r / rd) ** d, float(n))


def lss_upper_bound(n: int, d: int, sigma: float, k: float) -> float:
    """Ceiling on the expected least-squares mistake count:
    min(3 K^d n^2 sigma^d, n).  K absorbs an unspecified absolute constant and
    is supplied by the caller."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if k <= 0:
        raise ValueError("K must be > 0")
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    return min(3.0 * k**d * n**2 * sigma**d, float(n))


def tau_constant(
    position_spec: PositionSpec,
    noise_spec: NoiseSpec,
    mc_samples: int,
    seed: int,
) -> McEstimate:
    """Sharp small-noise error-rate prefactor
    2^{-d} * rho_d * E[f_P(X1)] * E[||Zt1 - Zt2||^d],
    with both expectations estimated by Monte Carlo.

    The standard error combines the two independent estimates by the delta
    method for a product.
    """
    if mc_samples < 2:
        raise ValueError("mc_samples must be >= 2")
    if position_spec.dimension != noise_spec.dimension:
        raise ValueError("specs must share a dimension")
    d = position_spec.dimension
    const = 2.0 ** (-d) * ball_volume(d)

    xs = sample_positions(position_spec, mc_samples, derive_seed(seed, 0))
    dens = density_at_rows(position_spec, xs)
    a = float(dens.mean())
    a_se = float(dens.std(ddof=1) / math.sqrt(mc_samples))

    z1 = sample_noise_direction(noise_spec, mc_samples, derive_seed(seed, 1))
    z2 = sample_noise_direction(noise_spec, mc_samples, derive_seed(seed, 2))
    norms_d = np.linalg.norm(z1 - z2, axis=1) ** d
    b = float(norms_d.mean())
    b_se = float(norms_d.std(ddof=1) / math.sqrt(mc_samples))

    value = const * a * b
    se = const * math.sqrt((a_se * b) ** 2 + (a * b_se) ** 2)
    return McEstimate(value=value, std_error=se, samples=mc_samples)


def tau_gaussian(d: int) -> float:
    """Closed form of the prefactor for standard Gaussian positions and noise:
    2^{-d} * Gamma(d) / (Gamma(d/2 + 1) * Gamma(d/2))."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return 2.0 ** (-d) * math.gamma(d) / (math.gamma(d / 2.0 + 1.0) * math.gamma(d / 2.0))


def augmenting_2cycle_rate(
    position_spec: PositionSpec,
    noise_spec: NoiseSpec,
    sigma: float,
    mc_samples: int,
    seed: int,
) -> McEstimate:
    """Monte Carlo estimate of P(the pair (1, 2) is augmenting) / sigma^d.

    For small sigma this converges to the sharp prefactor computed by
    :func:`tau_constant`.  sigma = 0 is degenerate (0/0) and returns a flagged
    zero estimate.
    """
    if mc_samples < 1:
        raise ValueError("mc_samples must be >= 1")
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    if sigma == 0.0:
        return McEstimate(value=0.0, std_error=0.0, samples=0, degenerate=True)
    if position_spec.dimension != noise_spec.dimension:
        raise ValueError("specs must share a dimension")
    d = position_spec.dimension

    x1 = sample_positions(position_spec, mc_samples, derive_seed(seed, 0))
    x2 = sample_positions(position_spec, mc_samples, derive_seed(seed, 1))
    z1 = sample_noise_direction(noise_spec, mc_samples, derive_seed(seed, 2))
    z2 = sample_noise_direction(noise_spec, mc_samples, derive_seed(seed, 3))

    dx = x1 - x2
    # swapping observations 1 and 2 does not decrease the objective iff
    # <X1 - X2, Z2 - Z1> >= ||X1 - X2||^2 with Z_i = sigma * Zt_i
    gain = sigma * ((z2 - z1) * dx).sum(axis=1) - (dx * dx).sum(axis=1)
    p = float((gain >= 0.0).mean())
    p_se = math.sqrt(max(p * (1.0 - p), 0.0) / mc_samples)
    scale = sigma ** (-d)
    return McEstimate(value=p * scale, std_error=p_se * scale, samples=mc_samples)


@dataclass(frozen=True)
class HDParams:
    """Diagonal covariance description of the high-dimensional model.

    ``sigma_x2`` and ``sigma_z2`` are the diagonals (variances) of the position
    and noise covariances; ``kx`` and ``kz`` bound the coordinate sub-Gaussian
    norms and are carried along for reporting.
    """

    sigma_x2: tuple[float, ...]
    sigma_z2: tuple[float, ...]
    kx: float
    kz: float
    n: int

    def __post_init__(self) -> None:
        if len(self.sigma_x2) != len(self.sigma_z2) or not self.sigma_x2:
            raise ValueError("variance lists must be nonempty and equal length")
        if any(v <= 0 for v in self.sigma_x2) or any(v <= 0 for v in self.sigma_z2):
            raise ValueError("all variances must be strictly positive")
        if self.kx <= 0 or self.kz <= 0:
            raise ValueError("sub-Gaussian norm bounds must be positive")
        if self.n < 3:
            raise ValueError("n must be >= 3")

    @property
    def d(self) -> int:
        return len(self.sigma_x2)

    def snr_lss(self) -> float:
        return snr_lss(self.sigma_x2, self.sigma_z2, float(self.n))

    def snr_lssc(self) -> float:
        return snr_lssc(self.sigma_x2, self.sigma_z2, float(self.n))

    def stable_ranks(self) -> "StableRanks":
        return stable_ranks(self.sigma_x2, self.sigma_z2)


def _snr_parts(sigma_x2, sigma_z2, n: float):
    sx = np.asarray(sigma_x2, dtype=float)
    sz = np.asarray(sigma_z2, dtype=float)
    if sx.shape != sz.shape or sx.ndim != 1 or sx.size == 0:
        raise ValueError("variance lists must be nonempty and equal length")
    if np.any(sx <= 0) or np.any(sz <= 0):
        raise ValueError("all variances must be strictly positive")
    if n <= 1:
        raise ValueError("n must exceed 1 so that log n > 0")
    total = float(sx.sum())
    weights = sx / total
    return total, weights, sz, math.log(n)


def snr_lss(sigma_x2, sigma_z2, n: float) -> float:
    """Signal-to-noise ratio governing the plain least-squares estimator:
    total signal variance over the signal-weighted *arithmetic* mean of the
    noise variances, divided by log n."""
    total, weights, sz, logn = _snr_parts(sigma_x2, sigma_z2, n)
    return total / float((weights * sz).sum()) / logn


def snr_lssc(sigma_x2, sigma_z2, n: float) -> float:
    """Signal-to-noise ratio for the covariance-weighted estimator: same as
    :func:`snr_lss` but with the signal-weighted *harmonic* mean of the noise
    variances, which never exceeds the arithmetic one."""
    total, weights, sz, logn = _snr_parts(sigma_x2, sigma_z2, n)
    harmonic = 1.0 / float((weights / sz).sum())
    return total / harmonic / logn


@dataclass(frozen=True)
class StableRanks:
    """Stable ranks trace(D)/max(D) of the three diagonal products that must
    all stay large for the high-dimensional recovery guarantees."""

    noise_times_signal: float
    signal: float
    whitened_signal: float

    def as_dict(self) -> dict:
        return {
            "noise_times_signal": self.noise_times_signal,
            "signal": self.signal,
            "whitened_signal": self.whitened_signal,
        }


def stable_ranks(sigma_x2, sigma_z2) -> StableRanks:
    sx = np.asarray(sigma_x2, dtype=float)
    sz = np.asarray(sigma_z2, dtype=float)
    if sx.shape != sz.shape or sx.ndim != 1 or sx.size == 0:
        raise ValueError("variance lists must be nonempty and equal length")
    if np.any(sx <= 0) or np.any(sz <= 0):
        raise ValueError("all variances must be strictly positive")

    def rank(diag: np.ndarray) -> float:
        return float(diag.sum() / diag.max())

    return StableRanks(
        noise_times_signal=rank(sz * sx),
        signal=rank(sx),
        whitened_signal=rank(sx / sz),
    )


def gaussian_q(s: float) -> float:
    """Worst-direction tail probability P(<Zt1 - Zt2, v> >= s) for standard
    Gaussian directions: 1 - Phi(s / sqrt(2)) = erfc(s / 2) / 2."""
    return 0.5 * math.erfc(s / 2.0)


def gaussian_tv_lower(v_norm_sq: float) -> float:
    """Lower bound on the overlap 1 - TV for Gaussian noise shifted by +-v:
    exp(-||v||^2) / 2."""
    if v_norm_sq < 0:
        raise ValueError("squared norm must be >= 0")
    return 0.5 * math.exp(-v_norm_sq)


def chi_square_rate(t: float) -> float:
    """Large-deviation rate function of a 1-degree chi-square: (t - 1 - log t)/2."""
    if t <= 0:
        raise ValueError("the rate function needs t > 0")
    return 0.5 * (t - 1.0 - math.log(t))


@dataclass(frozen=True)
class LogRegime:
    """Logarithmic-dimension calculator: optimal squared-radius factor
    gamma_star, polynomial exponent alpha, and the chi-square rate function."""

    a: float
    sigma2: float
    gamma_star: float
    alpha: float

    # the rate function handle is shared; it does not depend on the inputs
    rate: Callable[[float], float] = field(default=chi_square_rate, repr=False)

    def objective(self, gamma: float) -> float:
        """Exponent achieved by squared radius gamma * d; maximized at gamma_star."""
        if not (0.0 < gamma < 2.0):
            raise ValueError("gamma must lie in (0, 2)")
        return 2.0 - (self.a / 2.0) * (
            gamma / 2.0 * (1.0 + 1.0 / self.sigma2) - 1.0 - math.log(gamma / 2.0)
        )


def log_regime(a: float, sigma2: float) -> LogRegime:
    """For dimension a * log n and noise variance sigma2, the mistake count
    scales as n^alpha with alpha = 2 - (a/2) log(1 + 1/sigma2), attained at
    gamma_star = 2 / (1 + 1/sigma2)."""
    if a <= 0 or sigma2 <= 0:
        raise ValueError("need a > 0 and sigma2 > 0")
    gamma_star = 2.0 / (1.0 + 1.0 / sigma2)
    alpha = 2.0 - (a / 2.0) * math.log(1.0 + 1.0 / sigma2)
    return LogRegime(a=a, sigma2=sigma2, gamma_star=gamma_star, alpha=alpha)


@dataclass(frozen=True)
class HpBounds:
    """High-probability thresholds sharing the min(n^2 sigma^d, n) shape:
    matching size (constant 1/32, exponent -6 beta d), least-squares mistakes
    (1/64, exponent -7 beta d), and the positive-probability variant (1/128)."""

    matching: float
    lss: float
    positive_probability: float


def hp_bounds(n: int, d: int, sigma: float, gamma: float, beta: float) -> HpBounds:
    if n < 3:
        raise ValueError("the bounds require n >= 3")
    _check_shape_params(gamma, beta)
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    envelope = min(n**2 * sigma**d, float(n))
    g2 = gamma**2
    return HpBounds(
        matching=g2 / 32.0 * math.exp(-6.0 * beta * d) * envelope,
        lss=g2 / 64.0 * math.exp(-7.0 * beta * d) * envelope,
        positive_probability=g2 / 128.0 * math.exp(-7.0 * beta * d) * envelope,
    )
