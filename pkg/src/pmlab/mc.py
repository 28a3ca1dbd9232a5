"""Monte Carlo estimate container shared by the sampling-based calculators."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["McEstimate"]


@dataclass(frozen=True)
class McEstimate:
    """Estimate with its standard error and sample count.

    ``degenerate`` flags inputs where the estimand is not defined (for example
    a rate normalized by sigma^d at sigma = 0); the value is then 0 by
    convention and the error bar meaningless.
    """

    value: float
    std_error: float
    samples: int
    degenerate: bool = False

    def __float__(self) -> float:
        return float(self.value)

    def within(self, target: float, n_se: float = 3.0, extra_se: float = 0.0) -> bool:
        """True when ``target`` lies inside n_se combined standard errors."""
        tol = n_se * (self.std_error + extra_se)
        return abs(self.value - target) <= tol
