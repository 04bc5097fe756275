"""Confidence intervals for the GMFR slope.

Two forms are offered:

``approx_ci``
    ``beta* +/- t s`` with ``s**2 = beta***2 (1 - r**2) / (n - 2)``.
``exact_ci``
    ``beta* (sqrt(B + 1) -/+ sqrt(B))`` with ``B = t**2 (1 - r**2) / (n - 2)``.

The exact interval is multiplicatively symmetric about beta*: the product
of its endpoints is ``beta***2``.

A first-power reading, ``s**2 = |beta*| (1 - r**2) / (n - 2)``, is not
dimensionally a slope variance; ``strict=True`` evaluates it anyway so the
two can be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from scipy.special import betaincc

from gmfrbeta.errors import DomainError, InsufficientDataError
from gmfrbeta.estimators import BetaEstimate, PairedSample

CIMethod = Literal["approximate", "exact"]

T_TOL = 1e-10


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    level: float
    method: CIMethod
    t_critical: float
    b_factor: float  # t**2 (1 - r**2) / (n - 2)

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def half_width(self) -> float:
        return 0.5 * (self.upper - self.lower)

    def __contains__(self, value: float) -> bool:
        return self.lower <= value <= self.upper


def t_upper_tail(t: float, df: float) -> float:
    """P(T > t) for Student's t with ``df`` degrees of freedom, t >= 0."""
    x = t * t / (df + t * t)
    return 0.5 * float(betaincc(0.5, 0.5 * df, x))


@lru_cache(maxsize=256)
def t_critical(level: float, df: float) -> float:
    """Two-sided critical value of Student's t.

    Bisection on the upper-tail probability, expressed through the
    regularized incomplete beta function, to an absolute tolerance of 1e-10.
    """
    if not 0.0 < level < 1.0:
        raise DomainError(f"confidence level must lie in (0, 1), got {level}")
    if not df >= 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {df}")
    target = 0.5 * (1.0 - level)
    lo, hi = 0.0, 1.0
    while t_upper_tail(hi, df) > target:
        lo, hi = hi, 2.0 * hi
    while hi - lo > T_TOL * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if t_upper_tail(mid, df) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _slope(beta_star) -> float:
    return beta_star.slope if isinstance(beta_star, BetaEstimate) else float(beta_star)


def _check_n(sample: PairedSample) -> None:
    if sample.n <= 2:
        raise InsufficientDataError("need n > 2 for a slope interval")


def slope_stderr(sample: PairedSample, beta_star, *, strict: bool = False) -> float:
    """Approximate standard error of beta*.

    ``|beta*| sqrt((1 - r**2) / (n - 2))`` by default; with ``strict``,
    ``sqrt(|beta*| (1 - r**2) / (n - 2))``.
    """
    _check_n(sample)
    b = abs(_slope(beta_star))
    spread = (1.0 - sample.corr ** 2) / (sample.n - 2)
    if strict:
        return math.sqrt(b * spread)
    return b * math.sqrt(spread)


def _b_factor(sample: PairedSample, t: float) -> float:
    return t * t * (1.0 - sample.corr ** 2) / (sample.n - 2)


def approx_ci(sample: PairedSample, beta_star, level: float = 0.95, *,
              strict: bool = False) -> ConfidenceInterval:
    """Symmetric interval ``beta* +/- t s`` with ``n - 2`` degrees of freedom."""
    _check_n(sample)
    b = _slope(beta_star)
    t = t_critical(level, sample.n - 2)
    half = t * slope_stderr(sample, b, strict=strict)
    return ConfidenceInterval(b - half, b + half, level, "approximate", t,
                              _b_factor(sample, t))


def exact_ci(sample: PairedSample, beta_star, level: float = 0.95) -> ConfidenceInterval:
    """Multiplicatively symmetric interval ``beta* (sqrt(B + 1) -/+ sqrt(B))``."""
    _check_n(sample)
    b = _slope(beta_star)
    t = t_critical(level, sample.n - 2)
    big_b = _b_factor(sample, t)
    root1 = math.sqrt(big_b + 1.0)
    root = math.sqrt(big_b)
    lo, hi = sorted((b * (root1 - root), b * (root1 + root)))
    return ConfidenceInterval(lo, hi, level, "exact", t, big_b)
