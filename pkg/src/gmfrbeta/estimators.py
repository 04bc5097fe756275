"""Sample moments and the three slope estimators.

All three fitted lines pass through the centroid ``(mean_m, mean_i)``;
they differ only in slope:

* ``ols``      corr * sd_i / sd_m        (least squares, y on x)
* ``reverse``  sd_i / (corr * sd_m)      (least squares, x on y, inverted)
* ``gmfr``     sign(corr) * sd_i / sd_m  (geometric mean functional relation)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from gmfrbeta.errors import (
    DegenerateSampleError,
    DomainError,
    InsufficientDataError,
    SignUndefinedError,
    UndefinedSlopeError,
)
from gmfrbeta.kernels import backend

Estimator = Literal["ols", "reverse", "gmfr"]

MIN_PAIRS = 3
_SNAP = 16 * np.finfo(np.float64).eps


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PairedSample:
    """Aligned (market, investment) returns with their moments cached.

    Build one with :func:`moments`; the constructor trusts its arguments.
    """

    market: np.ndarray
    investment: np.ndarray
    mean_m: float
    mean_i: float
    sd_m: float
    sd_i: float
    corr: float
    dates: tuple = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return int(self.market.shape[0])

    @property
    def centroid(self) -> tuple[float, float]:
        return self.mean_m, self.mean_i

    @property
    def cov(self) -> float:
        return self.corr * self.sd_m * self.sd_i

    def swapped(self) -> "PairedSample":
        """The same sample with the axes exchanged."""
        return PairedSample(self.investment, self.market, self.mean_i,
                            self.mean_m, self.sd_i, self.sd_m, self.corr,
                            self.dates)


@dataclass(frozen=True)
class BetaEstimate:
    slope: float
    intercept: float
    estimator: Estimator
    n: int
    corr: float

    def predict(self, market_rate):
        return self.intercept + self.slope * np.asarray(market_rate)


def moments(market, investment=None, *, dates: Sequence = ()) -> PairedSample:
    """Compute means, sample standard deviations and correlation.

    Parameters
    ----------
    market, investment : array_like
        Paired return observations. If ``investment`` is omitted, ``market``
        is taken to be a sequence of ``(market, investment)`` pairs.
    dates : sequence, optional
        Interval labels carried along for reporting and plotting.

    Raises
    ------
    InsufficientDataError
        Fewer than three pairs.
    DegenerateSampleError
        Either variable is constant; ``side`` names which one.
    """
    if investment is None:
        pairs = np.asarray(market, dtype=np.float64)
        if pairs.ndim != 2 or (pairs.size and pairs.shape[1] != 2):
            raise ValueError("expected a sequence of (market, investment) pairs")
        pairs = pairs.reshape(-1, 2)
        x, y = pairs[:, 0], pairs[:, 1]
    else:
        x = np.asarray(market, dtype=np.float64).ravel()
        y = np.asarray(investment, dtype=np.float64).ravel()
        if x.shape != y.shape:
            raise ValueError(f"length mismatch: {x.shape[0]} vs {y.shape[0]}")
    if x.shape[0] < MIN_PAIRS:
        raise InsufficientDataError(
            f"need at least {MIN_PAIRS} return pairs, got {x.shape[0]}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise DomainError("returns must be finite")
    flat_x = np.ptp(x) == 0
    flat_y = np.ptp(y) == 0
    if flat_x or flat_y:
        side = "both" if flat_x and flat_y else ("market" if flat_x else "investment")
        raise DegenerateSampleError(side)

    x = np.ascontiguousarray(x)
    y = np.ascontiguousarray(y)
    mx, my, sx, sy, cov = backend.moments(x, y)
    corr = min(1.0, max(-1.0, cov / (sx * sy)))
    if 1.0 - abs(corr) <= _SNAP:
        # collinear data: rounding leaves r a few ulps short of +/-1
        corr = math.copysign(1.0, corr)
    return PairedSample(_frozen(x), _frozen(y), float(mx), float(my),
                        float(sx), float(sy), float(corr), tuple(dates))


def _through_centroid(sample: PairedSample, slope: float,
                      estimator: Estimator) -> BetaEstimate:
    return BetaEstimate(slope, sample.mean_i - slope * sample.mean_m,
                        estimator, sample.n, sample.corr)


def _require_market_spread(sample: PairedSample) -> None:
    if sample.sd_m <= 0.0:
        raise DegenerateSampleError("market")


def ols_beta(sample: PairedSample) -> BetaEstimate:
    """Standard beta: least squares of investment on market returns."""
    _require_market_spread(sample)
    return _through_centroid(sample, sample.corr * sample.sd_i / sample.sd_m, "ols")


def reverse_beta(sample: PairedSample) -> BetaEstimate:
    """Slope of the market-on-investment regression, drawn in the same plane.

    Equals ``ols / corr**2``; undefined (a vertical line) when ``corr == 0``.
    """
    _require_market_spread(sample)
    if sample.corr == 0.0:
        raise UndefinedSlopeError("reverse regression is vertical at zero correlation")
    return _through_centroid(sample, sample.sd_i / (sample.corr * sample.sd_m),
                             "reverse")


def beta_star(sample: PairedSample) -> BetaEstimate:
    """Relative volatility signed by the correlation: ``sign(r) sd_i / sd_m``.

    At exactly zero correlation the sign is undefined and
    :class:`SignUndefinedError` is raised rather than guessing one.
    """
    _require_market_spread(sample)
    if sample.sd_i <= 0.0:
        raise DegenerateSampleError("investment")
    if sample.corr == 0.0:
        raise SignUndefinedError("beta* has no sign when the correlation is exactly 0")
    return _through_centroid(sample,
                             math.copysign(sample.sd_i / sample.sd_m, sample.corr),
                             "gmfr")


def volatility_ratio(sample: PairedSample) -> float:
    """Unsigned ``sd_i / sd_m``."""
    _require_market_spread(sample)
    return sample.sd_i / sample.sd_m


def fit_all(sample: PairedSample) -> dict[str, BetaEstimate]:
    """OLS, reverse and GMFR fits keyed by estimator name."""
    return {"ols": ols_beta(sample), "reverse": reverse_beta(sample),
            "gmfr": beta_star(sample)}


def _check_weight(weight: float) -> None:
    if not 0.0 <= weight <= 1.0:
        raise DomainError(f"weight must lie in [0, 1], got {weight}")


def blume_beta(ols: BetaEstimate | float, weight: float) -> float:
    """Shrink standard beta toward one: ``w * beta + (1 - w)``.

    ``weight`` is required; no default is assumed.
    """
    _check_weight(weight)
    slope = ols.slope if isinstance(ols, BetaEstimate) else float(ols)
    return weight * slope + (1.0 - weight)


def vasicek_beta(ols: BetaEstimate | float, cross_section_mean: float,
                 weight: float) -> float:
    """Shrink standard beta toward a cross-sectional mean beta."""
    _check_weight(weight)
    slope = ols.slope if isinstance(ols, BetaEstimate) else float(ols)
    return weight * slope + (1.0 - weight) * cross_section_mean
