"""Least-areas line fitting by direct numerical minimisation.

Each point and a candidate line form a right triangle whose legs are the
point's vertical and horizontal deviations from the line. The GMFR line
minimises the summed triangle areas. :func:`minimize_area` finds that
minimum numerically from the raw data, without using the closed form, so
it can independently confirm :func:`gmfrbeta.estimators.beta_star`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gmfrbeta.errors import ConvergenceError, DegenerateLineError, SignUndefinedError
from gmfrbeta.estimators import PairedSample, moments, ols_beta, reverse_beta
from gmfrbeta.kernels import backend


@dataclass(frozen=True)
class LineCandidate:
    slope: float
    intercept: float

    def swapped(self) -> "LineCandidate":
        """The same line with the axes exchanged: x = (y - a) / b."""
        if self.slope == 0.0:
            raise DegenerateLineError("a horizontal line has no inverse")
        return LineCandidate(1.0 / self.slope, -self.intercept / self.slope)


@dataclass(frozen=True)
class AreaFit:
    """Full output of :func:`minimize_area`."""

    line: LineCandidate
    objective: float
    sweeps: int
    seed: str


def _xy(pairs) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(pairs, PairedSample):
        return (np.ascontiguousarray(pairs.market),
                np.ascontiguousarray(pairs.investment))
    if isinstance(pairs, tuple) and len(pairs) == 2:
        x, y = pairs
    else:
        arr = np.asarray(pairs, dtype=np.float64).reshape(-1, 2)
        x, y = arr[:, 0], arr[:, 1]
    return (np.ascontiguousarray(x, dtype=np.float64),
            np.ascontiguousarray(y, dtype=np.float64))


def area_objective(pairs, line: LineCandidate) -> float:
    """Sum over points of ``0.5 * |vertical dev| * |horizontal dev|``.

    ``pairs`` is a :class:`PairedSample`, an ``(x, y)`` tuple of arrays, or
    a sequence of ``(x, y)`` points.
    """
    if line.slope == 0.0 or not math.isfinite(line.slope):
        raise DegenerateLineError("area objective needs a finite non-zero slope")
    x, y = _xy(pairs)
    return float(backend.area_objective(x, y, float(line.slope),
                                        float(line.intercept)))


def minimize_area(pairs, *, xtol: float = 1e-7, ftol: float = 1e-8,
                  max_sweeps: int = 500, full_output: bool = False):
    """Minimise :func:`area_objective` over slope and intercept.

    Coordinate descent with golden-section line searches, started from the
    OLS line and again from the reverse-regression line; the better of the
    two runs is returned.

    Parameters
    ----------
    pairs
        As for :func:`area_objective`; at least three points, neither
        coordinate constant.
    xtol
        Per-sweep movement below which the search stops: relative for the
        slope, relative to the data range for the intercept.
    ftol
        Relative objective decrease per sweep below which the search stops.
    max_sweeps
        Sweep budget per seed.
    full_output
        Return an :class:`AreaFit` instead of the bare line.

    Raises
    ------
    ConvergenceError
        Neither seed converged; ``best`` carries the best line found.
    """
    sample = pairs if isinstance(pairs, PairedSample) else moments(*_xy(pairs))
    x, y = _xy(sample)
    seeds = [("ols", ols_beta(sample))]
    if sample.corr != 0.0:
        seeds.append(("reverse", reverse_beta(sample)))

    best = None
    any_converged = False
    for name, seed in seeds:
        if seed.slope == 0.0:
            continue
        slope, intercept, f, sweeps, converged = backend.minimize_area(
            x, y, float(seed.slope), float(seed.intercept),
            float(xtol), float(ftol), int(max_sweeps))
        fit = AreaFit(LineCandidate(float(slope), float(intercept)), float(f),
                      int(sweeps), name)
        any_converged |= bool(converged)
        if best is None or fit.objective < best.objective:
            best = fit
    if best is None:
        raise SignUndefinedError("zero correlation: the least-areas slope has no sign")
    if not any_converged:
        raise ConvergenceError(f"no convergence within {max_sweeps} sweeps",
                               best=best.line)
    return best if full_output else best.line
