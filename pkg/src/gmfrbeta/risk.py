"""Split of return variance into market and investment-specific parts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gmfrbeta.errors import EstimatorMismatchError
from gmfrbeta.estimators import BetaEstimate, PairedSample

CAVEAT = (
    "The split var(Ri) = beta^2 var(Rm) + var(e) assumes alpha and beta are "
    "constant over the sample and that the relation is linear. Betas are "
    "known to drift over time, which undermines the decomposition; treat "
    "these shares as descriptive of this sample only."
)


@dataclass(frozen=True)
class RiskDecomposition:
    total_variance: float
    systematic: float
    unsystematic: float
    systematic_share: float
    caveat: str = CAVEAT


def decompose(sample: PairedSample, fit: BetaEstimate) -> RiskDecomposition:
    """Decompose ``var(R_i)`` using an OLS fit.

    The residual variance is computed from the actual residuals, not by
    subtraction, so additivity is a genuine check. Only OLS fits are
    accepted: for any other slope the cross term does not vanish.
    """
    if fit.estimator != "ols":
        raise EstimatorMismatchError(
            f"risk decomposition needs an OLS fit, got {fit.estimator!r}")
    d = sample.n - 1
    total = sample.sd_i ** 2
    systematic = fit.slope ** 2 * sample.sd_m ** 2
    resid = sample.investment - (fit.intercept + fit.slope * sample.market)
    resid = resid - resid.mean()
    unsystematic = float(resid @ resid) / d
    return RiskDecomposition(total, systematic, unsystematic, systematic / total)
