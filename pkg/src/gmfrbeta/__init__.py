"""Beta estimation with the geometric mean functional relationship.

Besides the standard (OLS) beta and the reverse-regression slope, the
package computes ``beta* = sign(r) * sd_i / sd_m``: the slope of the line
that minimises the summed areas of the triangles between points and line.
Its magnitude is exactly the relative volatility of the investment.
"""

from gmfrbeta.analytics import RankTable, StabilityReport, rank_assets, stability
from gmfrbeta.errors import (
    AlignmentError,
    BetaError,
    ConvergenceError,
    DegenerateLineError,
    DegenerateSampleError,
    DomainError,
    EstimatorMismatchError,
    InsufficientDataError,
    ParseError,
    SignUndefinedError,
    UndefinedSlopeError,
)
from gmfrbeta.estimators import (
    BetaEstimate,
    PairedSample,
    beta_star,
    blume_beta,
    fit_all,
    moments,
    ols_beta,
    reverse_beta,
    vasicek_beta,
    volatility_ratio,
)
from gmfrbeta.inference import (
    ConfidenceInterval,
    approx_ci,
    exact_ci,
    slope_stderr,
    t_critical,
)
from gmfrbeta.oracle import LineCandidate, area_objective, minimize_area
from gmfrbeta.returns import (
    PriceSeries,
    ReturnSeries,
    RiskFreeSeries,
    align,
    excess_returns,
    read_prices,
    read_risk_free,
    returns_from_prices,
)
from gmfrbeta.risk import RiskDecomposition, decompose

__version__ = "0.1.0"
