import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from gmfrbeta.errors import DomainError, InsufficientDataError
from gmfrbeta.estimators import beta_star, moments
from gmfrbeta.inference import approx_ci, exact_ci, slope_stderr, t_critical
from gmfrbeta.synthetic import moment_matched_sample


def sample(n, r, ratio=2.0, seed=0, **kw):
    return moments(*moment_matched_sample(n, r, ratio, rng=seed, **kw))


# -- t critical values -------------------------------------------------------------

@pytest.mark.parametrize("level, df, table", [
    (0.95, 10, 2.228), (0.99, 1, 63.657), (0.95, 58, 2.002), (0.90, 5, 2.015),
])
def test_t_critical_table_values(level, df, table):
    assert t_critical(level, df) == pytest.approx(table, abs=5e-4)


@pytest.mark.parametrize("level", [0.5, 0.8, 0.9, 0.95, 0.99, 0.999])
@pytest.mark.parametrize("df", [1, 2, 3, 7, 30, 58, 498, 10_000])
def test_t_critical_matches_scipy_quantile(level, df):
    assert t_critical(level, df) == pytest.approx(stats.t.ppf(0.5 + level / 2, df),
                                                  rel=1e-9)


def test_t_critical_normal_limit():
    assert t_critical(0.95, 1e9) == pytest.approx(1.959964, abs=1e-6)


@pytest.mark.parametrize("level, df", [(0.0, 10), (1.0, 10), (1.5, 10), (0.95, 0)])
def test_t_critical_domain(level, df):
    with pytest.raises(DomainError):
        t_critical(level, df)


# -- standard error ----------------------------------------------------------------

def test_stderr_vanishes_on_exact_line():
    s = moments([0, 1, 2, 3, 4], [1, 3, 5, 7, 9])
    assert slope_stderr(s, beta_star(s)) == 0.0


def test_stderr_zero_correlation_factor():
    s = sample(11, 0.0, seed=2)
    assert abs(s.corr) < 1e-12
    assert slope_stderr(s, 2.0) == pytest.approx(2.0 * math.sqrt(1 / 9), rel=1e-12)


def test_stderr_fixture(att_pairs):
    s = moments(*att_pairs)
    assert slope_stderr(s, beta_star(s)) == pytest.approx(2.34 * math.sqrt(0.8976 / 58),
                                                          rel=1e-9)
    assert slope_stderr(s, beta_star(s)) == pytest.approx(0.2911, abs=5e-5)


def test_stderr_agrees_with_bootstrap(att_pairs):
    # loose cross-check: resampling pairs gives a spread of beta* of the same size
    x, y = att_pairs
    rng = np.random.default_rng(11)
    idx = rng.integers(0, len(x), size=(4000, len(x)))
    xb, yb = x[idx], y[idx]
    r = np.array([np.corrcoef(a, b)[0, 1] for a, b in zip(xb, yb)])
    bs = np.sign(r) * yb.std(axis=1, ddof=1) / xb.std(axis=1, ddof=1)
    s = moments(x, y)
    # sign flips are rare at r = 0.32, n = 60 but inflate the spread; use a robust scale
    q75, q25 = np.percentile(bs, [75, 25])
    assert (q75 - q25) / 1.349 == pytest.approx(slope_stderr(s, beta_star(s)), rel=0.35)


def test_stderr_strict_form(att_pairs):
    s = moments(*att_pairs)
    assert slope_stderr(s, -2.34, strict=True) == pytest.approx(
        math.sqrt(2.34 * 0.8976 / 58), rel=1e-9)


def test_stderr_needs_three_points():
    s = moments([0, 1, 2], [0, 1, 3])
    object.__setattr__(s, "market", s.market[:2])  # simulate a 2-point sample
    with pytest.raises(InsufficientDataError):
        slope_stderr(s, 1.0)


# -- intervals ----------------------------------------------------------------------

def test_fixture_approx_interval(att_pairs):
    s = moments(*att_pairs)
    ci = approx_ci(s, beta_star(s))
    half = 2.0017175 * 2.34 * math.sqrt(0.8976 / 58)
    assert (ci.lower, ci.upper) == pytest.approx((2.34 - half, 2.34 + half), rel=1e-7)
    assert ci.method == "approximate" and ci.level == 0.95


def test_fixture_exact_interval(att_pairs):
    s = moments(*att_pairs)
    ci = exact_ci(s, beta_star(s))
    assert ci.b_factor == pytest.approx(0.06200, abs=5e-5)
    assert ci.lower == pytest.approx(1.829, abs=5e-4)
    assert ci.upper == pytest.approx(2.994, abs=5e-4)
    assert 2.34 in ci


def test_intervals_collapse_on_exact_line():
    s = moments([0, 1, 2, 3, 4], [9, 7, 5, 3, 1])
    b = beta_star(s)
    for ci in (approx_ci(s, b), exact_ci(s, b)):
        assert ci.lower == ci.upper == pytest.approx(-2.0)


def test_negative_slope_interval_is_ordered():
    s = sample(40, -0.5, seed=4)
    ci = exact_ci(s, beta_star(s))
    assert ci.lower < beta_star(s).slope < ci.upper < 0
    assert ci.lower * ci.upper == pytest.approx(beta_star(s).slope ** 2, rel=1e-10)


def test_wider_at_higher_level(att_pairs):
    s = moments(*att_pairs)
    b = beta_star(s)
    assert exact_ci(s, b, 0.99).half_width > exact_ci(s, b, 0.95).half_width
    assert approx_ci(s, b, 0.99).half_width > approx_ci(s, b, 0.9).half_width


def test_shrinks_with_sample_size():
    widths = [exact_ci(s, beta_star(s)).half_width
              for s in (sample(n, 0.5, seed=n) for n in (20, 80, 320))]
    assert widths[0] > widths[1] > widths[2]


@settings(max_examples=150, deadline=None)
@given(st.integers(3, 400), st.floats(0.01, 0.999), st.sampled_from([-1, 1]),
       st.floats(0.1, 10.0), st.sampled_from([0.8, 0.9, 0.95, 0.99]),
       st.integers(0, 10_000))
def test_interval_algebra(n, r, sign, ratio, level, seed):
    s = sample(n, sign * r, ratio, seed=seed)
    b = beta_star(s).slope
    ex, ap = exact_ci(s, b, level), approx_ci(s, b, level)
    assert ex.lower * ex.upper == pytest.approx(b * b, rel=1e-10)
    # multiplicative symmetry for the exact form, additive for the approximate form
    assert ex.upper / b == pytest.approx(b / ex.lower, rel=1e-10)
    assert ap.midpoint == pytest.approx(b, rel=1e-12)
    assert ex.half_width == pytest.approx(ap.half_width, rel=1e-10)
    assert ex.b_factor == pytest.approx(ap.b_factor)
