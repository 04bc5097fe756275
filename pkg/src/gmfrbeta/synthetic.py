"""Synthetic samples with prescribed moments, and published reference data.

``moment_matched_sample`` builds a sample whose *sample* correlation and
standard-deviation ratio are exactly the requested values (up to rounding):
the investment series is a combination of the standardised market series
and a residual made exactly orthogonal to it.
"""

from __future__ import annotations

from datetime import date

import numpy as np

from gmfrbeta.returns import PriceSeries


def _standardise(v: np.ndarray) -> np.ndarray:
    v = v - v.mean()
    return v / v.std(ddof=1)


def moment_matched_sample(n: int, corr: float, ratio: float, *, sd_m: float = 0.05,
                          mean_m: float = 0.0, mean_i: float = 0.0,
                          rng=None) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(market, investment)`` with sample corr and sd ratio fixed.

    ``sd_i = ratio * sd_m`` exactly; the means are also exact.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if not -1.0 <= corr <= 1.0:
        raise ValueError("corr must lie in [-1, 1]")
    rng = np.random.default_rng(rng)
    u = _standardise(rng.standard_normal(n))
    w = rng.standard_normal(n)
    w = w - w.mean()
    w = _standardise(w - (w @ u) / (u @ u) * u)
    z = corr * u + np.sqrt(1.0 - corr * corr) * w
    return mean_m + sd_m * u, mean_i + ratio * sd_m * z


def bivariate_normal(n: int, corr: float, sd_m: float, sd_i: float, *,
                     size: int = 1, mean_m: float = 0.0, mean_i: float = 0.0,
                     rng=None) -> tuple[np.ndarray, np.ndarray]:
    """``size`` independent samples of ``n`` pairs; arrays of shape (size, n)."""
    rng = np.random.default_rng(rng)
    e1 = rng.standard_normal((size, n))
    e2 = rng.standard_normal((size, n))
    x = mean_m + sd_m * e1
    y = mean_i + sd_i * (corr * e1 + np.sqrt(1.0 - corr * corr) * e2)
    return x, y


def month_starts(first: date, count: int) -> tuple[date, ...]:
    out = []
    y, m = first.year, first.month
    for _ in range(count):
        out.append(date(y, m, 1))
        y, m = (y + 1, 1) if m == 12 else (y, m + 1)
    return tuple(out)


def prices_from_returns(rates, *, first: date = date(1995, 1, 1),
                        start_price: float = 100.0) -> PriceSeries:
    """Monthly price path whose simple returns are ``rates``."""
    rates = np.asarray(rates, dtype=np.float64)
    prices = start_price * np.concatenate([[1.0], np.cumprod(1.0 + rates)])
    return PriceSeries(month_starts(first, len(prices)), prices)


# Reference betas for 30 large US stocks, 60 monthly returns:
# (ticker, company, beta, beta*, beta* rank, beta rank, rank difference).
TABLE1 = (
    ("INTC", "Intel", 1.08, 2.78, 1, 12, 11),
    ("HWP", "Hewlett-Packard Co.", 1.28, 2.69, 2, 5, 3),
    ("AA", "Alcoa Inc.", 1.13, 2.58, 3, 10, 7),
    ("MSFT", "Microsoft", 1.45, 2.56, 4, 3, -1),
    ("C", "Citigroup Inc.", 1.67, 2.37, 5, 1, -4),
    ("T", "AT&T Corp.", 0.75, 2.37, 6, 26, 20),
    ("IBM", "IBM", 1.03, 2.20, 7, 14, 7),
    ("CAT", "Caterpillar Inc.", 0.88, 2.15, 8, 19, 11),
    ("WMT", "Walmart", 1.15, 2.14, 9, 8, -1),
    ("IP", "International Paper Co.", 1.10, 2.12, 10, 11, 1),
    ("MO", "Philip Morris Cos. Inc.", 0.55, 2.04, 11, 28, 17),
    ("HD", "Home Depot Inc.", 0.97, 2.02, 12, 15, 3),
    ("KO", "Coca-Cola Co.", 1.07, 2.01, 13, 13, 0),
    ("MRK", "Merck & Co. Inc.", 0.86, 1.97, 14, 20, 6),
    ("UTX", "United Technologies", 1.49, 1.97, 15, 2, -13),
    ("BA", "Boeing Co.", 0.89, 1.91, 16, 18, 2),
    ("DIS", "Disney", 0.78, 1.91, 17, 25, 8),
    ("HON", "Honeywell International", 1.14, 1.89, 18, 9, -9),
    ("GM", "General Motors Corp.", 0.93, 1.85, 19, 17, -2),
    ("AXP", "American Express Co.", 1.34, 1.83, 20, 4, -16),
    ("DD", "Du Pont de Nemours", 0.83, 1.80, 21, 22, 1),
    ("JPM", "J.P. Morgan Chase & Co.", 1.15, 1.74, 22, 7, -15),
    ("SBC", "SBC Communications", 0.82, 1.72, 23, 23, 0),
    ("MMM", "3M", 0.62, 1.66, 24, 27, 3),
    ("JNJ", "Johnson & Johnson", 0.96, 1.64, 25, 16, -9),
    ("MCD", "McDonald's Corp.", 0.81, 1.64, 26, 24, -2),
    ("GE", "General Electric Co.", 1.22, 1.62, 27, 6, -21),
    ("EK", "Eastman Kodak Co.", 0.29, 1.59, 28, 30, 2),
    ("PG", "Procter & Gamble Co.", 0.84, 1.56, 29, 21, -8),
    ("XOM", "Exxon Mobil Corp.", 0.50, 1.11, 30, 29, -1),
)
