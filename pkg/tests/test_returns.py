from datetime import date

import numpy as np
import pytest

from gmfrbeta.errors import AlignmentError, DomainError, InsufficientDataError, ParseError
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
from gmfrbeta.synthetic import month_starts


def prices(*values):
    return PriceSeries.from_pairs(list(zip(month_starts(date(2000, 1, 1), len(values)), values)))


def plain(rates, first=date(2000, 1, 1)):
    d = month_starts(first, len(rates) + 1)
    return ReturnSeries(d[:-1], d[1:], np.array(rates, dtype=float))


@pytest.mark.parametrize("values, expected", [
    ((100, 110, 99), [0.10, -0.10]),
    ((100, 100, 100), [0.0, 0.0]),
    ((50, 75), [0.50]),
])
def test_returns_from_prices(values, expected):
    r = returns_from_prices(prices(*values))
    np.testing.assert_allclose(r.rates, expected, rtol=0, atol=1e-15)
    assert r.kind == "plain"
    assert len(r) == len(values) - 1


def test_log_returns():
    r = returns_from_prices(prices(100, 110, 99), method="log")
    np.testing.assert_allclose(r.rates, [np.log(1.1), np.log(0.9)])
    assert r.method == "log"


def test_returns_need_two_prices():
    with pytest.raises(InsufficientDataError):
        returns_from_prices(prices(100))


@pytest.mark.parametrize("bad", [(100, 0, 50), (100, -1, 50)])
def test_nonpositive_prices_rejected(bad):
    with pytest.raises(DomainError):
        prices(*bad)


def test_dates_must_increase():
    with pytest.raises(DomainError):
        PriceSeries.from_pairs([("2000-02-01", 1.0), ("2000-01-01", 2.0)])


@pytest.mark.parametrize("rets, rf, expected", [
    ([0.05, 0.02], [0.01, 0.01], [0.04, 0.01]),
    ([0.05, 0.02], [0.01, 0.02], [0.04, 0.00]),
    ([0.05], [0.00], [0.05]),
])
def test_excess_returns(rets, rf, expected):
    r = plain(rets)
    out = excess_returns(r, RiskFreeSeries(r.ends, np.array(rf)))
    np.testing.assert_allclose(out.rates, expected, atol=1e-15)
    assert out.kind == "excess"


def test_excess_roundtrip_is_exact(rng):
    r = plain(rng.normal(0, 0.05, 24))
    rf = RiskFreeSeries(r.ends, rng.uniform(0, 0.01, 24))
    back = excess_returns(r, rf)
    undone = ReturnSeries(back.starts, back.ends, back.rates)  # relabel as plain
    again = excess_returns(undone, RiskFreeSeries(rf.dates, -rf.rates))
    np.testing.assert_allclose(again.rates, r.rates, rtol=0, atol=1e-16)


def test_excess_alignment_errors():
    r = plain([0.01, 0.02, 0.03])
    with pytest.raises(AlignmentError):
        excess_returns(r, RiskFreeSeries(r.ends[:2], np.zeros(2)))
    shifted = tuple(date(d.year + 1, d.month, d.day) for d in r.ends)
    with pytest.raises(AlignmentError):
        excess_returns(r, RiskFreeSeries(shifted, np.zeros(3)))


def test_annualised_risk_free_is_converted():
    rf = RiskFreeSeries.from_pairs([("2000-02-01", 0.06), ("2000-03-01", 0.12)],
                                   periods_per_year=12)
    np.testing.assert_allclose(rf.rates, [0.005, 0.01])


def test_align_intersects_and_is_symmetric():
    a = plain([0.01, 0.02, 0.03, 0.04, 0.05])
    b = plain([0.1, 0.2, 0.3, 0.4], first=date(2000, 2, 1))
    s_ab = align(a, b)
    s_ba = align(b, a)
    assert s_ab.n == s_ba.n == 4
    assert s_ab.dates == s_ba.dates
    np.testing.assert_array_equal(s_ab.market, s_ba.investment)
    np.testing.assert_array_equal(s_ab.market, [0.02, 0.03, 0.04, 0.05])


def test_align_drops_gaps_instead_of_imputing():
    a = plain([0.01, 0.02, 0.03, 0.04, 0.05])
    d = month_starts(date(2000, 1, 1), 6)
    # interval 2000-02..2000-04 spans two of a's intervals and is dropped
    b = ReturnSeries((d[0], d[1], d[3], d[4]), (d[1], d[3], d[4], d[5]),
                     np.array([0.1, 0.2, 0.4, 0.5]))
    s = align(a, b)
    np.testing.assert_array_equal(s.market, [0.01, 0.04, 0.05])


def test_align_needs_three_common_intervals():
    with pytest.raises(InsufficientDataError):
        align(plain([0.01, 0.02]), plain([0.03, 0.04]))


def test_align_refuses_mixed_kinds():
    a = plain([0.01, 0.02, 0.03])
    e = excess_returns(a, RiskFreeSeries(a.ends, np.zeros(3)))
    with pytest.raises(AlignmentError):
        align(a, e)


def test_csv_roundtrip(tmp_path):
    p = tmp_path / "p.csv"
    p.write_text("date,price\n2000-01-31,100.5\n2000-02-29,101\n2000-03-31,99.25\n")
    series = read_prices(p)
    assert series.dates[1] == date(2000, 2, 29)
    np.testing.assert_array_equal(series.prices, [100.5, 101.0, 99.25])
    rf = tmp_path / "rf.csv"
    rf.write_text("date,rate\n2000-02-29,0.004\n")
    assert read_risk_free(rf).rates[0] == 0.004


@pytest.mark.parametrize("content, fragment", [
    ("", "header"),
    ("date,price\n", "no data rows"),
    ("date,close\n2000-01-01,1\n", "header"),
    ("date,price\n2000-01-01,abc\n", "line 2"),
    ("date,price\n01/02/2000,1\n", "line 2"),
    ("date,price\n2000-01-01,1\n2000-02-01,-3\n", "positive"),
])
def test_csv_errors_name_the_file(tmp_path, content, fragment):
    p = tmp_path / "broken.csv"
    p.write_text(content)
    with pytest.raises(ParseError) as info:
        read_prices(p)
    assert "broken.csv" in str(info.value)
    assert fragment in str(info.value)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError, match="nope.csv"):
        read_prices(tmp_path / "nope.csv")
