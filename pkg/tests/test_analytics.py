import random

import pytest

from gmfrbeta.analytics import rank_assets, stability
from gmfrbeta.errors import AlignmentError, BetaError, DomainError
from gmfrbeta.synthetic import TABLE1

PUBLISHED = [(t, b, s) for t, _, b, s, *_ in TABLE1]


def test_table_reproduced():
    table = rank_assets(PUBLISHED)
    for ticker, _, _, _, star_rank, beta_rank, diff in TABLE1:
        row = table.row(ticker)
        assert (row.rank_by_beta_star, row.rank_by_beta, row.rank_difference) == (
            star_rank, beta_rank, diff), ticker


@pytest.mark.parametrize("ticker, expected", [
    ("INTC", (1, 12, 11)), ("T", (6, 26, 20)), ("GE", (27, 6, -21))])
def test_named_rows(ticker, expected):
    row = rank_assets(PUBLISHED).row(ticker)
    assert (row.rank_by_beta_star, row.rank_by_beta, row.rank_difference) == expected


def test_ties_are_flagged():
    ties = rank_assets(PUBLISHED).ties
    assert ("C", "T") in ties["beta_star"]
    assert ("JPM", "WMT") in ties["beta"]


def test_single_asset():
    row = rank_assets([("X", 0.9, 1.8)]).rows[0]
    assert (row.rank_by_beta_star, row.rank_by_beta, row.rank_difference) == (1, 1, 0)


def test_input_order_irrelevant():
    shuffled = PUBLISHED[:]
    random.Random(3).shuffle(shuffled)
    assert rank_assets(shuffled) == rank_assets(PUBLISHED)


def test_common_positive_scaling_keeps_ranks():
    scaled = [(a, 3.0 * b, 3.0 * s) for a, b, s in PUBLISHED]
    orig, new = rank_assets(PUBLISHED), rank_assets(scaled)
    assert [(r.asset, r.rank_by_beta_star, r.rank_by_beta) for r in new.rows] == [
        (r.asset, r.rank_by_beta_star, r.rank_by_beta) for r in orig.rows]


def test_duplicates_rejected():
    with pytest.raises(BetaError, match="X"):
        rank_assets([("X", 1, 2), ("Y", 1, 1), ("X", 0.5, 3)])


def test_bad_inputs():
    with pytest.raises(DomainError):
        rank_assets([])
    with pytest.raises(DomainError):
        rank_assets([("X", float("nan"), 1.0)])


def test_renderings():
    table = rank_assets(PUBLISHED)
    csv_text = table.to_csv()
    assert csv_text.splitlines()[0] == "asset,beta,beta_star,beta_star_rank,beta_rank,rank_difference"
    assert "INTC,1.0800,2.7800,1,12,11" in csv_text
    assert "tie in beta_star: C, T (broken by id)" in table.to_text()


# -- stability ---------------------------------------------------------------------

def test_single_change():
    assert stability([("A", 1.00)], [("A", 1.23)]).changes["estimate"]["A"] == pytest.approx(23.0)


def test_identical_periods():
    p = [("A", 1.1), ("B", -0.4)]
    rep = stability(p, p)
    assert rep.mean_change["estimate"] == 0.0
    assert set(rep.changes["estimate"].values()) == {0.0}


def test_mean_of_changes():
    rep = stability([("A", 1.0), ("B", 2.0)], [("A", 1.1), ("B", 1.4)])
    assert rep.mean_change["estimate"] == pytest.approx(20.0)


def test_several_estimators():
    rep = stability([("A", {"ols": 1.0, "gmfr": 2.0})],
                    [("A", {"ols": 0.5, "gmfr": 2.2})], periods=("p1", "p2"))
    assert rep.mean_change == pytest.approx({"ols": 50.0, "gmfr": 10.0})
    assert rep.to_rows() == [("gmfr", "A", pytest.approx(10.0)), ("ols", "A", 50.0)]


def test_relative_to_first_period():
    forward = stability([("A", 1.0)], [("A", 2.0)]).changes["estimate"]["A"]
    backward = stability([("A", 2.0)], [("A", 1.0)]).changes["estimate"]["A"]
    assert (forward, backward) == (100.0, 50.0)


def test_asset_mismatch():
    with pytest.raises(AlignmentError, match="C"):
        stability([("A", 1.0), ("B", 1.0)], [("A", 1.0), ("C", 1.0)])


def test_zero_first_period_excluded():
    with pytest.warns(RuntimeWarning, match="B"):
        rep = stability([("A", 1.0), ("B", 0.0)], [("A", 1.5), ("B", 0.3)])
    assert rep.excluded["estimate"] == ("B",)
    assert rep.mean_change["estimate"] == pytest.approx(50.0)
