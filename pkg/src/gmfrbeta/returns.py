"""Price series, rates of return and excess returns.

Rates are plain fractions throughout (0.10, not 10). Two returns need
three prices: slope estimation needs at least three observations.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Literal, Sequence

import numpy as np

from gmfrbeta.errors import (
    AlignmentError,
    DomainError,
    InsufficientDataError,
    ParseError,
)
from gmfrbeta.estimators import MIN_PAIRS, PairedSample, moments

ReturnKind = Literal["plain", "excess"]
ReturnMethod = Literal["simple", "log"]


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


def _as_date(value) -> date:
    if isinstance(value, date):
        return value
    return date.fromisoformat(str(value).strip())


@dataclass(frozen=True)
class PriceSeries:
    dates: tuple[date, ...]
    prices: np.ndarray

    def __post_init__(self):
        if len(self.dates) != len(self.prices):
            raise ValueError("dates and prices differ in length")
        if any(b <= a for a, b in zip(self.dates, self.dates[1:])):
            raise DomainError("price dates must be strictly increasing")
        if not np.all(np.isfinite(self.prices)) or np.any(self.prices <= 0):
            raise DomainError("prices must be finite and positive")

    @classmethod
    def from_pairs(cls, observations: Sequence[tuple]) -> "PriceSeries":
        dates = tuple(_as_date(d) for d, _ in observations)
        return cls(dates, _frozen([p for _, p in observations]))

    def __len__(self) -> int:
        return len(self.dates)


@dataclass(frozen=True)
class ReturnSeries:
    """Per-interval rates; interval k runs from ``starts[k]`` to ``ends[k]``."""

    starts: tuple[date, ...]
    ends: tuple[date, ...]
    rates: np.ndarray
    kind: ReturnKind = "plain"
    method: ReturnMethod = "simple"

    def __post_init__(self):
        if not len(self.starts) == len(self.ends) == len(self.rates):
            raise ValueError("starts, ends and rates differ in length")
        for k in range(len(self.ends) - 1):
            if self.ends[k] > self.starts[k + 1]:
                raise DomainError("return intervals overlap")

    def __len__(self) -> int:
        return len(self.rates)

    @property
    def intervals(self) -> list[tuple[date, date]]:
        return list(zip(self.starts, self.ends))

    def between(self, first: date | None, last: date | None) -> "ReturnSeries":
        """Intervals lying entirely inside ``[first, last]``."""
        keep = [k for k in range(len(self))
                if (first is None or self.starts[k] >= first)
                and (last is None or self.ends[k] <= last)]
        return ReturnSeries(tuple(self.starts[k] for k in keep),
                            tuple(self.ends[k] for k in keep),
                            _frozen(self.rates[keep]), self.kind, self.method)


@dataclass(frozen=True)
class RiskFreeSeries:
    """Risk-free rate per return interval, keyed by interval end date."""

    dates: tuple[date, ...]
    rates: np.ndarray

    def __post_init__(self):
        if len(self.dates) != len(self.rates):
            raise ValueError("dates and rates differ in length")

    @classmethod
    def from_pairs(cls, observations: Sequence[tuple],
                   periods_per_year: float | None = None) -> "RiskFreeSeries":
        """Build from ``(date, rate)`` pairs.

        If ``periods_per_year`` is given, rates are annualised and are
        divided by it to obtain per-period rates.
        """
        rates = np.array([r for _, r in observations], dtype=np.float64)
        if periods_per_year is not None:
            if periods_per_year <= 0:
                raise DomainError("periods_per_year must be positive")
            rates = rates / periods_per_year
        return cls(tuple(_as_date(d) for d, _ in observations), _frozen(rates))

    def select(self, dates: Sequence[date]) -> "RiskFreeSeries":
        lookup = dict(zip(self.dates, self.rates))
        missing = [d for d in dates if d not in lookup]
        if missing:
            raise AlignmentError(
                f"no risk-free rate for {len(missing)} interval(s), first {missing[0]}")
        return RiskFreeSeries(tuple(dates), _frozen([lookup[d] for d in dates]))


def returns_from_prices(prices: PriceSeries,
                        method: ReturnMethod = "simple") -> ReturnSeries:
    """Rates of return between consecutive price observations.

    ``simple`` gives ``(p[k+1] - p[k]) / p[k]``; ``log`` gives
    ``log(p[k+1] / p[k])``.
    """
    if len(prices) < 2:
        raise InsufficientDataError("need at least 2 prices to form a return")
    p = np.asarray(prices.prices, dtype=np.float64)
    if np.any(p <= 0):
        raise DomainError("prices must be positive")
    if method == "simple":
        rates = (p[1:] - p[:-1]) / p[:-1]
    elif method == "log":
        rates = np.log(p[1:] / p[:-1])
    else:
        raise ValueError(f"unknown return method {method!r}")
    return ReturnSeries(prices.dates[:-1], prices.dates[1:], _frozen(rates),
                        "plain", method)


def excess_returns(returns: ReturnSeries, rf: RiskFreeSeries) -> ReturnSeries:
    """Subtract the risk-free rate interval by interval.

    ``rf`` must carry exactly one rate per return interval, dated by the
    interval's end; a rate that varies over time shifts each point by a
    different amount.
    """
    if returns.kind != "plain":
        raise ValueError("excess_returns expects plain returns")
    if len(rf.rates) != len(returns):
        raise AlignmentError(
            f"{len(returns)} return intervals but {len(rf.rates)} risk-free rates")
    if tuple(rf.dates) != tuple(returns.ends):
        raise AlignmentError("risk-free dates do not match return interval ends")
    return ReturnSeries(returns.starts, returns.ends,
                        _frozen(returns.rates - rf.rates), "excess", returns.method)


def align(market: ReturnSeries, investment: ReturnSeries) -> PairedSample:
    """Pair the intervals both series share, in date order.

    Intervals present in only one series are dropped, never imputed.
    """
    if market.kind != investment.kind:
        raise AlignmentError("cannot pair plain with excess returns")
    if market.method != investment.method:
        raise AlignmentError("cannot pair simple with log returns")
    m_index = {iv: k for k, iv in enumerate(market.intervals)}
    i_index = {iv: k for k, iv in enumerate(investment.intervals)}
    common = sorted(set(m_index) & set(i_index))
    if len(common) < MIN_PAIRS:
        raise InsufficientDataError(
            f"only {len(common)} common return intervals; need {MIN_PAIRS}")
    x = [market.rates[m_index[iv]] for iv in common]
    y = [investment.rates[i_index[iv]] for iv in common]
    return moments(x, y, dates=tuple(end for _, end in common))


# -- CSV ingestion ------------------------------------------------------------

def _read_rows(path, value_column: str) -> list[tuple[date, float]]:
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            header = [h.strip() for h in (reader.fieldnames or [])]
            if header != ["date", value_column]:
                raise ParseError(path, f"expected header 'date,{value_column}', "
                                       f"got {','.join(header) or 'nothing'}")
            rows = []
            for lineno, row in enumerate(reader, start=2):
                raw_date = (row.get("date") or "").strip()
                raw_value = (row.get(value_column) or "").strip()
                try:
                    value = float(raw_value)
                    if not math.isfinite(value):
                        raise ValueError(raw_value)
                    rows.append((date.fromisoformat(raw_date), value))
                except (TypeError, ValueError):
                    raise ParseError(path, f"line {lineno}: cannot parse "
                                           f"{raw_date!r}, {raw_value!r}") from None
    except OSError as exc:
        raise ParseError(path, exc.strerror or str(exc)) from exc
    if not rows:
        raise ParseError(path, "no data rows")
    return rows


def read_prices(path) -> PriceSeries:
    """Read a ``date,price`` CSV with ISO-8601 dates."""
    rows = _read_rows(path, "price")
    try:
        return PriceSeries.from_pairs(rows)
    except DomainError as exc:
        raise ParseError(path, str(exc)) from None


def read_risk_free(path, periods_per_year: float | None = None) -> RiskFreeSeries:
    """Read a ``date,rate`` CSV; see :meth:`RiskFreeSeries.from_pairs`."""
    return RiskFreeSeries.from_pairs(_read_rows(path, "rate"), periods_per_year)


def write_prices(path, prices: PriceSeries) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["date", "price"])
        for d, p in zip(prices.dates, prices.prices):
            writer.writerow([d.isoformat(), repr(float(p))])


def write_risk_free(path, rf: RiskFreeSeries) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["date", "rate"])
        for d, r in zip(rf.dates, rf.rates):
            writer.writerow([d.isoformat(), repr(float(r))])
