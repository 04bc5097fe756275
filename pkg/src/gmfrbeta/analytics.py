"""Cross-asset tables: beta vs beta* rankings and two-period stability."""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from gmfrbeta.errors import AlignmentError, BetaError, DomainError


@dataclass(frozen=True)
class RankRow:
    asset: str
    beta: float
    beta_star: float
    rank_by_beta_star: int
    rank_by_beta: int

    @property
    def rank_difference(self) -> int:
        # positive: riskier under beta* than standard beta suggested
        return self.rank_by_beta - self.rank_by_beta_star


@dataclass(frozen=True)
class RankTable:
    """Rows ordered by beta* rank; rank 1 is the largest value.

    ``ties`` maps a column name to groups of asset ids that share a value
    and were separated by the id tie-break.
    """

    rows: tuple[RankRow, ...]
    ties: Mapping[str, tuple[tuple[str, ...], ...]] = field(default_factory=dict)

    def row(self, asset: str) -> RankRow:
        for r in self.rows:
            if r.asset == asset:
                return r
        raise KeyError(asset)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["asset", "beta", "beta_star", "beta_star_rank",
                         "beta_rank", "rank_difference"])
        for r in self.rows:
            writer.writerow([r.asset, f"{r.beta:.4f}", f"{r.beta_star:.4f}",
                             r.rank_by_beta_star, r.rank_by_beta, r.rank_difference])
        return buf.getvalue()

    def to_text(self) -> str:
        header = ("asset", "beta", "beta*", "beta* rank", "beta rank", "difference")
        body = [(r.asset, f"{r.beta:.4f}", f"{r.beta_star:.4f}",
                 str(r.rank_by_beta_star), str(r.rank_by_beta),
                 f"{r.rank_difference:+d}" if r.rank_difference else "0")
                for r in self.rows]
        widths = [max(len(line[k]) for line in [header, *body])
                  for k in range(len(header))]
        lines = []
        for line in [header, *body]:
            cells = [line[0].ljust(widths[0])]
            cells += [c.rjust(w) for c, w in zip(line[1:], widths[1:])]
            lines.append("  ".join(cells).rstrip())
        for column, groups in self.ties.items():
            for group in groups:
                lines.append(f"tie in {column}: {', '.join(group)} (broken by id)")
        return "\n".join(lines) + "\n"


def _descending_ranks(values: dict[str, float]) -> tuple[dict[str, int], list]:
    order = sorted(values, key=lambda a: (-values[a], a))
    ranks = {a: k + 1 for k, a in enumerate(order)}
    ties, group = [], [order[0]]
    for a in order[1:]:
        if values[a] == values[group[-1]]:
            group.append(a)
        else:
            if len(group) > 1:
                ties.append(tuple(group))
            group = [a]
    if len(group) > 1:
        ties.append(tuple(group))
    return ranks, ties


def rank_assets(estimates: Sequence[tuple[str, float, float]]) -> RankTable:
    """Rank assets by beta* and by beta, largest first.

    ``estimates`` holds ``(asset_id, beta, beta_star)`` triples. Equal values
    are ordered by asset id so the table does not depend on input order.
    """
    if not estimates:
        raise DomainError("nothing to rank")
    ids = [str(a) for a, _, _ in estimates]
    if len(set(ids)) != len(ids):
        dupes = sorted({a for a in ids if ids.count(a) > 1})
        raise BetaError(f"duplicate asset ids: {', '.join(dupes)}")
    beta = {str(a): float(b) for a, b, _ in estimates}
    star = {str(a): float(s) for a, _, s in estimates}
    if not all(math.isfinite(v) for v in [*beta.values(), *star.values()]):
        raise DomainError("betas must be finite")
    star_rank, star_ties = _descending_ranks(star)
    beta_rank, beta_ties = _descending_ranks(beta)
    rows = tuple(RankRow(a, beta[a], star[a], star_rank[a], beta_rank[a])
                 for a in sorted(ids, key=star_rank.__getitem__))
    ties = {}
    if star_ties:
        ties["beta_star"] = tuple(star_ties)
    if beta_ties:
        ties["beta"] = tuple(beta_ties)
    return RankTable(rows, ties)


@dataclass(frozen=True)
class StabilityReport:
    """Absolute percentage change of each estimate from period 1 to 2.

    ``changes[estimator][asset]`` is ``100 |e2 - e1| / |e1|``; the change is
    measured relative to period 1, so swapping the periods changes values.
    """

    changes: Mapping[str, Mapping[str, float]]
    mean_change: Mapping[str, float]
    periods: tuple = ()
    excluded: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def to_rows(self) -> list[tuple[str, str, float]]:
        return [(est, asset, v) for est in sorted(self.changes)
                for asset, v in sorted(self.changes[est].items())]


def _by_estimator(period) -> dict[str, dict[str, float]]:
    out: dict[str, dict[str, float]] = {}
    for asset, estimate in period:
        per_est = estimate if isinstance(estimate, Mapping) else {"estimate": estimate}
        for est, value in per_est.items():
            out.setdefault(est, {})[str(asset)] = float(value)
    return out


def stability(period1: Sequence[tuple], period2: Sequence[tuple],
              periods: tuple = ()) -> StabilityReport:
    """Compare estimates of the same assets over two periods.

    Each period is a sequence of ``(asset_id, estimate)`` where ``estimate``
    is a number or a mapping ``{estimator_name: value}``. Assets with a zero
    period-1 estimate cannot be expressed as a percentage change; they are
    excluded with a warning.
    """
    first, second = _by_estimator(period1), _by_estimator(period2)
    if set(first) != set(second):
        raise AlignmentError("the two periods report different estimators")
    changes, means, excluded = {}, {}, {}
    for est in sorted(first):
        if set(first[est]) != set(second[est]):
            diff = sorted(set(first[est]) ^ set(second[est]))
            raise AlignmentError(f"asset sets differ between periods: {', '.join(diff)}")
        per_asset, skipped = {}, []
        for asset in sorted(first[est]):
            e1, e2 = first[est][asset], second[est][asset]
            if e1 == 0.0:
                skipped.append(asset)
                continue
            per_asset[asset] = 100.0 * abs(e2 - e1) / abs(e1)
        if skipped:
            warnings.warn(f"{est}: zero period-1 estimate for {', '.join(skipped)}; "
                          "excluded from the stability comparison", RuntimeWarning,
                          stacklevel=2)
            excluded[est] = tuple(skipped)
        changes[est] = per_asset
        means[est] = (math.fsum(per_asset.values()) / len(per_asset)
                      if per_asset else math.nan)
    return StabilityReport(changes, means, tuple(periods), excluded)
