"""Command-line batch analysis.

    gmfrbeta --index sp500.csv --asset T.csv --asset IBM.csv --verify

Each asset file is a ``date,price`` CSV; the asset id is the file stem.
Exit status: 0 when every asset succeeds, 2 when some fail, 1 when all do.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Literal, Sequence

from gmfrbeta.analytics import rank_assets, stability
from gmfrbeta.errors import BetaError
from gmfrbeta.estimators import beta_star, fit_all, volatility_ratio
from gmfrbeta.inference import approx_ci, exact_ci
from gmfrbeta.oracle import minimize_area
from gmfrbeta.plotting import emit_plot_data
from gmfrbeta.returns import (
    ReturnSeries,
    align,
    excess_returns,
    read_prices,
    read_risk_free,
    returns_from_prices,
)
from gmfrbeta.risk import decompose

log = logging.getLogger("gmfrbeta")

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAILED, EXIT_PARTIAL = 0, 1, 2

DateRange = tuple[date | None, date | None]


@dataclass(frozen=True)
class AnalysisConfig:
    assets: tuple[Path, ...]
    index: Path
    risk_free: Path | None = None
    use_excess: bool = False
    return_method: Literal["simple", "log"] = "simple"
    level: float = 0.95
    periods: tuple[DateRange, DateRange] | None = None
    report_format: Literal["text", "csv", "json"] = "text"
    verify: bool = False
    strict_eq10: bool = False
    plot_dir: Path | None = None
    rf_periods_per_year: float | None = None

    def __post_init__(self):
        if not 0.0 < self.level < 1.0:
            raise ValueError("confidence level must lie in (0, 1)")
        if self.use_excess and self.risk_free is None:
            raise ValueError("--excess needs --risk-free")
        if self.periods is not None:
            first, second = sorted(self.periods, key=lambda p: p[0] or date.min)
            if first[1] is None or second[0] is None or first[1] >= second[0]:
                raise ValueError("stability periods must not overlap")


def parse_range(text: str) -> DateRange:
    """``START:END`` with ISO dates; either side may be empty."""
    start, sep, end = text.partition(":")
    if not sep:
        raise ValueError(f"date range {text!r} must look like START:END")
    parse = lambda s: date.fromisoformat(s) if s.strip() else None  # noqa: E731
    first, last = parse(start), parse(end)
    if first and last and first > last:
        raise ValueError(f"date range {text!r} ends before it starts")
    return first, last


def _r(v: float) -> float:
    return round(float(v), 4) + 0.0  # +0.0 folds -0.0 into 0.0


def _sig(v: float) -> float:
    return float(f"{v:.4g}")


class _Index:
    def __init__(self, config: AnalysisConfig):
        prices = read_prices(config.index)
        self.returns = returns_from_prices(prices, config.return_method)
        self.name = Path(config.index).stem
        self.rf = None
        self.rf_nonzero = False
        if config.use_excess:
            rf = read_risk_free(config.risk_free, config.rf_periods_per_year)
            self.rf = rf
            self.rf_nonzero = bool((rf.rates != 0).any())

    def to_excess(self, series: ReturnSeries) -> ReturnSeries:
        if self.rf is None:
            return series
        if not self.rf_nonzero:
            # subtracting zero is the identity; keep the plain basis label
            return series
        return excess_returns(series, self.rf.select(series.ends))


def _analyse(path: Path, index: _Index, config: AnalysisConfig) -> dict:
    asset = read_prices(path)
    investment = index.to_excess(returns_from_prices(asset, config.return_method))
    market = index.to_excess(index.returns)
    sample = align(market, investment)
    fits = fit_all(sample)
    star = fits["gmfr"]
    approx = approx_ci(sample, star, config.level, strict=config.strict_eq10)
    exact = exact_ci(sample, star, config.level)
    risk = decompose(sample, fits["ols"])
    row = {
        "asset": path.stem,
        "n": sample.n,
        "mean_m": _r(sample.mean_m),
        "mean_i": _r(sample.mean_i),
        "sd_m": _r(sample.sd_m),
        "sd_i": _r(sample.sd_i),
        "corr": _r(sample.corr),
        "volatility_ratio": _r(volatility_ratio(sample)),
        "beta": _r(fits["ols"].slope),
        "alpha": _r(fits["ols"].intercept),
        "beta_reverse": _r(fits["reverse"].slope),
        "alpha_reverse": _r(fits["reverse"].intercept),
        "beta_star": _r(star.slope),
        "alpha_star": _r(star.intercept),
        "ci_approx_lower": _r(approx.lower),
        "ci_approx_upper": _r(approx.upper),
        "ci_exact_lower": _r(exact.lower),
        "ci_exact_upper": _r(exact.upper),
        "t_critical": _r(exact.t_critical),
        "b_factor": _r(exact.b_factor),
        "var_total": _r(risk.total_variance),
        "var_systematic": _r(risk.systematic),
        "var_unsystematic": _r(risk.unsystematic),
        "systematic_share": _r(risk.systematic_share),
    }
    if config.verify:
        line = minimize_area(sample)
        scale = max(abs(star.intercept), sample.sd_i)
        row["oracle_beta_star"] = _r(line.slope)
        row["oracle_slope_rel_delta"] = _sig(abs(line.slope - star.slope) / abs(star.slope))
        row["oracle_intercept_rel_delta"] = _sig(abs(line.intercept - star.intercept) / scale)
    if config.plot_dir is not None:
        emit_plot_data(sample, fits, config.plot_dir, path.stem)
    periods, period_error = [], None
    if config.periods is not None:
        try:
            for first, last in config.periods:
                part = align(market.between(first, last),
                             investment.between(first, last))
                periods.append({"ols": fit_all(part)["ols"].slope,
                                "gmfr": beta_star(part).slope})
        except BetaError as exc:
            periods, period_error = [], exc
    return {"row": row, "periods": periods, "period_error": period_error}


def _label(rng: DateRange) -> str:
    first, last = rng
    return f"{first.isoformat() if first else ''}:{last.isoformat() if last else ''}"


def build_report(config: AnalysisConfig) -> tuple[dict, int]:
    """Run every asset through the pipeline and assemble the report dict."""
    index = _Index(config)
    rows, failures, per_period = [], [], {}
    for path in sorted((Path(p) for p in config.assets), key=lambda p: (p.stem, str(p))):
        try:
            result = _analyse(path, index, config)
        except (BetaError, ValueError, OSError) as exc:
            log.warning("%s: %s", path, exc)
            failures.append({"asset": path.stem, "error": f"{type(exc).__name__}: {exc}"})
            continue
        rows.append(result["row"])
        if result["period_error"] is not None:
            exc = result["period_error"]
            log.warning("%s: stability skipped: %s", path, exc)
            failures.append({"asset": path.stem,
                             "error": f"stability: {type(exc).__name__}: {exc}"})
        if result["periods"]:
            per_period[path.stem] = result["periods"]

    metadata = {
        "index": index.name,
        "return_method": config.return_method,
        "basis": "excess" if index.rf_nonzero else "plain",
        "confidence_level": config.level,
        "stderr_form": "strict" if config.strict_eq10 else "squared",
        "units": "rates are decimal fractions per period",
    }
    if index.rf_nonzero:
        metadata["risk_free"] = Path(config.risk_free).stem
        metadata["rf_periods_per_year"] = config.rf_periods_per_year

    report = {"schema_version": SCHEMA_VERSION, "metadata": metadata,
              "assets": rows, "ranking": [], "stability": None, "failures": failures}
    if rows:
        table = rank_assets([(r["asset"], r["beta"], r["beta_star"]) for r in rows])
        report["ranking"] = [
            {"asset": t.asset, "beta": t.beta, "beta_star": t.beta_star,
             "beta_star_rank": t.rank_by_beta_star, "beta_rank": t.rank_by_beta,
             "rank_difference": t.rank_difference} for t in table.rows]
        report["ties"] = {k: [list(g) for g in v] for k, v in sorted(table.ties.items())}
    if config.periods is not None and per_period:
        assets = sorted(per_period)
        rep = stability([(a, per_period[a][0]) for a in assets],
                        [(a, per_period[a][1]) for a in assets],
                        periods=tuple(_label(p) for p in config.periods))
        report["stability"] = {
            "periods": list(rep.periods),
            "mean_abs_pct_change": {k: _r(v) for k, v in sorted(rep.mean_change.items())},
            "abs_pct_change": {k: {a: _r(v) for a, v in sorted(rep.changes[k].items())}
                               for k in sorted(rep.changes)},
            "excluded": {k: list(v) for k, v in sorted(rep.excluded.items())},
        }
    if not rows:
        status = EXIT_FAILED
    elif failures:
        status = EXIT_PARTIAL
    else:
        status = EXIT_OK
    return report, status


# -- rendering ----------------------------------------------------------------

_RATE_FIELDS = {"mean_m", "mean_i", "sd_m", "sd_i", "alpha", "alpha_reverse",
                "alpha_star"}


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return f"{v:.4f}" if abs(v) >= 1e-3 or v == 0 else f"{v:.4g}"
    return str(v)


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if report["assets"]:
        columns = list(report["assets"][0])
        writer.writerow(columns)
        for row in report["assets"]:
            writer.writerow([_fmt(row[c]) for c in columns])
    if report["ranking"]:
        buf.write("\n# ranking\n")
        columns = list(report["ranking"][0])
        writer.writerow(columns)
        for row in report["ranking"]:
            writer.writerow([_fmt(row[c]) for c in columns])
    if report["stability"]:
        buf.write("\n# stability (absolute % change, period 1 to period 2)\n")
        writer.writerow(["estimator", "asset", "abs_pct_change"])
        for est, changes in report["stability"]["abs_pct_change"].items():
            for asset, v in changes.items():
                writer.writerow([est, asset, _fmt(v)])
        for est, v in report["stability"]["mean_abs_pct_change"].items():
            writer.writerow([est, "MEAN", _fmt(v)])
    if report["failures"]:
        buf.write("\n# failures\n")
        writer.writerow(["asset", "error"])
        for f in report["failures"]:
            writer.writerow([f["asset"], f["error"]])
    return buf.getvalue()


def _table(header: Sequence[str], rows: list[Sequence[str]]) -> list[str]:
    widths = [max(len(r[k]) for r in [header, *rows]) for k in range(len(header))]
    out = []
    for r in [header, *rows]:
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        out.append("  ".join(cells).rstrip())
    return out


def render_text(report: dict) -> str:
    meta = report["metadata"]
    lines = [f"gmfrbeta report (schema {report['schema_version']})",
             f"index: {meta['index']}   returns: {meta['return_method']}, {meta['basis']}"
             f"   confidence: {meta['confidence_level']:g}"]
    if "risk_free" in meta:
        lines.append(f"risk-free: {meta['risk_free']} "
                     f"(periods per year: {meta['rf_periods_per_year']})")
    lines.append("")
    if report["assets"]:
        pct = lambda v: f"{100.0 * v:.4f}"  # noqa: E731
        header = ["asset", "n", "mean_m %", "mean_i %", "sd_m %", "sd_i %", "r",
                  "beta", "alpha %", "beta_rev", "beta*", "alpha* %",
                  "approx CI", "exact CI", "syst. share"]
        rows = []
        for a in report["assets"]:
            rows.append([
                a["asset"], str(a["n"]), pct(a["mean_m"]), pct(a["mean_i"]),
                pct(a["sd_m"]), pct(a["sd_i"]), _fmt(a["corr"]), _fmt(a["beta"]),
                pct(a["alpha"]), _fmt(a["beta_reverse"]), _fmt(a["beta_star"]),
                pct(a["alpha_star"]),
                f"[{_fmt(a['ci_approx_lower'])}, {_fmt(a['ci_approx_upper'])}]",
                f"[{_fmt(a['ci_exact_lower'])}, {_fmt(a['ci_exact_upper'])}]",
                _fmt(a["systematic_share"])])
        lines += _table(header, rows)
        if "oracle_slope_rel_delta" in report["assets"][0]:
            lines += ["", "least-areas check (numerical minimum vs closed form):"]
            lines += _table(["asset", "beta* oracle", "slope rel delta", "intercept rel delta"],
                            [[a["asset"], _fmt(a["oracle_beta_star"]),
                              f"{a['oracle_slope_rel_delta']:.2e}",
                              f"{a['oracle_intercept_rel_delta']:.2e}"]
                             for a in report["assets"]])
        lines += ["", "Rates in percent per period. The systematic share comes from "
                      "var(Ri) = beta^2 var(Rm) + var(e), which assumes a constant beta; "
                      "betas drift over time, so read it as descriptive only."]
    if report["ranking"]:
        lines += ["", "ranking (1 = largest):"]
        lines += _table(["asset", "beta", "beta*", "beta* rank", "beta rank", "difference"],
                        [[r["asset"], _fmt(r["beta"]), _fmt(r["beta_star"]),
                          str(r["beta_star_rank"]), str(r["beta_rank"]),
                          f"{r['rank_difference']:+d}" if r["rank_difference"] else "0"]
                         for r in report["ranking"]])
        for column, groups in report.get("ties", {}).items():
            for g in groups:
                lines.append(f"tie in {column}: {', '.join(g)} (broken by id)")
    if report["stability"]:
        st = report["stability"]
        lines += ["", f"stability {st['periods'][0]} -> {st['periods'][1]} "
                      "(absolute % change):"]
        ests = list(st["abs_pct_change"])
        assets = sorted({a for v in st["abs_pct_change"].values() for a in v})
        rows = [[a] + [_fmt(st["abs_pct_change"][e].get(a, math.nan)) for e in ests]
                for a in assets]
        rows.append(["MEAN"] + [_fmt(st["mean_abs_pct_change"][e]) for e in ests])
        lines += _table(["asset", *ests], rows)
    if report["failures"]:
        lines += ["", "failures:"]
        lines += [f"  {f['asset']}: {f['error']}" for f in report["failures"]]
    return "\n".join(lines) + "\n"


RENDERERS = {"text": render_text, "csv": render_csv, "json": render_json}


def run(config: AnalysisConfig) -> tuple[str, int]:
    """Produce the rendered report and the process exit status."""
    try:
        report, status = build_report(config)
    except (BetaError, ValueError, OSError) as exc:
        report = {"schema_version": SCHEMA_VERSION,
                  "metadata": {"index": Path(config.index).stem},
                  "assets": [], "ranking": [], "stability": None,
                  "failures": [{"asset": "*", "error": f"{type(exc).__name__}: {exc}"}]}
        if config.report_format == "text":
            return f"error: {exc}\n", EXIT_FAILED
        return RENDERERS[config.report_format](report), EXIT_FAILED
    return RENDERERS[config.report_format](report), status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gmfrbeta",
        description="Standard, reverse-regression and GMFR (relative volatility) "
                    "betas with confidence intervals.")
    p.add_argument("--asset", nargs="+", action="extend", required=True, type=Path,
                   metavar="PATH", help="asset price CSV(s) with header date,price")
    p.add_argument("--index", required=True, type=Path, metavar="PATH",
                   help="market index price CSV")
    p.add_argument("--risk-free", type=Path, metavar="PATH",
                   help="risk-free CSV with header date,rate (rate per interval end)")
    p.add_argument("--rf-periods-per-year", type=float, metavar="N",
                   help="risk-free rates are annual; divide by N")
    p.add_argument("--excess", action="store_true", help="use excess returns")
    p.add_argument("--log-returns", action="store_true", help="log instead of simple returns")
    p.add_argument("--level", type=float, default=0.95, help="confidence level (default 0.95)")
    p.add_argument("--stability", nargs=2, metavar=("RANGE1", "RANGE2"),
                   help="two START:END date ranges to compare")
    p.add_argument("--format", choices=sorted(RENDERERS), default="text", dest="report_format")
    p.add_argument("--verify", action="store_true",
                   help="confirm beta* by numerically minimising the triangle areas")
    p.add_argument("--strict-eq10", action="store_true",
                   help="approximate CI with s^2 = |beta*|(1-r^2)/(n-2), first-power form")
    p.add_argument("--plot", type=Path, metavar="DIR", help="write SVG plots and CSV here")
    p.add_argument("-o", "--output", type=Path, metavar="PATH",
                   help="write the report here instead of stdout")
    return p


def config_from_args(args: argparse.Namespace) -> AnalysisConfig:
    return AnalysisConfig(
        assets=tuple(args.asset), index=args.index, risk_free=args.risk_free,
        use_excess=args.excess,
        return_method="log" if args.log_returns else "simple",
        level=args.level,
        periods=(tuple(parse_range(r) for r in args.stability) if args.stability else None),
        report_format=args.report_format, verify=args.verify,
        strict_eq10=args.strict_eq10, plot_dir=args.plot,
        rf_periods_per_year=args.rf_periods_per_year)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        config = config_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))
    document, status = run(config)
    if args.output is not None:
        args.output.write_text(document, encoding="utf-8")
    else:
        sys.stdout.write(document)
    return status


if __name__ == "__main__":
    sys.exit(main())
