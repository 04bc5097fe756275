"""Plot files: plain SVG written directly, plus a CSV of the plotted values.

Two figures per asset:

* ``<asset>_scatter.svg``: market vs investment returns, one ``circle.point``
  per observation, one ``line.fit`` per estimator and a ``polygon.triangle``
  per point showing its least-areas triangle against the GMFR line.
* ``<asset>_timeseries.svg``: both return series over time as polylines.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Mapping

import numpy as np

from gmfrbeta.estimators import BetaEstimate, PairedSample

WIDTH, HEIGHT, PAD = 640, 480, 48
_COLOURS = {"ols": "#1f77b4", "reverse": "#d62728", "gmfr": "#2ca02c"}


class _Frame:
    """Affine map from data coordinates to SVG pixels."""

    def __init__(self, xs, ys):
        x0, x1 = float(np.min(xs)), float(np.max(xs))
        y0, y1 = float(np.min(ys)), float(np.max(ys))
        self.x0, self.xs = x0, (WIDTH - 2 * PAD) / ((x1 - x0) or 1.0)
        self.y0, self.ys = y0, (HEIGHT - 2 * PAD) / ((y1 - y0) or 1.0)

    def px(self, x):
        return PAD + (x - self.x0) * self.xs

    def py(self, y):
        return HEIGHT - PAD - (y - self.y0) * self.ys


def _f(v: float) -> str:
    return f"{v:.2f}"


def _svg(body: list[str], title: str) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">')
    return "\n".join([head, f"<title>{title}</title>",
                      f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
                      *body, "</svg>", ""])


def scatter_svg(sample: PairedSample, fits: Mapping[str, BetaEstimate],
                title: str = "") -> str:
    x, y = sample.market, sample.investment
    lo, hi = float(x.min()), float(x.max())
    ends = {k: (f.intercept + f.slope * lo, f.intercept + f.slope * hi)
            for k, f in fits.items()}
    frame = _Frame(x, np.concatenate([y, np.ravel(list(ends.values()))]))
    body = []
    gmfr = fits.get("gmfr")
    if gmfr is not None:
        for xi, yi in zip(x, y):
            # legs: vertical to the line at xi, horizontal to the line at yi
            y_on = gmfr.intercept + gmfr.slope * xi
            x_on = (yi - gmfr.intercept) / gmfr.slope
            pts = " ".join(f"{_f(frame.px(a))},{_f(frame.py(b))}"
                           for a, b in ((xi, yi), (xi, y_on), (x_on, yi)))
            body.append(f'<polygon class="triangle" points="{pts}" '
                        'fill="#2ca02c" fill-opacity="0.12" stroke="none"/>')
    for name in sorted(fits):
        y_lo, y_hi = ends[name]
        body.append(f'<line class="fit" data-estimator="{name}" '
                    f'x1="{_f(frame.px(lo))}" y1="{_f(frame.py(y_lo))}" '
                    f'x2="{_f(frame.px(hi))}" y2="{_f(frame.py(y_hi))}" '
                    f'stroke="{_COLOURS.get(name, "black")}" stroke-width="1.5"/>')
    for xi, yi in zip(x, y):
        body.append(f'<circle class="point" cx="{_f(frame.px(xi))}" '
                    f'cy="{_f(frame.py(yi))}" r="2.5" fill="black"/>')
    return _svg(body, title)


def timeseries_svg(sample: PairedSample, title: str = "") -> str:
    n = sample.n
    t = np.arange(n, dtype=float)
    both = np.concatenate([sample.market, sample.investment])
    frame = _Frame(np.array([0.0, max(n - 1, 1)]), both)
    body = []
    for cls, series, dash in (("index", sample.market, ' stroke-dasharray="6 4"'),
                              ("asset", sample.investment, "")):
        pts = " ".join(f"{_f(frame.px(a))},{_f(frame.py(b))}" for a, b in zip(t, series))
        body.append(f'<polyline class="{cls}" points="{pts}" fill="none" '
                    f'stroke="black" stroke-width="1.2"{dash}/>')
    return _svg(body, title)


def emit_plot_data(sample: PairedSample, fits: Mapping[str, BetaEstimate],
                   directory, name: str = "asset") -> list[Path]:
    """Write the two SVG figures and ``<name>_plot.csv``; return the paths."""
    if not fits:
        raise ValueError("need at least one fit to plot")
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    scatter = directory / f"{name}_scatter.svg"
    series = directory / f"{name}_timeseries.svg"
    table = directory / f"{name}_plot.csv"
    scatter.write_text(scatter_svg(sample, fits, f"{name}: fitted lines"), encoding="utf-8")
    series.write_text(timeseries_svg(sample, f"{name}: returns over time"), encoding="utf-8")
    names = sorted(fits)
    dates = sample.dates or tuple(range(1, sample.n + 1))
    with table.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["date", "market", "investment", *(f"{k}_fitted" for k in names)])
        for d, xi, yi in zip(dates, sample.market, sample.investment):
            fitted = [repr(float(fits[k].intercept + fits[k].slope * xi)) for k in names]
            writer.writerow([str(d), repr(float(xi)), repr(float(yi)), *fitted])
    return [scatter, series, table]
