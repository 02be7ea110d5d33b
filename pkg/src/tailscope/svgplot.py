"""SVG rendering of log-log analysis plots.

Plots are emitted as standalone SVG with numeric path data, so regression
tests can parse marker and polyline coordinates and compare them against
direct model evaluation instead of comparing pixels.  Four plot kinds are
supported: the fan-in and fan-out histograms, the fitted-models overlay,
and the empirical CCDF.

All coordinates are written with three decimals, and every polyline vertex
satisfies  pixel_y = transform(model(x))  exactly (points falling below the
visible range are dropped, never clamped).
"""

from __future__ import annotations

import math

import numpy as np

from .binning import bin_representatives
from .errors import PlotError
from .fitting import get_family
from .report import AnalysisReport

WIDTH = 820
HEIGHT = 480
MARGIN_L = 70
MARGIN_R = 250
MARGIN_T = 40
MARGIN_B = 55
CURVE_POINTS = 64

MARKER_COLOR = "#1f3a93"
MODEL_COLORS = {
    "uniform": "#e07b39",
    "normal": "#2e8b57",
    "half-normal": "#8e44ad",
    "exponential": "#c0392b",
    "laplace": "#16a085",
    "power-law": "#111111",
}

PLOT_KINDS = ("fanin-hist", "fanout-hist", "fits-overlay", "ccdf")


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _bin_width_at(x: float) -> float:
    """Width of the power-of-2 bin containing x."""
    _, e = math.frexp(x)
    return 2.0 ** (e - 1)


def power_law_curve_value(pl, x: float) -> float:
    return 10.0 ** (pl.intercept_log10k + pl.slope_n * math.log10(x))


def family_curve_value(fit, total: int, x: float, density: bool) -> float:
    """Expected bin count (or count density) of a censored fit at x."""
    fam = get_family(fit.family)
    pdf = float(fam.pdf(fit.params, np.asarray([x]))[0])
    y = total * pdf
    if not density:
        y *= _bin_width_at(x)
    return y


class _LogLogFrame:
    def __init__(self, xs, ys, title, xlabel, ylabel):
        self.lx0 = math.floor(min(math.log10(x) for x in xs))
        self.lx1 = math.ceil(max(math.log10(x) for x in xs))
        self.ly0 = math.floor(min(math.log10(y) for y in ys)) - 1
        self.ly1 = math.ceil(max(math.log10(y) for y in ys))
        if self.lx1 == self.lx0:
            self.lx1 += 1
        if self.ly1 == self.ly0:
            self.ly1 += 1
        self.title = title
        self.xlabel = xlabel
        self.ylabel = ylabel
        self.pw = WIDTH - MARGIN_L - MARGIN_R
        self.ph = HEIGHT - MARGIN_T - MARGIN_B

    def px(self, x: float) -> float:
        return MARGIN_L + (math.log10(x) - self.lx0) / (self.lx1 - self.lx0) * self.pw

    def py(self, y: float) -> float:
        return MARGIN_T + (self.ly1 - math.log10(y)) / (self.ly1 - self.ly0) * self.ph

    @property
    def y_floor(self) -> float:
        return 10.0 ** self.ly0

    def header(self) -> list[str]:
        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
            f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{self.pw}" height="{self.ph}" '
            f'fill="none" stroke="#333333" stroke-width="1"/>',
            f'<text x="{MARGIN_L}" y="{MARGIN_T - 14}" font-family="monospace" '
            f'font-size="15" fill="#111111">{self.title}</text>',
        ]
        for d in range(self.lx0, self.lx1 + 1):
            x = self.px(10.0 ** d)
            parts.append(f'<line x1="{_fmt(x)}" y1="{MARGIN_T}" x2="{_fmt(x)}" '
                         f'y2="{MARGIN_T + self.ph}" stroke="#dddddd" stroke-width="1"/>')
            parts.append(f'<text x="{_fmt(x)}" y="{MARGIN_T + self.ph + 18}" '
                         f'font-family="monospace" font-size="11" text-anchor="middle" '
                         f'fill="#333333">1e{d}</text>')
        for d in range(self.ly0, self.ly1 + 1):
            y = self.py(10.0 ** d)
            parts.append(f'<line x1="{MARGIN_L}" y1="{_fmt(y)}" x2="{MARGIN_L + self.pw}" '
                         f'y2="{_fmt(y)}" stroke="#dddddd" stroke-width="1"/>')
            parts.append(f'<text x="{MARGIN_L - 8}" y="{_fmt(y + 4)}" font-family="monospace" '
                         f'font-size="11" text-anchor="end" fill="#333333">1e{d}</text>')
        parts.append(f'<text x="{MARGIN_L + self.pw / 2}" y="{HEIGHT - 12}" '
                     f'font-family="monospace" font-size="12" text-anchor="middle" '
                     f'fill="#111111">{self.xlabel}</text>')
        parts.append(f'<text x="18" y="{MARGIN_T + self.ph / 2}" font-family="monospace" '
                     f'font-size="12" text-anchor="middle" fill="#111111" '
                     f'transform="rotate(-90 18 {MARGIN_T + self.ph / 2})">{self.ylabel}</text>')
        return parts

    def markers(self, points, label) -> tuple[list[str], tuple[str, str]]:
        parts = [f'<g class="markers" fill="{MARKER_COLOR}">']
        for x, y in points:
            parts.append(f'<circle cx="{_fmt(self.px(x))}" cy="{_fmt(self.py(y))}" r="3.5"/>')
        parts.append("</g>")
        return parts, (label, MARKER_COLOR)

    def curve(self, name, fn, x_lo, x_hi) -> tuple[list[str], tuple[str, str]]:
        color = MODEL_COLORS[name.split("(")[0]] if name.split("(")[0] in MODEL_COLORS \
            else "#555555"
        ratio = (x_hi / x_lo) ** (1.0 / (CURVE_POINTS - 1))
        pts = []
        for i in range(CURVE_POINTS):
            x = x_lo * ratio ** i
            y = fn(x)
            if y >= self.y_floor and math.isfinite(y):
                pts.append(f"{_fmt(self.px(x))},{_fmt(self.py(y))}")
        body = []
        if pts:
            body.append(f'<polyline class="model" data-model="{name.split("(")[0]}" '
                        f'points="{" ".join(pts)}" fill="none" stroke="{color}" '
                        f'stroke-width="1.8"/>')
        return body, (name, color)

    def legend(self, entries) -> list[str]:
        parts = ['<g class="legend">']
        x = MARGIN_L + self.pw + 16
        y = MARGIN_T + 10
        for label, color in entries:
            parts.append(f'<rect x="{x}" y="{y - 9}" width="12" height="12" fill="{color}"/>')
            parts.append(f'<text x="{x + 18}" y="{y + 2}" font-family="monospace" '
                         f'font-size="11" fill="#111111">{label}</text>')
            y += 20
        parts.append("</g>")
        return parts


def _family_label(fit) -> str:
    names = get_family(fit.family).param_names
    inner = ", ".join(f"{n}={v:.4g}" for n, v in zip(names, fit.params))
    return f"{fit.family}({inner})"


def _hist_points(report: AnalysisReport, quantity: str):
    hist = report.histograms[quantity]
    if hist.total == 0:
        raise PlotError(f"plot: histogram for {quantity} is empty")
    return bin_representatives(hist, representative=report.options["representative"],
                               density=report.options["density"]), hist


def emit_plot(report: AnalysisReport, which: str) -> bytes:
    """Render one plot kind from a report as SVG bytes."""
    if which not in PLOT_KINDS:
        raise PlotError(f"plot: unknown plot kind {which!r}, expected one of {PLOT_KINDS}")
    density = report.options["density"]
    if which in ("fanin-hist", "fanout-hist"):
        quantity = "dest_fanin" if which == "fanin-hist" else "source_fanout"
        points, _ = _hist_points(report, quantity)
        ylab = "bin count density" if density else "bin count"
        frame = _LogLogFrame([p[0] for p in points], [p[1] for p in points],
                             f"{quantity} frequencies (power-of-2 bins)", quantity, ylab)
        parts = frame.header()
        legend = []
        body, entry = frame.markers(points, "binned data")
        parts += body
        legend.append(entry)
        if report.quantity == quantity and report.power_law is not None:
            pl = report.power_law
            label = f"power-law(n={pl.slope_n:.4g}, log10k={pl.intercept_log10k:.4g})"
            body, entry = frame.curve(label, lambda x: power_law_curve_value(pl, x),
                                      points[0][0], points[-1][0])
            parts += body
            legend.append(entry)
        parts += frame.legend(legend)
    elif which == "fits-overlay":
        if not report.censored_fits:
            raise PlotError("plot: report holds no censored fits to overlay")
        points, hist = _hist_points(report, report.quantity)
        total = hist.total
        ylab = "bin count density" if density else "bin count"
        frame = _LogLogFrame([p[0] for p in points], [p[1] for p in points],
                             f"model fits over {report.quantity}", report.quantity, ylab)
        parts = frame.header()
        legend = []
        body, entry = frame.markers(points, "binned data")
        parts += body
        legend.append(entry)
        x_lo, x_hi = points[0][0], points[-1][0]
        for fit in report.censored_fits:
            fn = (lambda f: lambda x: family_curve_value(f, total, x, density))(fit)
            body, entry = frame.curve(_family_label(fit), fn, x_lo, x_hi)
            parts += body
            legend.append(entry)
        if report.power_law is not None:
            pl = report.power_law
            label = f"power-law(n={pl.slope_n:.4g}, log10k={pl.intercept_log10k:.4g})"
            body, entry = frame.curve(label, lambda x: power_law_curve_value(pl, x), x_lo, x_hi)
            parts += body
            legend.append(entry)
        parts += frame.legend(legend)
    else:  # ccdf
        if report.ccdf_points is None:
            raise PlotError("plot: report holds no CCDF (empty input)")
        pts = [(float(x), p) for x, p in report.ccdf_points.points]
        frame = _LogLogFrame([p[0] for p in pts], [p[1] for p in pts],
                             f"empirical CCDF of {report.quantity}",
                             report.quantity, "P(X >= x)")
        parts = frame.header()
        body, entry = frame.markers(pts, f"ccdf (n={report.ccdf_points.n})")
        parts += body
        parts += frame.legend([entry])
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
