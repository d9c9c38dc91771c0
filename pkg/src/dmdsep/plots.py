"""Log-log error plots rendered directly to SVG.

Figures only display harness output, so they are written as plain SVG
text (no plotting dependency) plus a small gnuplot script for anyone who
prefers to restyle them.  One file per (suite, error kind), one series
per (method, tau), with a dashed reference-slope guide line anchored just
above the first series.
"""

import math
import os

from .experiments import mean_errors, read_records

# reference decay exponents from the theory, per suite and x-axis
GUIDE_SLOPES = {
    "cosine": -1.0,
    "arma": -1.0,
    "missing-q": -1.5,
    "missing-n": -0.5,
    "amuse-compare": -1.0,
}

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_KINDS = ("q_sq_error", "s_sq_error", "eig_sq_error")

_W, _H = 640, 480
_ML, _MR, _MT, _MB = 70, 20, 30, 50


def _decades(lo, hi):
    first = math.floor(math.log10(lo))
    last = math.ceil(math.log10(hi))
    return [10.0**e for e in range(first, last + 1)]


class _LogCanvas:
    """Maps log-log data coordinates onto the SVG viewport."""

    def __init__(self, xlim, ylim):
        self.x0, self.x1 = math.log10(xlim[0]), math.log10(xlim[1])
        self.y0, self.y1 = math.log10(ylim[0]), math.log10(ylim[1])
        if self.x1 == self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 == self.y0:
            self.y1 = self.y0 + 1.0

    def x(self, v):
        f = (math.log10(v) - self.x0) / (self.x1 - self.x0)
        return _ML + f * (_W - _ML - _MR)

    def y(self, v):
        f = (math.log10(v) - self.y0) / (self.y1 - self.y0)
        return _H - _MB - f * (_H - _MT - _MB)


def _svg_figure(title, xlabel, series, guide):
    """Assemble one SVG chart.

    ``series`` is a list of (label, [(x, y), ...]); ``guide`` is either
    None or (slope, [(x, y), (x, y)]).
    """
    xs = [x for _, pts in series for x, _ in pts]
    ys = [y for _, pts in series for _, y in pts]
    if guide:
        xs += [x for x, _ in guide[1]]
        ys += [y for _, y in guide[1]]
    canvas = _LogCanvas((min(xs), max(xs)), (min(ys) / 2.0, max(ys) * 2.0))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" '
        f'height="{_H - _MT - _MB}" fill="none" stroke="black"/>',
        f'<text x="{_W / 2:.0f}" y="18" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
        f'<text x="{_W / 2:.0f}" y="{_H - 10}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>',
    ]
    for tick in _decades(min(xs), max(xs)):
        if not (canvas.x0 <= math.log10(tick) <= canvas.x1):
            continue
        px = canvas.x(tick)
        parts.append(
            f'<line x1="{px:.1f}" y1="{_H - _MB}" x2="{px:.1f}" '
            f'y2="{_H - _MB + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px:.1f}" y="{_H - _MB + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">1e{int(math.log10(tick))}</text>'
        )
    for tick in _decades(min(ys) / 2.0, max(ys) * 2.0):
        if not (canvas.y0 <= math.log10(tick) <= canvas.y1):
            continue
        py = canvas.y(tick)
        parts.append(
            f'<line x1="{_ML - 5}" y1="{py:.1f}" x2="{_ML}" y2="{py:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_ML - 8}" y="{py + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">1e{int(math.log10(tick))}</text>'
        )
    for idx, (label, pts) in enumerate(series):
        color = _COLORS[idx % len(_COLORS)]
        coords = " ".join(f"{canvas.x(x):.1f},{canvas.y(y):.1f}" for x, y in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="1.5" class="series"/>'
        )
        for x, y in pts:
            parts.append(
                f'<circle cx="{canvas.x(x):.1f}" cy="{canvas.y(y):.1f}" '
                f'r="3" fill="{color}"/>'
            )
        ly = _MT + 16 + 16 * idx
        parts.append(
            f'<line x1="{_W - _MR - 130}" y1="{ly}" x2="{_W - _MR - 105}" '
            f'y2="{ly}" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{_W - _MR - 100}" y="{ly + 4}" font-family="sans-serif" '
            f'font-size="11">{label}</text>'
        )
    if guide:
        slope, pts = guide
        coords = " ".join(f"{canvas.x(x):.1f},{canvas.y(y):.1f}" for x, y in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="#555555" '
            f'stroke-width="1.2" stroke-dasharray="6,4" class="guide"/>'
        )
        gx, gy = pts[0]
        parts.append(
            f'<text x="{canvas.x(gx) + 6:.1f}" y="{canvas.y(gy) - 6:.1f}" '
            f'font-family="sans-serif" font-size="11" fill="#555555">'
            f"slope {slope:g}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts)


def _gnuplot_script(suite, records_path, out_dir):
    xlabel = "q" if suite == "missing-q" else "n"
    xcol = 6 if suite == "missing-q" else 2
    lines = [
        "# regenerate the error plots for suite "
        f"{suite} from {os.path.basename(records_path)}",
        "set datafile separator ','",
        "set logscale xy",
        f"set xlabel '{xlabel}'",
        "set key top right",
    ]
    for kind, col in (("q_sq_error", 9), ("s_sq_error", 10), ("eig_sq_error", 11)):
        lines.append(f"set ylabel '{kind}'")
        lines.append(
            f"plot '{os.path.basename(records_path)}' using {xcol}:{col} "
            f"with points title '{kind}'"
        )
        lines.append("pause -1")
    return "\n".join(lines) + "\n"


def emit_plots(records_path, out_dir):
    """Render one SVG per (suite, error kind) from a records CSV.

    The guide line uses the suite's theoretical reference slope, anchored
    a factor of two above the first series' starting point; it is drawn
    only when the grid has at least two distinct x values.  Returns the
    list of written file paths.
    """
    records = read_records(records_path)
    os.makedirs(out_dir, exist_ok=True)
    suites = sorted({rec.suite for rec in records})
    written = []
    for suite in suites:
        suite_records = [r for r in records if r.suite == suite]
        xlabel = "q" if suite == "missing-q" else "n"
        for kind in _KINDS:
            means = mean_errors(suite_records, field=kind)
            series = []
            for (method, tau), cells in sorted(means.items()):
                pts = [
                    (x, e)
                    for x, e in cells.items()
                    if e > 0.0 and math.isfinite(e)
                ]
                if pts:
                    series.append((f"{method} tau={tau}", pts))
            if not series:
                continue
            guide = None
            slope = GUIDE_SLOPES.get(suite)
            first = series[0][1]
            if slope is not None and len({x for _, pts in series for x, _ in pts}) >= 2:
                x_lo, x_hi = first[0][0], first[-1][0]
                y_lo = 2.0 * first[0][1]
                guide = (
                    slope,
                    [(x_lo, y_lo), (x_hi, y_lo * (x_hi / x_lo) ** slope)],
                )
            path = os.path.join(out_dir, f"{suite}_{kind}.svg")
            with open(path, "w") as fh:
                fh.write(_svg_figure(f"{suite}: {kind}", xlabel, series, guide))
            written.append(path)
        script = os.path.join(out_dir, f"{suite}_plots.gnuplot")
        with open(script, "w") as fh:
            fh.write(_gnuplot_script(suite, records_path, out_dir))
        written.append(script)
    if not written:
        raise ValueError("records contain no positive finite errors to plot")
    return written
