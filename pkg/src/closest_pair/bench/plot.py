"""Self-contained SVG line charts of benchmark records."""

from __future__ import annotations

import math
import os
from collections import defaultdict
from statistics import fmean
from typing import Iterable, Literal, Optional, Sequence, Union
from xml.sax.saxutils import escape

from .harness import BenchRecord

__all__ = ["PLOT_KINDS", "emit_plot", "series"]

PlotKind = Literal["runtime_loglog", "iteration_ratio", "sigma_sweep"]
PLOT_KINDS: tuple[str, ...] = ("runtime_loglog", "iteration_ratio", "sigma_sweep")

WIDTH, HEIGHT = 720, 480
LEFT, RIGHT, TOP, BOTTOM = 80, 150, 40, 60
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")
# log10 of times below this are clipped (zero-duration runs)
_MIN_US = 1e-3

Series = dict[str, list[tuple[float, float]]]

DISPLAY_NAMES = {
    "ap": "cppAP", "aps": "cppAPs", "dc": "cppDC", "ps": "cppPS",
    "rl": "cppRL", "km": "cppKM", "mm": "cppMM",
}


def _grouped_mean(records: Iterable[BenchRecord], key, value) -> dict[str, dict[float, float]]:
    acc = defaultdict(lambda: defaultdict(list))
    for r in records:
        k = key(r)
        if k is not None:
            acc[r.algorithm][k].append(value(r))
    return {algo: {k: fmean(v) for k, v in by.items()} for algo, by in acc.items()}


def series(records: Sequence[BenchRecord], kind: PlotKind) -> Series:
    """Plot coordinates ``(x, y)`` per algorithm, in data units (before log scaling)."""
    if kind == "runtime_loglog":
        means = _grouped_mean(records, lambda r: r.n, lambda r: r.elapsed_us)
        return {a: sorted(m.items()) for a, m in means.items()}
    if kind == "sigma_sweep":
        means = _grouped_mean(records, lambda r: r.sigma, lambda r: r.elapsed_us)
        return {a: sorted(m.items()) for a, m in means.items()}
    if kind == "iteration_ratio":
        if len({r.n for r in records}) < 2:
            raise ValueError("insufficient series")
        means = _grouped_mean(records, lambda r: r.n, lambda r: r.counters.mean_inner_per_outer)
        out = {}
        for algo, m in means.items():
            pts = sorted(m.items())
            ratios = [(n, i2 / prev) for (_, prev), (n, i2) in zip(pts, pts[1:]) if prev > 0]
            if ratios:
                out[algo] = ratios
        if not out:
            raise ValueError("insufficient series")
        return out
    raise ValueError(f"unknown plot kind {kind!r}")


def _ticks(lo: float, hi: float) -> list[float]:
    a, b = math.floor(lo), math.ceil(hi)
    step = max(1, math.ceil((b - a) / 10))
    return [float(t) for t in range(a, b + 1, step)]


def _linear_ticks(lo: float, hi: float) -> list[float]:
    span = hi - lo
    raw = span / 6
    mag = 10 ** math.floor(math.log10(raw))
    step = min((s * mag for s in (1, 2, 5, 10) if s * mag >= raw), default=mag)
    start = math.floor(lo / step) * step
    return [start + k * step for k in range(int(round((hi - start) / step)) + 1)]


def _pad(lo: float, hi: float, frac: float = 0.05) -> tuple[float, float]:
    if hi == lo:
        return lo - 0.5, hi + 0.5
    d = (hi - lo) * frac
    return lo - d, hi + d


def emit_plot(
    records: Sequence[BenchRecord],
    kind: PlotKind,
    path: Union[str, os.PathLike, None] = None,
    title: Optional[str] = None,
) -> str:
    """Render one polyline per algorithm and return the SVG text (also written to *path*)."""
    if not records:
        raise ValueError("no records to plot")
    data = series(records, kind)
    if not data:
        raise ValueError("insufficient series")

    if kind == "sigma_sweep":
        xlabel, xfmt = "sigma (log2 scale)", "2^{:g}"
    else:
        xlabel, xfmt = "n (points, log2 scale)", "2^{:g}"
    if kind == "iteration_ratio":
        ylabel = "I2(n) / I2(n/2) (mean inner iterations per outer iteration)"
        ylog = False
    else:
        ylabel = "mean running time (microseconds, log10 scale)"
        ylog = True

    def fx(x: float) -> float:
        return math.log2(x)

    def fy(y: float) -> float:
        return math.log10(max(y, _MIN_US)) if ylog else y

    xs = [fx(x) for pts in data.values() for x, _ in pts]
    ys = [fy(y) for pts in data.values() for _, y in pts]
    x0, x1 = _pad(min(xs), max(xs))
    y0, y1 = _pad(min(ys), max(ys), 0.08)
    if not ylog:
        y0, y1 = min(y0, 0.9), max(y1, 2.1)

    pw = WIDTH - LEFT - RIGHT
    ph = HEIGHT - TOP - BOTTOM

    def px(v: float) -> float:
        return LEFT + (v - x0) / (x1 - x0) * pw

    def py(v: float) -> float:
        return TOP + ph - (v - y0) / (y1 - y0) * ph

    default_title = {
        "runtime_loglog": "Running time vs. problem size",
        "iteration_ratio": "Growth of the nested-loop iteration count",
        "sigma_sweep": "Running time vs. sigma (truncated normal)",
    }[kind]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{LEFT + pw / 2:.1f}" y="22" text-anchor="middle" font-size="15">'
        f"{escape(title or default_title)}</text>",
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]

    x_ticks = [t for t in _ticks(x0, x1) if x0 <= t <= x1]
    for t in x_ticks:
        X = px(t)
        out.append(f'<line x1="{X:.1f}" y1="{TOP + ph}" x2="{X:.1f}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{X:.1f}" y="{TOP + ph + 18}" text-anchor="middle">{escape(xfmt.format(t))}</text>')
    y_ticks = _ticks(y0, y1) if ylog else _linear_ticks(y0, y1)
    for t in (t for t in y_ticks if y0 <= t <= y1):
        Y = py(t)
        label = f"1e{t:g}" if ylog else f"{t:g}"
        out.append(f'<line x1="{LEFT - 5}" y1="{Y:.1f}" x2="{LEFT}" y2="{Y:.1f}" stroke="black"/>')
        out.append(f'<line x1="{LEFT}" y1="{Y:.1f}" x2="{LEFT + pw}" y2="{Y:.1f}" stroke="#dddddd"/>')
        out.append(f'<text x="{LEFT - 8}" y="{Y + 4:.1f}" text-anchor="end">{label}</text>')
    out.append(
        f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>'
    )
    out.append(
        f'<text x="18" y="{TOP + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {TOP + ph / 2:.1f})">{escape(ylabel)}</text>'
    )

    for k, (algo, pts) in enumerate(sorted(data.items())):
        colour = PALETTE[k % len(PALETTE)]
        coords = " ".join(f"{px(fx(x)):.2f},{py(fy(y)):.2f}" for x, y in pts)
        out.append(
            f'<polyline data-algorithm="{escape(algo)}" points="{coords}" fill="none" '
            f'stroke="{colour}" stroke-width="2"/>'
        )
        ly = TOP + 10 + 18 * k
        lx = LEFT + pw + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}">{escape(DISPLAY_NAMES.get(algo, algo))}</text>')
    out.append("</svg>")
    svg = "\n".join(out) + "\n"

    if path is not None:
        try:
            with open(path, "w", newline="\n") as fh:
                fh.write(svg)
        except OSError as exc:
            raise OSError(f"cannot write {os.fspath(path)}: {exc.strerror or exc}") from exc
    return svg
