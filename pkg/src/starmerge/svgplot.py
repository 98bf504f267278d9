"""Self-contained SVG emission for level-curve figures and sweep heatmaps.

No imaging dependency: plots are plain SVG text with one ``<polyline>`` per
level curve, ``<line class="whisker">`` confidence whiskers on Monte Carlo
points, ``<rect>`` heatmap cells colored by log10 of the plotted quantity,
and cross/diamond marker glyphs for operating points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from .contours import LevelCurve

WIDTH = 660
HEIGHT = 480
MARGIN_LEFT = 64
MARGIN_RIGHT = 156  # room for the legend
MARGIN_TOP = 36
MARGIN_BOTTOM = 48


@dataclass(frozen=True)
class PlotCurve:
    label: str
    color: str
    curve: LevelCurve


@dataclass(frozen=True)
class PlotMarker:
    c: float
    n: float
    glyph: str  # "cross" or "diamond"
    label: str = ""


@dataclass(frozen=True)
class Heatmap:
    """Cell values indexed [n_index][c_index]; colored by log10(value)."""

    c_values: Sequence[float]
    n_values: Sequence[float]
    values: Sequence[Sequence[float]]
    label: str = ""


def _fmt(x: float) -> str:
    return f"{x:.6g}"


class _Canvas:
    def __init__(self, c_range: Tuple[float, float], n_range: Tuple[float, float]) -> None:
        self.c0, self.c1 = c_range
        self.n0, self.n1 = n_range
        if self.c1 <= self.c0:  # degenerate range (single-point grid): pad it
            self.c0, self.c1 = self.c0 - 1.0, self.c0 + 1.0
        if self.n1 <= self.n0:
            self.n0, self.n1 = self.n0 - 1.0, self.n0 + 1.0
        self.plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
        self.plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def x(self, c: float) -> float:
        return MARGIN_LEFT + (c - self.c0) / (self.c1 - self.c0) * self.plot_w

    def y(self, n: float) -> float:
        return MARGIN_TOP + (self.n1 - n) / (self.n1 - self.n0) * self.plot_h


def _heat_color(value: float, lo: float, hi: float) -> str:
    """White (small) to dark blue (large) on a log10 scale."""
    floor = 1e-300
    t = 0.0
    if hi > lo:
        t = (math.log10(max(value, floor)) - lo) / (hi - lo)
    t = min(max(t, 0.0), 1.0)
    r = round(255 - 205 * t)
    g = round(255 - 175 * t)
    b = round(255 - 95 * t)
    return f"rgb({r},{g},{b})"


def _ticks(lo: float, hi: float, count: int = 6) -> List[float]:
    raw = (hi - lo) / max(count, 1)
    magnitude = 10 ** math.floor(math.log10(raw)) if raw > 0 else 1.0
    step = min((s for s in (magnitude, 2 * magnitude, 5 * magnitude, 10 * magnitude) if s >= raw))
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9:
        ticks.append(round(t, 9))
        t += step
    return ticks


def render_plot(
    curves: Sequence[PlotCurve] = (),
    heatmap: Optional[Heatmap] = None,
    markers: Sequence[PlotMarker] = (),
    c_range: Tuple[float, float] = (10.0, 300.0),
    n_range: Tuple[float, float] = (9.0, 21.0),
    title: Optional[str] = None,
) -> str:
    if not curves and heatmap is None:
        raise ValueError("nothing to plot: no curves and no heatmap")
    cv = _Canvas(c_range, n_range)
    parts: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]

    if heatmap is not None:
        logs = [
            math.log10(v)
            for row in heatmap.values
            for v in row
            if v is not None and v > 0
        ]
        lo, hi = (min(logs), max(logs)) if logs else (0.0, 1.0)
        cs = list(heatmap.c_values)
        ns = list(heatmap.n_values)
        half_c = (cs[1] - cs[0]) / 2 if len(cs) > 1 else (cv.c1 - cv.c0) / 2
        half_n = (ns[1] - ns[0]) / 2 if len(ns) > 1 else (cv.n1 - cv.n0) / 2
        for ni, n in enumerate(ns):
            for ci, c in enumerate(cs):
                value = heatmap.values[ni][ci]
                if value is None:
                    continue
                x0 = cv.x(c - half_c)
                x1 = cv.x(c + half_c)
                y0 = cv.y(n + half_n)
                y1 = cv.y(n - half_n)
                parts.append(
                    f'<rect class="heatcell" x="{_fmt(x0)}" y="{_fmt(y0)}" '
                    f'width="{_fmt(x1 - x0)}" height="{_fmt(y1 - y0)}" '
                    f'fill="{_heat_color(value, lo, hi)}"/>'
                )

    # Axes
    x0, x1 = cv.x(cv.c0), cv.x(cv.c1)
    y0, y1 = cv.y(cv.n0), cv.y(cv.n1)
    parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y0)}" stroke="black"/>')
    parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x0)}" y2="{_fmt(y1)}" stroke="black"/>')
    for t in _ticks(cv.c0, cv.c1):
        parts.append(
            f'<line x1="{_fmt(cv.x(t))}" y1="{_fmt(y0)}" x2="{_fmt(cv.x(t))}" y2="{_fmt(y0 + 5)}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(cv.x(t))}" y="{_fmt(y0 + 20)}" text-anchor="middle">{_fmt(t)}</text>'
        )
    for t in _ticks(cv.n0, cv.n1):
        parts.append(
            f'<line x1="{_fmt(x0 - 5)}" y1="{_fmt(cv.y(t))}" x2="{_fmt(x0)}" y2="{_fmt(cv.y(t))}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(x0 - 9)}" y="{_fmt(cv.y(t) + 4)}" text-anchor="end">{_fmt(t)}</text>'
        )
    parts.append(
        f'<text x="{_fmt((x0 + x1) / 2)}" y="{_fmt(HEIGHT - 10)}" text-anchor="middle">cooperativity C</text>'
    )
    parts.append(
        f'<text x="16" y="{_fmt((y0 + y1) / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 16 {_fmt((y0 + y1) / 2)})">resource state size N</text>'
    )
    if title:
        parts.append(
            f'<text x="{_fmt((x0 + x1) / 2)}" y="22" text-anchor="middle" font-size="14">{title}</text>'
        )

    # Level curves: one polyline each; whiskers for MC confidence half-widths.
    for pc in curves:
        drawable = [p for p in pc.curve.points if p.reachable and p.c is not None]
        for p in drawable:
            if p.c_halfwidth > 0:
                parts.append(
                    f'<line class="whisker" x1="{_fmt(cv.x(p.c - p.c_halfwidth))}" '
                    f'y1="{_fmt(cv.y(p.n))}" x2="{_fmt(cv.x(p.c + p.c_halfwidth))}" '
                    f'y2="{_fmt(cv.y(p.n))}" stroke="{pc.color}" stroke-width="1"/>'
                )
        vertices = " ".join(f"{_fmt(cv.x(p.c))},{_fmt(cv.y(p.n))}" for p in drawable)
        parts.append(
            f'<polyline points="{vertices}" fill="none" stroke="{pc.color}" stroke-width="1.5"/>'
        )

    for m in markers:
        mx, my = cv.x(m.c), cv.y(m.n)
        if m.glyph == "cross":
            parts.append(
                f'<path class="marker-cross" d="M {_fmt(mx - 5)} {_fmt(my - 5)} L {_fmt(mx + 5)} {_fmt(my + 5)} '
                f'M {_fmt(mx - 5)} {_fmt(my + 5)} L {_fmt(mx + 5)} {_fmt(my - 5)}" '
                f'stroke="black" stroke-width="2" fill="none"/>'
            )
        elif m.glyph == "diamond":
            parts.append(
                f'<polygon class="marker-diamond" points="{_fmt(mx)},{_fmt(my - 6)} {_fmt(mx + 6)},{_fmt(my)} '
                f'{_fmt(mx)},{_fmt(my + 6)} {_fmt(mx - 6)},{_fmt(my)}" fill="black"/>'
            )
        else:
            raise ValueError(f"unknown marker glyph {m.glyph!r}")

    # Legend
    ly = MARGIN_TOP + 8
    lx = WIDTH - MARGIN_RIGHT + 12
    entries = [(pc.color, pc.label) for pc in curves]
    entries.extend(("black", m.label) for m in markers if m.label)
    if heatmap is not None and heatmap.label:
        entries.append(("gray", heatmap.label))
    for color, label in entries:
        parts.append(
            f'<line x1="{_fmt(lx)}" y1="{_fmt(ly - 4)}" x2="{_fmt(lx + 18)}" y2="{_fmt(ly - 4)}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(f'<text x="{_fmt(lx + 24)}" y="{_fmt(ly)}" font-size="11">{label}</text>')
        ly += 18

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_plot(
    path: Union[str, Path, None],
    curves: Sequence[PlotCurve] = (),
    heatmap: Optional[Heatmap] = None,
    markers: Sequence[PlotMarker] = (),
    c_range: Tuple[float, float] = (10.0, 300.0),
    n_range: Tuple[float, float] = (9.0, 21.0),
    title: Optional[str] = None,
) -> str:
    """Render and optionally write the SVG; raises before writing on empty input."""
    text = render_plot(curves, heatmap, markers, c_range, n_range, title)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
