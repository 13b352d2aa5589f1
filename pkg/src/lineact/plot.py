"""Deterministic SVG rendering of PL graphs, leaf families and orbit points.

Coordinates are rounded from exact fractions to three decimals for
display only; the same spec always gives the same bytes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .plmap import PLMap, fixed_set, read_record, to_q

PLOT_TAG = "plot/1"
WIDTH = HEIGHT = 480
MARGIN = 40
PALETTE = ("#1f4e99", "#b3361b", "#2d7d3a", "#7a3b8f", "#a87511", "#207f86")


@dataclass
class GraphItem:
    label: str
    f: PLMap
    shade: bool = False


@dataclass
class LeavesItem:
    label: str
    intervals: list[tuple[Fraction, Fraction]]


@dataclass
class PointsItem:
    label: str
    points: list[Fraction]


@dataclass
class PlotSpec:
    window: tuple[Fraction, Fraction]
    items: list = field(default_factory=list)

    def __post_init__(self):
        lo, hi = to_q(self.window[0]), to_q(self.window[1])
        if not lo < hi:
            raise ValueError("plot window must be nonempty")
        self.window = (lo, hi)


def dec(q) -> str:
    """Fixed three-decimal rendering of a rational, without floats."""
    n = round(to_q(q) * 1000)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 1000}.{n % 1000:03d}"


class _Frame:
    def __init__(self, xlo, xhi, ylo, yhi):
        self.xlo, self.xhi, self.ylo, self.yhi = xlo, xhi, ylo, yhi

    def x(self, v):
        return MARGIN + (to_q(v) - self.xlo) * (WIDTH - 2 * MARGIN) / (self.xhi - self.xlo)

    def y(self, v):
        return HEIGHT - MARGIN - (to_q(v) - self.ylo) * (HEIGHT - 2 * MARGIN) / (self.yhi - self.ylo)

    def length(self, d):
        return to_q(d) * (WIDTH - 2 * MARGIN) / (self.xhi - self.xlo)


def _graph_points(f: PLMap, lo, hi):
    xs = [lo] + [b for b in f.breakpoints if lo < b < hi] + [hi]
    return [(x, f(x)) for x in xs]


def render_svg(spec: PlotSpec) -> str:
    if not spec.items:
        raise ValueError("plot spec has no items")
    lo, hi = spec.window
    ylo, yhi = lo, hi
    for it in spec.items:
        if isinstance(it, GraphItem):
            ylo = min(ylo, it.f(lo))
            yhi = max(yhi, it.f(hi))
    fr = _Frame(lo, hi, ylo, yhi)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<line x1="{dec(fr.x(lo))}" y1="{dec(fr.y(0) if ylo <= 0 <= yhi else HEIGHT - MARGIN)}" '
        f'x2="{dec(fr.x(hi))}" y2="{dec(fr.y(0) if ylo <= 0 <= yhi else HEIGHT - MARGIN)}" stroke="#999999" stroke-width="1"/>',
        f'<text x="{MARGIN}" y="{HEIGHT - 10}" font-family="monospace" font-size="11">[{lo}, {hi}]</text>',
    ]
    legend_y = 16
    for i, it in enumerate(spec.items):
        color = PALETTE[i % len(PALETTE)]
        if isinstance(it, GraphItem):
            if it.shade:
                for a, b, sign in fixed_set(it.f, (lo, hi)).gaps:
                    fill = "#2d7d3a" if sign > 0 else "#b3361b"
                    out.append(f'<rect x="{dec(fr.x(a))}" y="{MARGIN}" width="{dec(fr.x(b) - fr.x(a))}" '
                               f'height="{HEIGHT - 2 * MARGIN}" fill="{fill}" fill-opacity="0.12"/>')
            diag = f"{dec(fr.x(lo))},{dec(fr.y(lo))} {dec(fr.x(hi))},{dec(fr.y(hi))}"
            out.append(f'<polyline points="{diag}" fill="none" stroke="#cccccc" stroke-dasharray="4 3"/>')
            pts = " ".join(f"{dec(fr.x(x))},{dec(fr.y(y))}" for x, y in _graph_points(it.f, lo, hi))
            out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        elif isinstance(it, LeavesItem):
            base = HEIGHT - MARGIN
            for a, b in sorted(it.intervals):
                a, b = max(to_q(a), lo), min(to_q(b), hi)
                if not a < b:
                    continue
                r = fr.length(b - a) / 2
                out.append(f'<path d="M {dec(fr.x(a))} {dec(base)} A {dec(r)} {dec(r)} 0 0 1 '
                           f'{dec(fr.x(b))} {dec(base)}" fill="none" stroke="{color}" stroke-width="1.2"/>')
        elif isinstance(it, PointsItem):
            base = HEIGHT - MARGIN
            for p in sorted(set(it.points)):
                if lo <= p <= hi:
                    out.append(f'<circle cx="{dec(fr.x(p))}" cy="{dec(base)}" r="2" fill="{color}"/>')
        else:
            raise TypeError(f"unknown plot item {it!r}")
        out.append(f'<text x="{WIDTH - MARGIN}" y="{legend_y}" text-anchor="end" font-family="monospace" '
                   f'font-size="11" fill="{color}">{_escape(it.label)}</text>')
        legend_y += 14
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def parse_plot_spec(text: str) -> PlotSpec:
    """Text format::

        plot/1
        window LO HI
        graph LABEL [shade]      followed by a plmap/1 record
        leaves LABEL a1 b1 a2 b2 ...
        points LABEL x1 x2 ...
    """
    it = iter(line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#"))
    try:
        head = next(it).strip()
    except StopIteration:
        raise ValueError("empty plot spec") from None
    if head != PLOT_TAG:
        raise ValueError(f"expected {PLOT_TAG!r}, got {head!r}")
    window = None
    items: list = []
    for line in it:
        parts = line.split()
        key = parts[0]
        if key == "window":
            window = (Fraction(parts[1]), Fraction(parts[2]))
        elif key == "graph":
            items.append(GraphItem(parts[1], read_record(it), "shade" in parts[2:]))
        elif key == "leaves":
            vals = [Fraction(v) for v in parts[2:]]
            if len(vals) % 2:
                raise ValueError("leaves need endpoint pairs")
            items.append(LeavesItem(parts[1], list(zip(vals[::2], vals[1::2]))))
        elif key == "points":
            items.append(PointsItem(parts[1], [Fraction(v) for v in parts[2:]]))
        else:
            raise ValueError(f"unexpected line {line!r}")
    if window is None:
        raise ValueError("plot spec needs a window line")
    if not items:
        raise ValueError("plot spec has no items")
    return PlotSpec(window, items)


def plot_spec_text(spec: PlotSpec) -> str:
    lines = [PLOT_TAG, f"window {spec.window[0]} {spec.window[1]}"]
    for it in spec.items:
        if isinstance(it, GraphItem):
            lines.append(f"graph {it.label}" + (" shade" if it.shade else ""))
            lines += it.f.record_lines()
        elif isinstance(it, LeavesItem):
            lines.append(f"leaves {it.label} " + " ".join(f"{a} {b}" for a, b in it.intervals))
        else:
            lines.append(f"points {it.label} " + " ".join(str(p) for p in it.points))
    return "\n".join(lines) + "\n"
