"""Minimal deterministic SVG line charts (no plotting dependency).

Output is a fixed 960x540 viewBox with linear axes, one polyline per
series from an 8-color palette, point markers, and a legend.  The
document is assembled from plain strings with fixed number formatting,
so identical input yields identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["Series", "render_chart"]

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
)

# Plot rectangle inside the 960x540 canvas; the right margin holds the legend.
_X0, _X1 = 70.0, 760.0
_Y0, _Y1 = 40.0, 490.0


@dataclass(frozen=True)
class Series:
    label: str
    points: tuple[tuple[float, float], ...]


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if lo == hi:
        pad = 0.5 * max(1.0, abs(lo))
        lo, hi = lo - pad, hi + pad
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    norm = raw / mag
    if norm < 1.5:
        step = mag
    elif norm < 3.5:
        step = 2.0 * mag
    elif norm < 7.5:
        step = 5.0 * mag
    else:
        step = 10.0 * mag
    first = math.ceil(lo / step)
    last = math.floor(hi / step)
    return [round(i * step, 12) for i in range(first, last + 1)]


def _span(values: list[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        pad = 0.5 * max(1.0, abs(lo))
        return lo - pad, hi + pad
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def render_chart(series: list[Series], x_label: str, y_label: str) -> str:
    """Render series as an SVG document string.

    Non-finite points must already be filtered out; a series with a
    single point is drawn as a marker only.
    """
    drawable = [s for s in series if s.points]
    if not drawable:
        raise ValueError("no drawable data (all points missing or non-finite)")
    xs = [p[0] for s in drawable for p in s.points]
    ys = [p[1] for s in drawable for p in s.points]
    xlo, xhi = _span(xs)
    ylo, yhi = _span(ys)

    def sx(x: float) -> float:
        return _X0 + (x - xlo) / (xhi - xlo) * (_X1 - _X0)

    def sy(y: float) -> float:
        return _Y1 - (y - ylo) / (yhi - ylo) * (_Y1 - _Y0)

    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 960 540" '
        'font-family="sans-serif" font-size="13">',
        '<rect x="0" y="0" width="960" height="540" fill="white"/>',
    ]
    # Grid and ticks.
    for tx in _nice_ticks(xlo, xhi):
        px = _fmt(sx(tx))
        out.append(
            f'<line x1="{px}" y1="{_fmt(_Y0)}" x2="{px}" y2="{_fmt(_Y1)}" '
            'stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{px}" y="{_fmt(_Y1 + 18)}" text-anchor="middle">{tx:g}</text>'
        )
    for ty in _nice_ticks(ylo, yhi):
        py = _fmt(sy(ty))
        out.append(
            f'<line x1="{_fmt(_X0)}" y1="{py}" x2="{_fmt(_X1)}" y2="{py}" '
            'stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_fmt(_X0 - 8)}" y="{py}" text-anchor="end" '
            f'dominant-baseline="middle">{ty:g}</text>'
        )
    # Axes frame.
    out.append(
        f'<rect x="{_fmt(_X0)}" y="{_fmt(_Y0)}" width="{_fmt(_X1 - _X0)}" '
        f'height="{_fmt(_Y1 - _Y0)}" fill="none" stroke="black" stroke-width="1"/>'
    )
    out.append(
        f'<text x="{_fmt((_X0 + _X1) / 2)}" y="{_fmt(_Y1 + 40)}" '
        f'text-anchor="middle">{_esc(x_label)}</text>'
    )
    out.append(
        f'<text x="18" y="{_fmt((_Y0 + _Y1) / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 18 {_fmt((_Y0 + _Y1) / 2)})">{_esc(y_label)}</text>'
    )
    # Series.
    for i, s in enumerate(drawable):
        color = PALETTE[i % len(PALETTE)]
        pts = [(sx(x), sy(y)) for x, y in s.points]
        if len(pts) >= 2:
            coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
            out.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" '
                'stroke-width="2"/>'
            )
        for x, y in pts:
            out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5" fill="{color}"/>')
    # Legend.
    lx, ly = _X1 + 16.0, _Y0 + 10.0
    for i, s in enumerate(drawable):
        color = PALETTE[i % len(PALETTE)]
        y = ly + 22.0 * i
        out.append(
            f'<line x1="{_fmt(lx)}" y1="{_fmt(y)}" x2="{_fmt(lx + 24)}" y2="{_fmt(y)}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{_fmt(lx + 30)}" y="{_fmt(y)}" '
            f'dominant-baseline="middle">{_esc(s.label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
