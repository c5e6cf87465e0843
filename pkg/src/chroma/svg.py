"""Deterministic SVG drawings of colored Delaunay graphs."""

from __future__ import annotations

from fractions import Fraction

from .colorings import EdgeColoring, TupleColoring
from .errors import DimensionError
from .geometry import PointSet

BASE_PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e")
SIZE = 400
MARGIN = 20


def palette_color(c: int) -> str:
    """Color ``c`` (1-based): red, blue, green, orange, then a golden-angle hue walk."""
    if 1 <= c <= len(BASE_PALETTE):
        return BASE_PALETTE[c - 1]
    hue = (c - len(BASE_PALETTE)) * 137.508 % 360
    return f"hsl({hue:.1f},65%,45%)"


def _scale(S: PointSet):
    xs = [p[0] for p in S.points]
    ys = [p[1] for p in S.points]
    lo_x, lo_y = min(xs), min(ys)
    span = max(max(xs) - lo_x, max(ys) - lo_y) or Fraction(1)
    k = Fraction(SIZE - 2 * MARGIN) / span

    def to_screen(p):
        # flip y so that larger y is drawn higher
        return (float(MARGIN + (p[0] - lo_x) * k), float(SIZE - MARGIN - (p[1] - lo_y) * k))

    return to_screen


def render_svg(S: PointSet, coloring: EdgeColoring | TupleColoring | None = None) -> str:
    if S.dim != 2:
        raise DimensionError(f"SVG output needs planar points, got d={S.dim}")
    if isinstance(coloring, TupleColoring) and coloring.t != 2:
        raise ValueError("only pair colorings can be drawn as segments")
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
             f'viewBox="0 0 {SIZE} {SIZE}">',
             f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>']
    if len(S):
        to_screen = _scale(S)
        pts = [to_screen(p) for p in S.points]
        items = coloring.assignments.items() if coloring is not None else ()
        for (i, j), c in items:
            (x1, y1), (x2, y2) = pts[i], pts[j]
            lines.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                         f'stroke="{palette_color(c)}" stroke-width="2"/>')
        for i, (x, y) in enumerate(pts):
            lines.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="black"><title>{i}</title></circle>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
