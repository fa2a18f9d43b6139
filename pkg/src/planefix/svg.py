"""Deterministic SVG rendering of drawings, layered drawings and fold
certificates.

Exact rational coordinates stay authoritative in the data files; here they
are converted to fixed-point decimals at a configurable precision (default
6 digits), so the same inputs always render byte-identical SVG.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import Drawing, Line, Point
from .graphs import Graph


def format_fixed(x: Fraction, precision: int) -> str:
    """Exact round-half-up fixed-point decimal of a rational."""
    x = Fraction(x)
    scale = 10 ** precision
    n = (x.numerator * scale * 2 + x.denominator) // (2 * x.denominator)
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, scale)
    if precision == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{str(frac).zfill(precision)}"


@dataclass
class SvgOptions:
    width: int = 800
    height: int = 600
    precision: int = 6
    vertex_radius: float = 4.0
    layer_lines: bool = False
    highlight: tuple[int, ...] = ()
    strips: tuple[Fraction, ...] = ()       # x positions drawn as dashed verticals
    overlay_line: Line | None = None
    labels: bool = False


def _bbox(points: Iterable[Point]):
    pts = list(points)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


class _Mapper:
    def __init__(self, d: Drawing, opt: SvgOptions):
        self.opt = opt
        if len(d) == 0:
            self.sx = self.sy = Fraction(1)
            self.ox = self.oy = Fraction(0)
            return
        x0, y0, x1, y1 = _bbox(d.positions.values())
        w = x1 - x0 if x1 > x0 else Fraction(1)
        h = y1 - y0 if y1 > y0 else Fraction(1)
        pad = Fraction(1, 10)
        fw = Fraction(opt.width)
        fh = Fraction(opt.height)
        scale = min(fw * (1 - 2 * pad) / w, fh * (1 - 2 * pad) / h)
        self.sx = self.sy = scale
        self.ox = fw * pad - x0 * scale
        self.oy = fh * pad + y1 * scale     # y axis flipped

    def map(self, p: Point) -> tuple[str, str]:
        x = p.x * self.sx + self.ox
        y = self.oy - p.y * self.sy
        pr = self.opt.precision
        return format_fixed(x, pr), format_fixed(y, pr)


def render_svg(d: Drawing, g: Graph | None = None,
               options: SvgOptions | None = None) -> str:
    opt = options or SvgOptions()
    m = _Mapper(d, opt)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{opt.width}" '
        f'height="{opt.height}" viewBox="0 0 {opt.width} {opt.height}">',
        f'<rect width="{opt.width}" height="{opt.height}" fill="white"/>',
    ]
    if len(d) > 0:
        x0, y0, x1, y1 = _bbox(d.positions.values())
        if opt.layer_lines:
            ymin = int(y0) if y0.denominator == 1 else int(y0) + 1
            for k in range(ymin, int(y1) + 1):
                ax, ay = m.map(Point(x0 - 1, k))
                bx, by = m.map(Point(x1 + 1, k))
                out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                           f'stroke="#bbbbbb" stroke-width="1" '
                           f'stroke-dasharray="2,4"/>')
        for sx_pos in opt.strips:
            ax, ay = m.map(Point(sx_pos, y0 - 1))
            bx, by = m.map(Point(sx_pos, y1 + 1))
            out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                       f'stroke="#888888" stroke-width="1" '
                       f'stroke-dasharray="6,3"/>')
        if opt.overlay_line is not None:
            seg = _clip_line(opt.overlay_line, x0 - 1, y0 - 1, x1 + 1, y1 + 1)
            if seg:
                ax, ay = m.map(seg[0])
                bx, by = m.map(seg[1])
                out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                           f'stroke="#cc3333" stroke-width="2"/>')
        if g is not None:
            for (u, v) in sorted(g.edges):
                ax, ay = m.map(d[u])
                bx, by = m.map(d[v])
                out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                           f'stroke="black" stroke-width="1.5"/>')
        hl = set(opt.highlight)
        for v in d.vertices():
            cx, cy = m.map(d[v])
            fill = "#dd8800" if v in hl else "#3366cc"
            out.append(f'<circle cx="{cx}" cy="{cy}" r="{opt.vertex_radius}" '
                       f'fill="{fill}"/>')
            if opt.labels:
                out.append(f'<text x="{cx}" y="{cy}" dx="5" dy="-5" '
                           f'font-size="10">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _clip_line(l: Line, x0, y0, x1, y1) -> tuple[Point, Point] | None:
    """Intersection segment of the line with a bounding box."""
    pts: list[Point] = []
    if l.b != 0:
        for x in (x0, x1):
            y = (l.c - l.a * x) / l.b
            if y0 <= y <= y1:
                pts.append(Point(x, y))
    if l.a != 0:
        for y in (y0, y1):
            x = (l.c - l.b * y) / l.a
            if x0 <= x <= x1:
                pts.append(Point(x, y))
    uniq = sorted(set(pts))
    if len(uniq) < 2:
        return None
    return uniq[0], uniq[-1]


def render_fold_certificate(fc, g: Graph | None = None,
                            options: SvgOptions | None = None) -> str:
    """Fold rendering: base line as overlay, free set highlighted,
    perpendiculars dashed."""
    opt = options or SvgOptions()
    opt.highlight = tuple(fc.free_set)
    opt.strips = tuple(s.x for s in fc.strips)
    opt.overlay_line = fc.line
    return render_svg(fc.drawing, g, opt)
