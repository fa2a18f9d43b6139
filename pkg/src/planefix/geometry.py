"""Exact rational plane geometry.

Points, lines and drawings use arbitrary-precision `Fraction` coordinates;
every predicate is exact. Floating point never enters any decision here:
the downstream constructions (layered drawings, barycentric solves) produce
coordinates where doubles are hopeless.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InputError

RationalLike = Fraction | int | str


def frac(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, order=True)
class Point:
    """A point with exact rational coordinates (structural equality)."""

    x: Fraction
    y: Fraction

    def __init__(self, x: RationalLike, y: RationalLike):
        object.__setattr__(self, "x", frac(x))
        object.__setattr__(self, "y", frac(y))

    def translated(self, dx: RationalLike, dy: RationalLike) -> "Point":
        return Point(self.x + frac(dx), self.y + frac(dy))

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


@dataclass(frozen=True, order=True)
class Line:
    """The line {(x, y) : a*x + b*y = c} in canonical scaling.

    Canonical form: the first nonzero coefficient among (a, b) equals 1,
    so structurally equal Line objects describe the same line and tests
    can compare witnesses directly.
    """

    a: Fraction
    b: Fraction
    c: Fraction

    def __init__(self, a: RationalLike, b: RationalLike, c: RationalLike):
        a, b, c = frac(a), frac(b), frac(c)
        if a == 0 and b == 0:
            raise InputError("degenerate line: a = b = 0")
        scale = a if a != 0 else b
        object.__setattr__(self, "a", a / scale)
        object.__setattr__(self, "b", b / scale)
        object.__setattr__(self, "c", c / scale)

    @staticmethod
    def through(p: Point, q: Point) -> "Line":
        if p == q:
            raise InputError("cannot build a line through two equal points")
        a = q.y - p.y
        b = p.x - q.x
        return Line(a, b, a * p.x + b * p.y)

    @staticmethod
    def horizontal(y: RationalLike) -> "Line":
        return Line(0, 1, y)

    @staticmethod
    def vertical(x: RationalLike) -> "Line":
        return Line(1, 0, x)

    def side(self, p: Point) -> Fraction:
        """Signed value a*x + b*y - c; zero iff p lies on the line."""
        return self.a * p.x + self.b * p.y - self.c

    def contains(self, p: Point) -> bool:
        return self.side(p) == 0


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the signed area of triangle pqr: +1 ccw, -1 cw, 0 collinear."""
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (d > 0) - (d < 0)


def collinear(p: Point, q: Point, r: Point) -> bool:
    return orientation(p, q, r) == 0


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on the closed segment ab (p assumed collinear with ab)."""
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def in_open_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies in the relative interior of segment ab."""
    if orientation(a, b, p) != 0:
        return False
    return _on_segment(p, a, b) and p != a and p != b


class SegmentRelation(enum.Enum):
    DISJOINT = "disjoint"
    PROPER_CROSS = "proper-cross"
    ENDPOINT_TOUCH = "endpoint-touch"
    INTERIOR_TOUCH = "interior-touch"
    OVERLAP = "overlap"


Segment = tuple[Point, Point]


def segment_relation(s1: Segment, s2: Segment) -> SegmentRelation:
    """Exact classification of how two segments intersect.

    PROPER_CROSS: interiors meet in exactly one point.
    OVERLAP: intersection is a nondegenerate segment.
    ENDPOINT_TOUCH: the only intersection is a common endpoint.
    INTERIOR_TOUCH: an endpoint of one lies in the other's relative interior
    (single intersection point).
    """
    p1, p2 = s1
    q1, q2 = s2
    if p1 == p2 or q1 == q2:
        raise InputError("segments must have distinct endpoints")
    d1 = orientation(q1, q2, p1)
    d2 = orientation(q1, q2, p2)
    d3 = orientation(p1, p2, q1)
    d4 = orientation(p1, p2, q2)

    if d1 == 0 and d2 == 0:
        # All four points collinear: compare 1-d intervals along the line.
        lo1, hi1 = sorted([p1, p2])
        lo2, hi2 = sorted([q1, q2])
        if hi1 < lo2 or hi2 < lo1:
            return SegmentRelation.DISJOINT
        if hi1 == lo2 or hi2 == lo1:
            return SegmentRelation.ENDPOINT_TOUCH
        return SegmentRelation.OVERLAP

    shared = (p1 == q1 or p1 == q2 or p2 == q1 or p2 == q2)
    if shared:
        # Non-collinear segments sharing an endpoint meet only there.
        return SegmentRelation.ENDPOINT_TOUCH

    if d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
        if d1 != d2 and d3 != d4:
            return SegmentRelation.PROPER_CROSS
        return SegmentRelation.DISJOINT

    # Some endpoint is collinear with the other segment's carrier line.
    if d1 == 0 and _on_segment(p1, q1, q2):
        return SegmentRelation.INTERIOR_TOUCH
    if d2 == 0 and _on_segment(p2, q1, q2):
        return SegmentRelation.INTERIOR_TOUCH
    if d3 == 0 and _on_segment(q1, p1, p2):
        return SegmentRelation.INTERIOR_TOUCH
    if d4 == 0 and _on_segment(q2, p1, p2):
        return SegmentRelation.INTERIOR_TOUCH
    return SegmentRelation.DISJOINT


@dataclass(frozen=True)
class Drawing:
    """An injective placement vertex id -> Point."""

    positions: Mapping[int, Point]

    def __init__(self, positions: Mapping[int, Point]):
        positions = dict(positions)
        seen: dict[Point, int] = {}
        for v, p in positions.items():
            if p in seen:
                raise InputError(
                    f"drawing is not injective: vertices {seen[p]} and {v} "
                    f"share point {p}")
            seen[p] = v
        object.__setattr__(self, "positions", positions)

    def __getitem__(self, v: int) -> Point:
        return self.positions[v]

    def __contains__(self, v: int) -> bool:
        return v in self.positions

    def __len__(self) -> int:
        return len(self.positions)

    def vertices(self) -> list[int]:
        return sorted(self.positions)

    def translated(self, dx: RationalLike, dy: RationalLike) -> "Drawing":
        return Drawing({v: p.translated(dx, dy) for v, p in self.positions.items()})

    def mirrored_x(self) -> "Drawing":
        """Reflection across the vertical axis x = 0."""
        return Drawing({v: Point(-p.x, p.y) for v, p in self.positions.items()})


@dataclass(frozen=True)
class Violation:
    """One witness that a drawing is not crossing-free."""

    kind: str                      # 'proper-cross' | 'overlap' | 'vertex-on-edge'
    edges: tuple                   # offending edge(s), each a sorted vertex pair
    vertex: int | None = None      # set for vertex-on-edge incidences


def _int_orient(p, q, r) -> int:
    """Exact orientation on cross-multiplied integer 4-tuples
    (xn, xd, yn, yd); equivalent to `orientation` but Fraction-free for the
    sweep's hot loop."""
    a1 = q[0] * p[1] - p[0] * q[1]          # (q.x - p.x) * (p.xd * q.xd)
    b2 = r[2] * p[3] - p[2] * r[3]          # (r.y - p.y) * ...
    a2 = q[2] * p[3] - p[2] * q[3]
    b1 = r[0] * p[1] - p[0] * r[1]
    v = a1 * b2 * (p[1] * r[1]) * (p[3] * q[3]) \
        - a2 * b1 * (p[3] * r[3]) * (p[1] * q[1])
    return (v > 0) - (v < 0)


def _collinear_overlap(p1, p2, q1, q2) -> bool:
    """Do two collinear segments (integer 4-tuples) share more than a point?"""
    def key(t):
        return (Fraction(t[0], t[1]), Fraction(t[2], t[3]))
    a, b = sorted((key(p1), key(p2)))
    c, e = sorted((key(q1), key(q2)))
    return max(a, c) < min(b, e)


def _pair_relation_fast(p1, p2, q1, q2, shared: bool) -> str | None:
    """'proper-cross' / 'overlap' / None for the sweep's candidate pairs.

    `shared` marks edges with a common graph vertex: those can only violate
    by collinear overlap. Interior touches are left to the vertex pass.
    """
    d1 = _int_orient(q1, q2, p1)
    d2 = _int_orient(q1, q2, p2)
    if d1 == 0 and d2 == 0:
        return "overlap" if _collinear_overlap(p1, p2, q1, q2) else None
    if shared:
        return None
    if d1 != 0 and d2 != 0 and d1 != d2:
        d3 = _int_orient(p1, p2, q1)
        d4 = _int_orient(p1, p2, q2)
        if d3 != 0 and d4 != 0 and d3 != d4:
            return "proper-cross"
    return None


def crossing_report(g, d: Drawing, limit: int | None = None) -> list[Violation]:
    """All strict crossing-freeness violations of drawing d of graph g.

    Strict means: no properly crossing edge pair, no overlapping (collinear)
    edge pair, and no vertex in the relative interior of a non-incident edge.
    Edges sharing an endpoint may meet only at that endpoint. With `limit`
    set, returns early once that many violations were found. All arithmetic
    is exact (cross-multiplied integers in the inner loop).
    """
    for v in range(g.n):
        if v not in d.positions:
            raise InputError(f"drawing lacks a position for vertex {v}")
    violations: list[Violation] = []

    def done() -> bool:
        return limit is not None and len(violations) >= limit

    raw = {v: (p.x.numerator, p.x.denominator, p.y.numerator, p.y.denominator)
           for v, p in d.positions.items()}
    # Edge/edge pass: a y-interval sweep over bounding boxes (layered and
    # folded drawings have shallow y-extents, so the active set stays small),
    # with an x-overlap filter before the exact relation test.
    items = []
    for (u, v) in sorted(g.edges):
        if u not in d.positions or v not in d.positions:
            raise InputError(f"drawing lacks a position for edge ({u}, {v})")
        p, q = d[u], d[v]
        xmin, xmax = (p.x, q.x) if p.x <= q.x else (q.x, p.x)
        ymin, ymax = (p.y, q.y) if p.y <= q.y else (q.y, p.y)
        items.append((ymin, ymax, xmin, xmax, (u, v)))
    items.sort(key=lambda t: (t[0], t[1]))
    import heapq
    active: dict[int, tuple] = {}
    expiry: list[tuple] = []     # (ymax, key) min-heap
    key = 0
    for it in items:
        ymin = it[0]
        while expiry and expiry[0][0] < ymin:
            _, k = heapq.heappop(expiry)
            active.pop(k, None)
        u2, v2 = it[4]
        for a in active.values():
            if a[3] < it[2] or it[3] < a[2]:
                continue  # x-ranges disjoint
            u1, v1 = a[4]
            shared = u1 == u2 or u1 == v2 or v1 == u2 or v1 == v2
            rel = _pair_relation_fast(raw[u1], raw[v1], raw[u2], raw[v2], shared)
            if rel is not None:
                pair = tuple(sorted((a[4], it[4])))
                violations.append(Violation(rel, pair))
                if done():
                    return violations
        active[key] = it
        heapq.heappush(expiry, (it[1], key))
        key += 1

    # Vertex-on-edge pass (covers interior touches and isolated vertices).
    pts = sorted(((p.y, p.x, v) for v, p in d.positions.items()))
    ys = [t[0] for t in pts]
    import bisect as _bisect
    for (ymin, ymax, xmin, xmax, e) in items:
        lo = _bisect.bisect_left(ys, ymin)
        hi = _bisect.bisect_right(ys, ymax)
        p, q = d[e[0]], d[e[1]]
        for i in range(lo, hi):
            y, x, v = pts[i]
            if v == e[0] or v == e[1]:
                continue
            if x < xmin or x > xmax:
                continue
            if in_open_segment(Point(x, y), p, q):
                violations.append(Violation("vertex-on-edge", (e,), vertex=v))
                if done():
                    return violations
    return violations


def is_crossing_free(g, d: Drawing) -> bool:
    return not crossing_report(g, d, limit=1)


def _direction_key(p: Point, q: Point) -> tuple[Fraction, Fraction]:
    """Canonical direction of the line through p and q (sign-normalized)."""
    dx, dy = q.x - p.x, q.y - p.y
    if dx == 0:
        return (Fraction(0), Fraction(1))
    if dx < 0:
        dx, dy = -dx, -dy
    return (Fraction(1), dy / dx)


def max_collinear(d: Drawing) -> tuple[int, Line, list[int]]:
    """Largest set of drawing points on one line.

    Returns (count, witness line, vertices on the witness ordered along it).
    Ties are broken toward the lexicographically smallest canonical line.
    Runs in O(n^2) by hashing canonical directions per anchor point.
    """
    verts = d.vertices()
    n = len(verts)
    if n == 0:
        raise InputError("max_collinear needs at least one placed vertex")
    if n == 1:
        v = verts[0]
        return 1, Line.vertical(d[v].x), [v]

    best_count = 0
    candidate_lines: set[Line] = set()
    for i, a in enumerate(verts):
        groups: dict[tuple[Fraction, Fraction], list[int]] = {}
        pa = d[a]
        for b in verts[i + 1:]:
            groups.setdefault(_direction_key(pa, d[b]), []).append(b)
        for members in groups.values():
            count = len(members) + 1
            if count > best_count:
                best_count = count
                candidate_lines = {Line.through(pa, d[members[0]])}
            elif count == best_count:
                candidate_lines.add(Line.through(pa, d[members[0]]))
    witness = min(candidate_lines, key=lambda l: (l.a, l.b, l.c))
    on_line = [v for v in verts if witness.contains(d[v])]
    # Order along the line by projection onto its canonical direction
    # (x-increasing, or y-increasing for vertical lines).
    dx, dy = witness.b, -witness.a
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    on_line.sort(key=lambda v: d[v].x * dx + d[v].y * dy)
    return best_count, witness, on_line


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with the smallest denominator in the open interval (lo, hi).

    Stern-Brocot / continued-fraction descent. Used by the drawing
    constructions to keep coordinate bit-sizes proportional to recursion
    depth instead of exploding multiplicatively.
    """
    lo, hi = frac(lo), frac(hi)
    if not lo < hi:
        raise InputError(f"empty interval ({lo}, {hi})")
    fl = lo.numerator // lo.denominator
    lo, hi = lo - fl, hi - fl          # now 0 <= lo < 1 < ... or <= 1
    if hi > 1:
        return Fraction(fl + 1)
    if lo == 0:
        # (0, hi] with hi <= 1: smallest q with 1/q strictly below hi.
        q = hi.denominator // hi.numerator + 1
        return fl + Fraction(1, q)
    return fl + 1 / simplest_between(1 / hi, 1 / lo)


def affine_image(d: Drawing, m: Sequence[Sequence[RationalLike]],
                 t: Sequence[RationalLike] = (0, 0)) -> Drawing:
    """Apply the affine map x -> M x + t to every point of the drawing."""
    a, b = frac(m[0][0]), frac(m[0][1])
    c, e = frac(m[1][0]), frac(m[1][1])
    tx, ty = frac(t[0]), frac(t[1])
    return Drawing({
        v: Point(a * p.x + b * p.y + tx, c * p.x + e * p.y + ty)
        for v, p in d.positions.items()
    })
