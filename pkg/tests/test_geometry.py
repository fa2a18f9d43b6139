import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planefix.errors import InputError
from planefix.geometry import (
    Drawing, Line, Point, SegmentRelation, affine_image, crossing_report,
    in_open_segment, max_collinear, orientation, segment_relation,
    simplest_between,
)
from planefix.graphs import Graph

P = Point


def test_orientation_examples():
    assert orientation(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orientation(P(0, 0), P(1, 1), P(2, 2)) == 0
    assert orientation(P(0, 0), P(0, 1), P(1, 0)) == -1


coords = st.integers(-6, 6)
points = st.builds(P, coords, coords)


@given(points, points, points)
def test_orientation_antisymmetric(p, q, r):
    s = orientation(p, q, r)
    assert orientation(q, p, r) == -s
    assert orientation(p, r, q) == -s
    assert orientation(r, q, p) == -s


def test_line_canonical_form():
    l1 = Line.through(P(0, 0), P(2, 2))
    l2 = Line.through(P(5, 5), P(-1, -1))
    assert l1 == l2
    assert (l1.a, l1.b) in {(Fraction(1), Fraction(-1)), (Fraction(0), Fraction(1))}
    assert Line.horizontal(3).contains(P(100, 3))
    with pytest.raises(InputError):
        Line(0, 0, 1)


def test_segment_relation_examples():
    rel = segment_relation((P(0, 0), P(2, 2)), (P(0, 2), P(2, 0)))
    assert rel is SegmentRelation.PROPER_CROSS
    rel = segment_relation((P(0, 0), P(1, 0)), (P(1, 0), P(2, 1)))
    assert rel is SegmentRelation.ENDPOINT_TOUCH
    rel = segment_relation((P(0, 0), P(2, 0)), (P(1, 0), P(3, 0)))
    assert rel is SegmentRelation.OVERLAP
    rel = segment_relation((P(0, 0), P(2, 0)), (P(1, 0), P(1, 5)))
    assert rel is SegmentRelation.INTERIOR_TOUCH
    rel = segment_relation((P(0, 0), P(1, 0)), (P(3, 0), P(3, 1)))
    assert rel is SegmentRelation.DISJOINT


segs = st.tuples(points, points).filter(lambda s: s[0] != s[1])


@given(segs, segs)
def test_segment_relation_matches_shapely(s1, s2):
    from shapely.geometry import LineString, Point as ShPoint
    rel = segment_relation(s1, s2)
    assert rel is segment_relation(s2, s1)
    assert rel is segment_relation((s1[1], s1[0]), s2)
    g1 = LineString([(int(p.x), int(p.y)) for p in s1])
    g2 = LineString([(int(p.x), int(p.y)) for p in s2])
    inter = g1.intersection(g2)
    if inter.is_empty:
        assert rel is SegmentRelation.DISJOINT
    elif inter.geom_type == "LineString":
        assert rel is SegmentRelation.OVERLAP
    else:
        assert inter.geom_type == "Point"
        ends1 = {tuple(map(int, (p.x, p.y))) for p in s1}
        ends2 = {tuple(map(int, (p.x, p.y))) for p in s2}
        pt = (inter.x, inter.y)
        at_end1 = any(abs(pt[0] - e[0]) < 1e-9 and abs(pt[1] - e[1]) < 1e-9 for e in ends1)
        at_end2 = any(abs(pt[0] - e[0]) < 1e-9 and abs(pt[1] - e[1]) < 1e-9 for e in ends2)
        if at_end1 and at_end2:
            assert rel is SegmentRelation.ENDPOINT_TOUCH
        elif at_end1 or at_end2:
            assert rel is SegmentRelation.INTERIOR_TOUCH
        else:
            assert rel is SegmentRelation.PROPER_CROSS


def c4():
    return Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_crossing_report_convex_quadrilateral():
    d = Drawing({0: P(0, 0), 1: P(1, 0), 2: P(1, 1), 3: P(0, 1)})
    assert crossing_report(c4(), d) == []


def test_crossing_report_bowtie():
    d = Drawing({0: P(0, 0), 1: P(1, 1), 2: P(1, 0), 3: P(0, 1)})
    report = crossing_report(c4(), d)
    kinds = [v.kind for v in report]
    assert kinds == ["proper-cross"]
    assert report[0].edges == ((0, 1), (2, 3))


def test_crossing_report_path_overlap():
    g = Graph(3, [(0, 1), (1, 2)])
    ok = Drawing({0: P(0, 0), 1: P(1, 0), 2: P(2, 0)})
    assert crossing_report(g, ok) == []
    bad = Drawing({0: P(0, 0), 1: P(2, 0), 2: P(1, 0)})
    kinds = {v.kind for v in crossing_report(g, bad)}
    assert "overlap" in kinds


def test_crossing_report_vertex_on_edge():
    g = Graph(3, [(0, 1)])
    d = Drawing({0: P(0, 0), 1: P(2, 0), 2: P(1, 0)})
    report = crossing_report(g, d)
    assert [v.kind for v in report] == ["vertex-on-edge"]
    assert report[0].vertex == 2


def test_crossing_report_missing_position():
    g = Graph(2, [(0, 1)])
    with pytest.raises(InputError):
        crossing_report(g, Drawing({0: P(0, 0)}))


def test_drawing_injectivity():
    with pytest.raises(InputError):
        Drawing({0: P(0, 0), 1: P(0, 0)})


@given(st.lists(st.tuples(coords, coords), min_size=4, max_size=9, unique=True),
       st.integers(1, 3), st.integers(-2, 2), st.integers(-2, 2), st.integers(1, 3))
def test_crossing_report_affine_invariance(pts, a, b, tx, ty):
    # Random drawing of C4-plus-chords on distinct points.
    n = min(len(pts), 6)
    g = Graph(n, [(i, (i + 1) % n) for i in range(n)] + [(0, n // 2)])
    d = Drawing({i: P(*pts[i]) for i in range(n)})
    det_pos = [[a, b], [0, 1]]     # det = a >= 1
    img = affine_image(d, det_pos, (tx, ty))
    r1 = {(v.kind, v.edges, v.vertex) for v in crossing_report(g, d)}
    r2 = {(v.kind, v.edges, v.vertex) for v in crossing_report(g, img)}
    assert r1 == r2


def brute_force_max_collinear(d: Drawing) -> int:
    verts = d.vertices()
    if len(verts) == 1:
        return 1
    best = 2 if len(verts) >= 2 else 1
    for i, j in itertools.combinations(range(len(verts)), 2):
        a, b = d[verts[i]], d[verts[j]]
        cnt = sum(1 for v in verts if orientation(a, b, d[v]) == 0)
        best = max(best, cnt)
    return best


def test_max_collinear_three_points():
    d = Drawing({0: P(0, 0), 1: P(1, 1), 2: P(2, 2)})
    count, line, on = max_collinear(d)
    assert count == 3 and on == [0, 1, 2]
    assert all(line.contains(d[v]) for v in on)


def test_max_collinear_grid():
    d = Drawing({3 * i + j: P(i, j) for i in range(3) for j in range(3)})
    count, _, _ = max_collinear(d)
    assert count == 3 == brute_force_max_collinear(d)


def test_max_collinear_fan():
    # Fan: path 0..4 on a line plus apex 5 off the line.
    pos = {i: P(i, 0) for i in range(5)}
    pos[5] = P(2, 3)
    count, line, on = max_collinear(Drawing(pos))
    assert count == 5
    assert on == [0, 1, 2, 3, 4]
    assert line == Line.horizontal(0)


@settings(max_examples=60)
@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=14, unique=True))
def test_max_collinear_matches_oracle(pts):
    d = Drawing({i: P(x, y) for i, (x, y) in enumerate(pts)})
    count, line, on = max_collinear(d)
    assert count == brute_force_max_collinear(d)
    assert len(on) == count
    if count >= 2:
        assert all(line.contains(d[v]) for v in on)


def naive_crossing_report(g, d):
    """Brute-force reference: all pairs via the public segment_relation,
    plus a full vertex-on-edge scan."""
    out = set()
    edges = sorted(g.edges)
    for i, e1 in enumerate(edges):
        for e2 in edges[i + 1:]:
            rel = segment_relation((d[e1[0]], d[e1[1]]), (d[e2[0]], d[e2[1]]))
            if rel is SegmentRelation.PROPER_CROSS or rel is SegmentRelation.OVERLAP:
                out.add((rel.value, tuple(sorted((e1, e2))), None))
    for e in edges:
        for v in d.vertices():
            if v not in e and in_open_segment(d[v], d[e[0]], d[e[1]]):
                out.add(("vertex-on-edge", (e,), v))
    return out


@settings(max_examples=120)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
                min_size=2, max_size=8, unique=True),
       st.data())
def test_crossing_report_matches_naive(pts, data):
    n = len(pts)
    import itertools as it
    pool = list(it.combinations(range(n), 2))
    edges = data.draw(st.lists(st.sampled_from(pool), max_size=10, unique=True))
    g = Graph(n, edges)
    d = Drawing({i: P(*pts[i]) for i in range(n)})
    got = {(v.kind, v.edges, v.vertex) for v in crossing_report(g, d)}
    assert got == naive_crossing_report(g, d)


@given(st.fractions(min_value=-50, max_value=50, max_denominator=997),
       st.fractions(min_value=-50, max_value=50, max_denominator=991))
def test_simplest_between(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    m = simplest_between(lo, hi)
    assert lo < m < hi
    if m.denominator <= 500:
        # Minimality: no fraction with a smaller denominator fits.
        for q in range(1, m.denominator):
            p_hi = (hi * q).__ceil__() - 1 if (hi * q).denominator > 1 else hi * q - 1
            assert not (p_hi > lo * q), (lo, hi, m, p_hi, q)


def test_simplest_between_examples():
    assert simplest_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
    assert simplest_between(Fraction(3), Fraction(4)) == Fraction(7, 2)
    assert simplest_between(Fraction(-5, 2), Fraction(7)) == -2
    assert simplest_between(Fraction(10, 3), Fraction(19, 3)) == 4


def test_in_open_segment():
    assert in_open_segment(P(1, 1), P(0, 0), P(2, 2))
    assert not in_open_segment(P(0, 0), P(0, 0), P(2, 2))
    assert not in_open_segment(P(3, 3), P(0, 0), P(2, 2))
