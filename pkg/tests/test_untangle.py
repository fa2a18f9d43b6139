import itertools
import math
from fractions import Fraction

import pytest

from planefix.errors import InputError, ScopeError
from planefix.geometry import Drawing, Point, crossing_report
from planefix.graphs import Graph
from planefix.outerplanar import LayeredDrawing, almost_layered_draw
from planefix.randgraphs import (
    random_collinear_positions, random_monotone_targets, random_outerplanar,
    rng_from_seed,
)
from planefix.untangle import (
    ConformalDisplacement, FoldCertificate, displace_free, fold,
    longest_monotone, longest_monotone_oracle, untangle_collinear,
    wheel_adjust, wheel_fixture, WHEEL_FREE_SET, _lis_indices,
)


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n):
    return Graph(n, [(0, i) for i in range(1, n)])


# ---------------------------------------------------------------------------
# fold
# ---------------------------------------------------------------------------

def test_fold_single_layer():
    g = path_graph(4)
    ld = LayeredDrawing(Drawing({i: Point(i, 1) for i in range(4)}),
                        {i: 1 for i in range(4)})
    fc = fold(g, ld)
    assert fc.free_set == (0, 1, 2, 3)
    assert fc.strips == ()
    assert all(fc.drawing[v].y == 0 for v in range(4))


def test_fold_star_even_parity():
    g = star_graph(5)
    ld = almost_layered_draw(g, root=0)
    fc = fold(g, ld, parity="even")
    assert len(fc.free_set) == 4
    assert len(fc.strips) == 1
    strip = fc.strips[0]
    assert strip.vertices == (0,)
    assert strip.left_anchor is None and strip.right_anchor == fc.free_set[0]
    assert strip.sign == 1
    # Majority parity satisfies the half bound.
    assert len(fc.free_set) >= math.ceil(5 / 2)


def test_fold_p4_both_parities():
    g = path_graph(4)
    ld = almost_layered_draw(g, root=0)
    assert sorted(ld.layer.values()) == [1, 2, 3, 4]
    for parity in ("odd", "even"):
        fc = fold(g, ld, parity=parity)
        assert len(fc.free_set) == 2
        assert not crossing_report(g, fc.drawing)


def test_fold_auto_majority():
    rng = rng_from_seed(11)
    for _ in range(40):
        n = rng.randint(1, 60)
        g = random_outerplanar(rng, n)
        ld = almost_layered_draw(g, root=rng.randrange(n))
        fc = fold(g, ld, parity="auto")
        assert len(fc.free_set) >= math.ceil(n / 2)
        assert not crossing_report(g, fc.drawing)


def test_fold_alternating_halfplanes():
    g = path_graph(7)
    ld = almost_layered_draw(g, root=0)   # layers 1..7
    fc = fold(g, ld, parity="odd")
    assert [s.sign for s in fc.strips] == [1, -1, 1]


# ---------------------------------------------------------------------------
# displace_free
# ---------------------------------------------------------------------------

def _identity_targets(fc):
    return ConformalDisplacement({v: fc.drawing[v].x for v in fc.free_set})


def test_displace_identity_is_bit_exact():
    rng = rng_from_seed(21)
    for _ in range(20):
        n = rng.randint(2, 40)
        g = random_outerplanar(rng, n)
        fc = fold(g, almost_layered_draw(g), parity="auto")
        out = displace_free(fc, _identity_targets(fc))
        assert out.positions == fc.drawing.positions


def test_displace_translation():
    g = star_graph(5)
    fc = fold(g, almost_layered_draw(g), parity="even")
    shifted = ConformalDisplacement(
        {v: fc.drawing[v].x + 10 for v in fc.free_set})
    out = displace_free(fc, shifted)
    expect = fc.drawing.translated(10, 0)
    assert out.positions == expect.positions
    assert not crossing_report(g, out)


def test_displace_rejects_non_monotone():
    g = path_graph(3)
    fc = fold(g, almost_layered_draw(g))
    bad = {v: Fraction(0) for v in fc.free_set}
    if len(fc.free_set) >= 2:
        with pytest.raises(InputError):
            displace_free(fc, ConformalDisplacement(bad))


def test_displace_random_monotone_targets_stay_crossing_free():
    rng = rng_from_seed(31)
    for _ in range(30):
        n = rng.randint(2, 50)
        g = random_outerplanar(rng, n)
        fc = fold(g, almost_layered_draw(g), parity="auto")
        for _ in range(4):
            ts = random_monotone_targets(rng, len(fc.free_set))
            out = displace_free(fc, ConformalDisplacement(
                dict(zip(fc.free_set, ts))))
            assert crossing_report(g, out) == []


# ---------------------------------------------------------------------------
# longest monotone subsequence
# ---------------------------------------------------------------------------

def test_longest_monotone_examples():
    sub, direction = longest_monotone([1, 2, 3, 4, 5])
    assert direction == "increasing" and sub == [1, 2, 3, 4, 5]
    sub, direction = longest_monotone([3, 1, 2])
    assert direction == "increasing" and sub == [1, 2]
    sub, direction = longest_monotone([5, 4, 3, 2, 1])
    assert direction == "decreasing" and sub == [5, 4, 3, 2, 1]


def test_longest_monotone_matches_oracle_small():
    rng = rng_from_seed(41)
    for _ in range(300):
        m = rng.randint(1, 10)
        seq = rng.sample(range(100), m)
        sub, direction = longest_monotone(seq)
        assert len(sub) == longest_monotone_oracle(seq)
        if direction == "increasing":
            assert all(a < b for a, b in zip(sub, sub[1:]))
        else:
            assert all(a > b for a, b in zip(sub, sub[1:]))


def test_longest_monotone_erdos_szekeres_bound_spot():
    rng = rng_from_seed(43)
    for _ in range(200):
        m = rng.randint(1, 45)
        seq = rng.sample(range(1000), m)
        sub, _ = longest_monotone(seq)
        assert len(sub) >= math.ceil(math.sqrt(m))


def test_lis_kernel_agrees_with_python():
    rng = rng_from_seed(47)
    for m in (64, 257, 1000):
        seq = rng.sample(range(10 * m), m)
        idx_fast = _lis_indices(seq)                # kernel path (m >= 64)
        small = _lis_indices(seq[:63])              # python path
        assert len(idx_fast) == longest_monotone_oracle_increasing(seq)
        sub = [seq[i] for i in idx_fast]
        assert all(a < b for a, b in zip(sub, sub[1:]))


def longest_monotone_oracle_increasing(seq):
    m = len(seq)
    dp = [1] * m
    for i in range(m):
        for j in range(i):
            if seq[i] > seq[j]:
                dp[i] = max(dp[i], dp[j] + 1)
    return max(dp) if dp else 0


# ---------------------------------------------------------------------------
# untangle_collinear
# ---------------------------------------------------------------------------

def test_untangle_single_edge_any_pi():
    g = path_graph(2)
    res = untangle_collinear(g, {0: Fraction(5), 1: Fraction(-3)})
    assert len(res.fixed) == 2
    assert res.drawing[0] == Point(5, 0)
    assert res.drawing[1] == Point(-3, 0)


def test_untangle_identity_order_fixes_whole_free_set():
    g = star_graph(9)
    ld = almost_layered_draw(g)
    fc = fold(g, ld, parity="auto")
    # Request exactly the fold's left-to-right order for the free set and
    # tangle the rest in front of it.
    pi = {}
    for i, v in enumerate(fc.free_set):
        pi[v] = Fraction(10 * (i + 1))
    others = [v for v in range(9) if v not in fc.free_set]
    for j, v in enumerate(others):
        pi[v] = Fraction(10 * len(fc.free_set) + 5 + j)
    res = untangle_collinear(g, pi)
    if res.direction != "identity":
        assert set(res.fixed) >= set(fc.free_set)


def test_untangle_reversed_order_uses_mirror():
    g = path_graph(9)
    ld = almost_layered_draw(g)
    fc = fold(g, ld, parity="auto")
    pi = {}
    for i, v in enumerate(fc.free_set):
        pi[v] = Fraction(-10 * i)
    others = [v for v in range(9) if v not in fc.free_set]
    for j, v in enumerate(others):
        pi[v] = Fraction(3 + 10 * j)
    res = untangle_collinear(g, pi)
    assert res.direction == "decreasing"
    assert len(res.fixed) >= len(fc.free_set)
    assert crossing_report(g, res.drawing) == []


def test_untangle_rejects_non_outerplanar():
    g = Graph(4, itertools.combinations(range(4), 2))
    with pytest.raises(ScopeError):
        untangle_collinear(g, {v: Fraction(v) for v in range(4)})


def test_untangle_rejects_non_injective():
    g = path_graph(3)
    with pytest.raises(InputError):
        untangle_collinear(g, {0: Fraction(0), 1: Fraction(0), 2: Fraction(1)})


def test_untangle_random_corpus():
    rng = rng_from_seed(61)
    for _ in range(40):
        n = rng.randint(2, 80)
        g = random_outerplanar(rng, n)
        pi = random_collinear_positions(rng, n)
        res = untangle_collinear(g, pi)
        assert len(res.fixed) >= math.ceil(math.sqrt(n / 2))
        for v in res.fixed:
            assert res.drawing[v] == Point(pi[v], 0)
        assert crossing_report(g, res.drawing) == []
        if res.direction != "identity":
            assert res.free_size >= math.ceil(n / 2)


# ---------------------------------------------------------------------------
# wheel fixture
# ---------------------------------------------------------------------------

def test_wheel_fixture_crossing_free():
    g, d = wheel_fixture()
    assert crossing_report(g, d) == []
    assert all(d[v].y == 0 for v in WHEEL_FREE_SET)


def test_wheel_fixture_displacement_trials():
    g, _ = wheel_fixture()
    rng = rng_from_seed(71)
    for _ in range(100):
        ts = random_monotone_targets(rng, len(WHEEL_FREE_SET))
        d = wheel_adjust(dict(zip(WHEEL_FREE_SET, ts)))
        assert crossing_report(g, d) == []
