import itertools

import pytest

from planefix.errors import InputError, ScopeError
from planefix.geometry import crossing_report
from planefix.graphs import Graph
from planefix.outerplanar import (
    BlockStructure, LayeredDrawing, OuterplanarStructure, Rejection,
    almost_layered_draw, face_tree, recognize, validate_layered,
)
from planefix.randgraphs import (
    random_maximal_outerplanar, random_outerplanar, rng_from_seed,
)


def fan_graph(n):
    """Path 0..n-2 plus apex n-1 adjacent to every path vertex."""
    edges = [(i, i + 1) for i in range(n - 2)]
    edges += [(i, n - 1) for i in range(n - 1)]
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# recognition
# ---------------------------------------------------------------------------

def test_recognize_tree():
    g = Graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    s = recognize(g)
    assert isinstance(s, OuterplanarStructure)
    assert all(bs is None for bs in s.block_structures)
    assert len(s.block_tree.blocks) == 4


def test_recognize_k4_rejected_by_edge_bound():
    g = Graph(4, itertools.combinations(range(4), 2))
    r = recognize(g)
    assert isinstance(r, Rejection)
    assert r.reason == "edge-bound"


def test_recognize_k23_rejected():
    g = Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    r = recognize(g)
    assert isinstance(r, Rejection)
    # Oracle: no cyclic order of the 5 vertices admits non-crossing chords.
    assert not _outerplanar_by_brute_force(g)


def _outerplanar_by_brute_force(g: Graph) -> bool:
    """Exhaustive check over all cyclic orders (tiny n only): is there an
    order of the vertices on a circle making all edges non-crossing?"""
    verts = list(range(g.n))
    for perm in itertools.permutations(verts[1:]):
        order = [verts[0], *perm]
        pos = {v: i for i, v in enumerate(order)}
        chords = [tuple(sorted((pos[u], pos[v]))) for (u, v) in g.edges]
        ok = True
        for (a, b), (c, d) in itertools.combinations(chords, 2):
            if a < c < b < d or c < a < d < b:
                ok = False
                break
        if ok:
            return True
    return False


def test_recognize_cycle_and_maximal_block():
    g = Graph(6, [(i, (i + 1) % 6) for i in range(6)])
    s = recognize(g)
    assert isinstance(s, OuterplanarStructure)
    bs = s.block_structures[0]
    assert bs is not None
    assert len(bs.inner_faces) == 1
    rng = rng_from_seed(7)
    g2 = random_maximal_outerplanar(rng, 12)
    s2 = recognize(g2)
    assert isinstance(s2, OuterplanarStructure)
    bs2 = s2.block_structures[0]
    assert len(bs2.inner_faces) == g2.m - g2.n + 1
    assert set(bs2.outer_cycle) == set(range(12))


def test_recognize_matches_brute_force_on_small_graphs():
    rng = rng_from_seed(123)
    for _ in range(120):
        n = rng.randint(3, 6)
        pool = list(itertools.combinations(range(n), 2))
        m = rng.randint(n - 1, min(len(pool), 2 * n - 2))
        g = Graph(n, rng.sample(pool, m))
        # Keep only connected samples for a fair comparison.
        from planefix.graphs import connected_components
        adj = {v: set() for v in range(n)}
        for (u, v) in g.edges:
            adj[u].add(v)
            adj[v].add(u)
        if len(connected_components(adj)) != 1:
            continue
        got = recognize(g)
        expected = _outerplanar_by_brute_force(g)
        assert isinstance(got, OuterplanarStructure) == expected, (sorted(g.edges), expected)


# ---------------------------------------------------------------------------
# face tree
# ---------------------------------------------------------------------------

def test_face_tree_triangle():
    s = recognize(Graph(3, [(0, 1), (1, 2), (0, 2)]))
    bs = s.block_structures[0]
    assert len(bs.inner_faces) == 1
    assert face_tree(bs) == []


def test_face_tree_quad_with_chord():
    s = recognize(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]))
    bs = s.block_structures[0]
    assert len(bs.inner_faces) == 2
    links = face_tree(bs)
    assert len(links) == 1
    assert links[0][2] == (0, 2)


def test_face_tree_fan():
    s = recognize(fan_graph(5))
    bs = s.block_structures[0]
    assert len(bs.inner_faces) == 3
    links = face_tree(bs)
    assert len(links) == 2
    # A path of three triangles: degree sequence of the face tree is 1,2,1.
    from collections import Counter
    deg = Counter()
    for i, j, _ in links:
        deg[i] += 1
        deg[j] += 1
    assert sorted(deg.values()) == [1, 1, 2]


# ---------------------------------------------------------------------------
# almost-layered drawings
# ---------------------------------------------------------------------------

def test_star_rooted_at_center():
    g = Graph(5, [(0, i) for i in range(1, 5)])
    ld = almost_layered_draw(g, root=0)
    assert ld.layer[0] == 1
    assert all(ld.layer[i] == 2 for i in range(1, 5))
    validate_layered(g, ld)


def test_triangle_rooted():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    ld = almost_layered_draw(g, root=0)
    assert ld.layer[0] == 1
    assert ld.layer[1] == ld.layer[2] == 2
    validate_layered(g, ld)


def test_path_rooted_at_endpoint():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    ld = almost_layered_draw(g, root=0)
    assert [ld.layer[v] for v in range(4)] == [1, 2, 3, 4]
    validate_layered(g, ld)


def test_root_is_unique_layer1_vertex():
    g = fan_graph(7)
    ld = almost_layered_draw(g, root=3)
    assert ld.layer[3] == 1
    assert sum(1 for v, k in ld.layer.items() if k == 1) == 1
    validate_layered(g, ld)


def test_layer_count_at_most_n():
    rng = rng_from_seed(5)
    for _ in range(20):
        n = rng.randint(1, 40)
        g = random_outerplanar(rng, n)
        ld = almost_layered_draw(g, root=rng.randrange(n))
        assert ld.layer_count() <= n
        validate_layered(g, ld)


def test_non_outerplanar_raises_scope_error():
    g = Graph(4, itertools.combinations(range(4), 2))
    with pytest.raises(ScopeError) as ei:
        almost_layered_draw(g)
    assert isinstance(ei.value.evidence, Rejection)


def test_disconnected_raises_input_error():
    with pytest.raises(InputError):
        almost_layered_draw(Graph(4, [(0, 1), (2, 3)]))


def test_random_corpus_layered_invariants():
    rng = rng_from_seed(20260811)
    for trial in range(100):
        n = rng.randint(2, 120)
        g = random_outerplanar(rng, n)
        root = rng.randrange(n)
        ld = almost_layered_draw(g, root=root)
        assert ld.layer[root] == 1
        validate_layered(g, ld)


def test_big_block_fixture():
    rng = rng_from_seed(99)
    g = random_maximal_outerplanar(rng, 60)
    ld = almost_layered_draw(g, root=0)
    validate_layered(g, ld)


def test_glued_fixture():
    # Two maximal outerplanar blocks sharing a cutvertex, plus pendants.
    rng = rng_from_seed(3)
    e1 = triangulated = set()
    from planefix.randgraphs import triangulated_polygon_edges
    edges = set(triangulated_polygon_edges(rng, [0, 1, 2, 3, 4, 5]))
    edges |= triangulated_polygon_edges(rng, [5, 6, 7, 8])
    edges |= {(2, 9), (9, 10), (6, 11)}
    g = Graph(12, edges)
    ld = almost_layered_draw(g, root=0)
    validate_layered(g, ld)
