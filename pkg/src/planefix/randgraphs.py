"""Seeded random corpora: outerplanar graphs, collinear inputs, stacked
triangulations and probe lines.

Every generator takes an explicit ``random.Random`` so that one 64-bit
seed drives everything reproducibly (see planefix.GENERATOR_NOTE).
"""
from __future__ import annotations

import random
from fractions import Fraction

from .geometry import Drawing, Line, Point
from .graphs import Graph, RotationEmbedding, k4_embedding, subdivide_face


def rng_from_seed(seed: int) -> random.Random:
    return random.Random(seed)


def random_tree_edges(rng: random.Random, n: int, offset: int = 0) -> list[tuple[int, int]]:
    """Random attachment tree on vertex ids offset..offset+n-1."""
    return [(offset + rng.randrange(i), offset + i) for i in range(1, n)]


def triangulated_polygon_edges(rng: random.Random, ids: list[int]) -> set[tuple[int, int]]:
    """A random maximal outerplanar block: a polygon on `ids` (in cycle
    order) plus recursively chosen non-crossing diagonals triangulating it."""
    m = len(ids)
    if m < 3:
        raise ValueError("polygon needs at least 3 vertices")
    edges = {(ids[i], ids[(i + 1) % m]) for i in range(m)}

    def split(i: int, j: int) -> None:
        if j - i < 2:
            return
        k = rng.randint(i + 1, j - 1)
        if k - i >= 2:
            edges.add((ids[i], ids[k]))
        if j - k >= 2:
            edges.add((ids[k], ids[j]))
        split(i, k)
        split(k, j)

    split(0, m - 1)
    return edges


def random_maximal_outerplanar(rng: random.Random, n: int) -> Graph:
    return Graph(n, triangulated_polygon_edges(rng, list(range(n))))


def random_outerplanar(rng: random.Random, n: int) -> Graph:
    """Connected outerplanar graph on n vertices: random maximal outerplanar
    blocks and single edges glued at random shared vertices."""
    if n <= 0:
        return Graph(0, [])
    edges: list[tuple[int, int]] = []
    cur = 1
    while cur < n:
        attach = rng.randrange(cur)
        room = n - cur
        if room >= 2 and rng.random() < 0.55:
            size = rng.randint(3, min(8, room + 1))
            ids = [attach] + list(range(cur, cur + size - 1))
            edges.extend(triangulated_polygon_edges(rng, ids))
            cur += size - 1
        else:
            edges.append((attach, cur))
            cur += 1
    return Graph(n, edges)


def random_collinear_positions(rng: random.Random, n: int) -> dict[int, Fraction]:
    """Injective x-coordinates on the line y = 0."""
    xs = rng.sample(range(-3 * n - 1, 3 * n + 2), n)
    return {v: Fraction(xs[v]) for v in range(n)}


def random_monotone_targets(rng: random.Random, k: int,
                            lo: int = -1000, hi: int = 1000) -> list[Fraction]:
    """k strictly increasing rational targets."""
    vals = sorted(rng.sample(range(lo * 4, hi * 4), k))
    return [Fraction(v, 4) for v in vals]


def random_apollonian(rng: random.Random, insertions: int) -> RotationEmbedding:
    """Stacked triangulation: start from the 4-vertex triangulation and
    repeatedly drop a degree-3 vertex into a random face."""
    emb = k4_embedding()
    for _ in range(insertions):
        emb = subdivide_face(emb, rng.randrange(len(emb.faces)))
    return emb


def random_line(rng: random.Random, span: int = 100) -> Line:
    while True:
        p = Point(Fraction(rng.randint(-span, span), rng.randint(1, 7)),
                  Fraction(rng.randint(-span, span), rng.randint(1, 7)))
        q = Point(Fraction(rng.randint(-span, span), rng.randint(1, 7)),
                  Fraction(rng.randint(-span, span), rng.randint(1, 7)))
        if p != q:
            return Line.through(p, q)
