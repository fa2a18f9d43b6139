"""Outerplanar graphs: recognition, block face structure, and almost-layered
straight-line drawings.

A drawing is *almost layered* when every vertex sits on one of the
horizontal lines y = 1, 2, 3, ... and every edge joins vertices on the
same or on consecutive layers. `almost_layered_draw` produces such a
drawing for any connected outerplanar graph, with a prescribed root placed
alone on layer 1; it is the entry point of the untangling pipeline.

Recognition works per 2-connected block: the outer Hamiltonian cycle is
recovered by repeatedly peeling degree-2 vertices, then chords are checked
to be non-crossing with a stack scan over the recovered cyclic order. No
general planarity test is involved.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError, ScopeError, VerificationError
from .geometry import Drawing, Point, simplest_between
from .graphs import (BlockTree, Edge, Graph, blocks_and_cutvertices,
                     connected_components, edge, _blocks_from_adjacency)


# ---------------------------------------------------------------------------
# structure types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockStructure:
    """Outer cycle and inner faces of one 2-connected outerplanar block."""

    outer_cycle: tuple[int, ...]
    inner_faces: tuple[tuple[int, ...], ...]
    chords: tuple[Edge, ...]

    def edge_faces(self) -> dict[Edge, list[int]]:
        ef: dict[Edge, list[int]] = {}
        for i, f in enumerate(self.inner_faces):
            k = len(f)
            for j in range(k):
                ef.setdefault(edge(f[j], f[(j + 1) % k]), []).append(i)
        return ef


@dataclass(frozen=True)
class Rejection:
    """Witness that a graph is not outerplanar."""

    reason: str                     # 'edge-bound' | 'no-outer-cycle' | 'broken-cycle' | 'crossing-chords'
    detail: str
    block: tuple[int, ...] = ()

    def __str__(self):
        return f"not outerplanar ({self.reason}): {self.detail}"


@dataclass(frozen=True)
class OuterplanarStructure:
    block_tree: BlockTree
    # Aligned with block_tree.blocks; None for single-edge blocks.
    block_structures: tuple[BlockStructure | None, ...]


@dataclass(frozen=True)
class LayeredDrawing:
    """A drawing plus a positive layer index per vertex (y == layer)."""

    drawing: Drawing
    layer: dict[int, int]

    def layer_count(self) -> int:
        return max(self.layer.values(), default=0)

    def segments(self) -> dict[int, list[int]]:
        """Vertices of each layer ordered by x."""
        segs: dict[int, list[int]] = {}
        for v, k in self.layer.items():
            segs.setdefault(k, []).append(v)
        for k in segs:
            segs[k].sort(key=lambda v: self.drawing[v].x)
        return segs


def validate_layered(g: Graph, ld: LayeredDrawing) -> None:
    """Check all LayeredDrawing invariants exactly; raise on violation."""
    from .geometry import crossing_report
    if set(ld.layer) != set(range(g.n)) or set(ld.drawing.positions) != set(range(g.n)):
        raise InputError("layered drawing does not cover exactly the graph's vertices")
    for v, k in ld.layer.items():
        if k < 1:
            raise InputError(f"vertex {v} has non-positive layer {k}")
        if ld.drawing[v].y != k:
            raise InputError(f"vertex {v} is not on its layer line: y={ld.drawing[v].y}, layer={k}")
    for (u, v) in g.edges:
        if abs(ld.layer[u] - ld.layer[v]) > 1:
            raise InputError(f"edge ({u}, {v}) spans layers {ld.layer[u]} and {ld.layer[v]}")
    bad = crossing_report(g, ld.drawing, limit=1)
    if bad:
        raise InputError(f"layered drawing is not crossing-free: {bad[0]}")


# ---------------------------------------------------------------------------
# recognition
# ---------------------------------------------------------------------------

def _peel_outer_cycle(vertices: Sequence[int], adj: Mapping[int, set[int]]):
    """Outer Hamiltonian cycle of a 2-connected outerplanar block, or a
    Rejection. `adj` must be the block's own adjacency."""
    verts = sorted(vertices)
    if len(verts) == 3:
        return tuple(verts)
    from collections import deque
    work = {v: set(adj[v]) for v in verts}
    records: list[tuple[int, int, int]] = []
    remaining = set(verts)
    queue = deque(v for v in verts if len(work[v]) == 2)
    while len(remaining) > 3:
        v = None
        while queue:
            cand = queue.popleft()
            if cand in remaining and len(work[cand]) == 2:
                v = cand
                break
        if v is None:
            return Rejection("no-outer-cycle",
                             f"no degree-2 vertex left among {sorted(remaining)}",
                             tuple(verts))
        u, w = sorted(work[v])
        records.append((v, u, w))
        remaining.remove(v)
        work[u].discard(v)
        work[w].discard(v)
        del work[v]
        if w not in work[u]:
            work[u].add(w)
            work[w].add(u)
        for x in (u, w):
            if len(work[x]) == 2:
                queue.append(x)
    a, b, c = sorted(remaining)
    if not (b in work[a] and c in work[a] and c in work[b]):
        return Rejection("no-outer-cycle",
                         f"peeling left a non-triangle on {sorted(remaining)}",
                         tuple(verts))
    order = [a, b, c]
    for (v, u, w) in reversed(records):
        k = len(order)
        spot = None
        for i in range(k):
            if {order[i], order[(i + 1) % k]} == {u, w}:
                spot = i + 1
                break
        if spot is None:
            return Rejection("crossing-chords",
                             f"vertex {v} cannot be reinserted between {u} and {w}",
                             tuple(verts))
        order.insert(spot, v)
    return tuple(order)


def _noncrossing_chords(order: Sequence[int], edges: Iterable[Edge]):
    """Split edges into (outer, chords); return a Rejection if the cyclic
    order misses an edge or two chords interleave."""
    k = len(order)
    pos = {v: i for i, v in enumerate(order)}
    outer_pairs = {edge(order[i], order[(i + 1) % k]) for i in range(k)}
    chords = []
    for e in edges:
        if e in outer_pairs:
            continue
        i, j = sorted((pos[e[0]], pos[e[1]]))
        if j - i == 0:
            return Rejection("broken-cycle", f"edge {e} degenerate on cycle")
        chords.append((i, j, e))
    missing = outer_pairs - {edge(u, v) for (u, v) in edges}
    if missing:
        return Rejection("broken-cycle",
                         f"recovered outer cycle uses non-edges {sorted(missing)}",
                         tuple(order))
    chords.sort(key=lambda t: (t[0], -t[1]))
    stack: list[tuple[int, Edge]] = []
    for (lo, hi, e) in chords:
        while stack and stack[-1][0] <= lo:
            stack.pop()
        if stack and hi > stack[-1][0]:
            return Rejection("crossing-chords",
                             f"chords {stack[-1][1]} and {e} interleave",
                             tuple(order))
        stack.append((hi, e))
    return [e for (_, _, e) in chords]


def _trace_faces_dict(rotation: Mapping[int, Sequence[int]]) -> list[tuple[int, ...]]:
    succ = {v: {r[i]: r[(i + 1) % len(r)] for i in range(len(r))}
            for v, r in rotation.items()}
    visited: set[tuple[int, int]] = set()
    faces = []
    for u in sorted(rotation):
        for v in rotation[u]:
            if (u, v) in visited:
                continue
            walk = []
            cur = (u, v)
            while cur not in visited:
                visited.add(cur)
                a, b = cur
                walk.append(a)
                cur = (b, succ[b][a])
            faces.append(tuple(walk))
    return faces


def _block_structure(vertices: Sequence[int], adj: Mapping[int, set[int]]):
    """BlockStructure of a 2-connected outerplanar block, or a Rejection."""
    order = _peel_outer_cycle(vertices, adj)
    if isinstance(order, Rejection):
        return order
    edges = {edge(u, v) for u in vertices for v in adj[u] if u < v}
    chords = _noncrossing_chords(order, edges)
    if isinstance(chords, Rejection):
        return chords
    # Convex-position rotation: from vertex at cycle position i, neighbors
    # sorted by cyclic distance give the angular order.
    k = len(order)
    pos = {v: i for i, v in enumerate(order)}
    rotation = {
        v: sorted(adj[v], key=lambda w: (pos[w] - pos[v]) % k)
        for v in vertices
    }
    faces = _trace_faces_dict(rotation)
    outer = None
    for i, f in enumerate(faces):
        if len(f) == k and set(f) == set(order):
            # The outer walk traverses the cycle against its orientation.
            outer = i
            break
    if outer is None:
        return Rejection("broken-cycle", "no face contains the whole outer cycle",
                         tuple(order))
    inner = tuple(f for i, f in enumerate(faces) if i != outer)
    # Euler bookkeeping for a 2-connected plane block.
    if len(inner) != len(edges) - k + 1:
        return Rejection("broken-cycle",
                         f"inner face count {len(inner)} != e - n + 1",
                         tuple(order))
    return BlockStructure(tuple(order), inner, tuple(sorted(chords)))


def recognize(g: Graph):
    """OuterplanarStructure of g, or a Rejection witness.

    Rejection is a returned value, not an exception; callers that require
    outerplanarity wrap it in a ScopeError.
    """
    if g.n >= 2 and g.m > 2 * g.n - 3:
        return Rejection("edge-bound", f"e = {g.m} > 2n - 3 = {2 * g.n - 3}")
    adj = {v: set() for v in range(g.n)}
    for (u, v) in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    comps = connected_components(adj)
    if len(comps) <= 1:
        bt = blocks_and_cutvertices(g)
    else:
        bt = _blocks_from_adjacency(adj)
    structures: list[BlockStructure | None] = []
    for bverts, bedges in zip(bt.blocks, bt.block_edges):
        if len(bverts) <= 2:
            structures.append(None)
            continue
        sub = {v: {w for w in adj[v] if w in bverts} for v in bverts}
        bs = _block_structure(sorted(bverts), sub)
        if isinstance(bs, Rejection):
            return bs
        structures.append(bs)
    return OuterplanarStructure(bt, tuple(structures))


def face_tree(bs: BlockStructure) -> list[tuple[int, int, Edge]]:
    """Adjacency tree of a block's inner faces: (face i, face j, shared edge).

    Two inner faces are adjacent iff they share an edge; for a 2-connected
    outerplanar block this graph is a tree.
    """
    links = []
    for e, faces in bs.edge_faces().items():
        if len(faces) == 2:
            links.append((faces[0], faces[1], e))
        elif len(faces) > 2:
            raise VerificationError(f"edge {e} lies on {len(faces)} inner faces")
    if len(bs.inner_faces) and len(links) != len(bs.inner_faces) - 1:
        raise VerificationError("inner face adjacency is not a tree")
    return sorted(links)


# ---------------------------------------------------------------------------
# almost-layered drawing
# ---------------------------------------------------------------------------

def _components_without(adj: Mapping[int, set[int]], removed: set[int]):
    seen: set[int] = set(removed)
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _induced(adj: Mapping[int, set[int]], verts: set[int]) -> dict[int, set[int]]:
    return {v: adj[v] & verts for v in verts}


def _region_boundary_walk(faces: Sequence[tuple[int, ...]],
                          start: int, avoid_first: int | None = None):
    """Closed boundary walk of a union of inner faces forming a disk.

    Boundary edges are those used by exactly one face of the union. The
    walk starts at `start`; when `avoid_first` is given, the first step
    does not go there.
    """
    count: dict[Edge, int] = {}
    for f in faces:
        k = len(f)
        for j in range(k):
            e = edge(f[j], f[(j + 1) % k])
            count[e] = count.get(e, 0) + 1
    boundary: dict[int, list[int]] = {}
    for (u, v), c in count.items():
        if c == 1:
            boundary.setdefault(u, []).append(v)
            boundary.setdefault(v, []).append(u)
    for v, ns in boundary.items():
        if len(ns) != 2:
            raise VerificationError(
                f"face-union boundary is not a simple cycle at vertex {v}")
    first_opts = sorted(boundary[start])
    nxt = first_opts[0] if first_opts[0] != avoid_first else first_opts[1]
    walk = [start, nxt]
    while True:
        a, b = boundary[walk[-1]]
        step = a if a != walk[-2] else b
        if step == start:
            return walk
        walk.append(step)


class _DrawState:
    def __init__(self, adj: Mapping[int, set[int]]):
        self.pos: dict[int, Point] = {}
        self.layer: dict[int, int] = {}
        self.full_adj = adj

    def place(self, v: int, p: Point):
        if p.y.denominator != 1 or p.y < 1:
            raise VerificationError(f"vertex {v} placed off a layer line: {p}")
        if v in self.pos:
            if self.pos[v] != p:
                raise VerificationError(f"vertex {v} placed twice inconsistently")
            return
        self.pos[v] = p
        self.layer[v] = int(p.y)


def _cone_slice(apex: Point, bl: Point, br: Point, y: Fraction):
    """x-interval of the triangle (bottom apex, two top corners) at height y."""
    xl = apex.x + (bl.x - apex.x) * (y - apex.y) / (bl.y - apex.y)
    xr = apex.x + (br.x - apex.x) * (y - apex.y) / (br.y - apex.y)
    if xl > xr:
        xl, xr = xr, xl
    return xl, xr


def _tent_slice(la: Point, ra: Point, top: Point, y: Fraction):
    """x-interval of the triangle (two bottom anchors, one top apex) at height y."""
    t = (y - la.y) / (top.y - la.y)
    xl = la.x + (top.x - la.x) * t
    xr = ra.x + (top.x - ra.x) * t
    if xl > xr:
        xl, xr = xr, xl
    return xl, xr


def _shrunk(xl: Fraction, xr: Fraction) -> tuple[Fraction, Fraction]:
    """A simple-rational open subinterval well inside (xl, xr)."""
    w = xr - xl
    a = simplest_between(xl + w / 8, xl + w / 4)
    b = simplest_between(xr - w / 4, xr - w / 8)
    return a, b


def _spread(a: Fraction, b: Fraction, m: int) -> list[Fraction]:
    """m equally spaced points on [a, b] (midpoint for m == 1)."""
    if m == 1:
        return [(a + b) / 2]
    step = (b - a) / (m - 1)
    return [a + i * step for i in range(m)]


def _on_segment_at(p: Point, q: Point, y: Fraction) -> Point:
    """Point of segment pq at height y (p.y != q.y)."""
    t = (y - p.y) / (q.y - p.y)
    return Point(p.x + (q.x - p.x) * t, y)


def almost_layered_draw(g: Graph, root: int = 0) -> LayeredDrawing:
    """Almost-layered crossing-free drawing of a connected outerplanar graph
    with `root` placed alone on layer 1.

    Raises ScopeError (with the recognizer's evidence) for non-outerplanar
    input and InputError for disconnected input or a bad root.
    """
    if g.n == 0:
        return LayeredDrawing(Drawing({}), {})
    if not (0 <= root < g.n):
        raise InputError(f"root {root} out of range [0, {g.n})")
    adj = {v: set() for v in range(g.n)}
    for (u, v) in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    comps = connected_components(adj)
    if len(comps) > 1:
        raise InputError(f"graph is disconnected; components: {comps}")
    rec = recognize(g)
    if isinstance(rec, Rejection):
        raise ScopeError(str(rec), evidence=rec)

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 40 * g.n + 10_000))
    state = _DrawState(adj)
    n = g.n
    apex = Point(0, 1)
    _claim1(state, adj, root, apex, Point(-n - 1, n + 1), Point(n + 1, n + 1))
    ld = LayeredDrawing(Drawing(state.pos), state.layer)
    return ld


def _claim1(state: _DrawState, adj: dict[int, set[int]], v: int,
            apex: Point, bl: Point, br: Point) -> None:
    """Draw the connected outerplanar graph `adj` inside the cone triangle
    (apex, bl, br) with v at the apex; apex sits on the lowest layer used."""
    nv = len(adj)
    state.place(v, apex)
    if nv == 1:
        return
    base_y = apex.y + nv
    if bl.y < base_y or br.y < base_y:
        raise VerificationError("claim1 triangle too low for its subgraph")
    xl, xr = _cone_slice(apex, bl, br, base_y)
    sl, sr = _shrunk(xl, xr)
    bl, br = Point(sl, base_y), Point(sr, base_y)

    comps = _components_without(adj, {v})
    if len(comps) > 1:
        # v is a cutvertex: split the cone by rays from the apex.
        comps.sort(key=lambda c: c[0])
        cuts = _spread(bl.x, br.x, len(comps) + 1)
        for j, comp in enumerate(comps):
            part = set(comp) | {v}
            _claim1(state, _induced(adj, part), v,
                    apex, Point(cuts[j], base_y), Point(cuts[j + 1], base_y))
        return

    if len(adj[v]) == 1:
        # Hang the rest one layer up, rooted at v's only neighbor.
        w = next(iter(adj[v]))
        lo, hi = _cone_slice(apex, bl, br, apex.y + 1)
        gap = hi - lo
        ax = simplest_between(lo + gap / 3, hi - gap / 3)
        rest = set(adj) - {v}
        _claim1(state, _induced(adj, rest), w, Point(ax, apex.y + 1), bl, br)
        return

    # v sits inside a 2-connected block with all its neighbors.
    _draw_block_link(state, adj, (v,), (apex,), bl, br, tent=None)


def _claim2(state: _DrawState, adj: dict[int, set[int]], lv: int, rv: int,
            la: Point, ra: Point, top: Point) -> None:
    """Draw `adj` inside the tent triangle (la, ra, top) with the outer edge
    (lv, rv) pinned to the base segment: lv at la, rv at ra."""
    nv = len(adj)
    if la.x >= ra.x or la.y != ra.y:
        raise VerificationError("claim2 anchors must sit left-to-right on one layer")
    state.place(lv, la)
    state.place(rv, ra)
    if nv == 2:
        return
    apex_y = la.y + nv
    if top.y < apex_y:
        raise VerificationError("claim2 triangle too low for its subgraph")
    if top.y > apex_y:
        txl, txr = _tent_slice(la, ra, top, apex_y)
        gap = txr - txl
        top = Point(simplest_between(txl + gap / 3, txr - gap / 3), apex_y)

    comps_v = _components_without(adj, {lv})
    comps_u = _components_without(adj, {rv}) if len(comps_v) == 1 else None

    if len(comps_v) > 1 or (comps_u is not None and len(comps_u) > 1):
        if len(comps_v) > 1:
            split, keep, s_anchor = lv, rv, la
            comps = comps_v
        else:
            split, keep, s_anchor = rv, lv, ra
            comps = comps_u
        # The part holding the other anchor keeps a tent over the base; the
        # rest fans out of the split anchor above the cut point p.
        main = next(c for c in comps if keep in c)
        others = sorted((c for c in comps if keep not in c), key=lambda c: c[0])
        far_side = ra if split == lv else la
        p = _on_segment_at(far_side, top, la.y + nv - 1)
        main_set = set(main) | {split}
        n_main = len(main_set)
        if n_main == nv - 1:
            sub_top = p
        else:
            mxl, mxr = _tent_slice(la, ra, p, la.y + n_main)
            gap = mxr - mxl
            sub_top = Point(simplest_between(mxl + gap / 3, mxr - gap / 3),
                            la.y + n_main)
        _claim2(state, _induced(adj, main_set), lv, rv, la, ra, sub_top)
        # The remaining parts fan out of the split anchor between p and top.
        s = len(others)
        cuts = [p] + [_on_segment_at(p, top, p.y + Fraction(j, s))
                      for j in range(1, s)] + [top]
        for j, comp in enumerate(others):
            part = set(comp) | {split}
            _claim1(state, _induced(adj, part), split,
                    s_anchor, cuts[j], cuts[j + 1])
        return

    _draw_block_link(state, adj, (lv, rv), (la, ra), None, None, tent=top)


def _draw_block_link(state: _DrawState, adj: dict[int, set[int]],
                     anchors: tuple[int, ...], anchor_pts: tuple[Point, ...],
                     bl: Point | None, br: Point | None,
                     tent: Point | None) -> None:
    """Shared engine for the block cases: put the link of the anchors (the
    boundary of the union of inner faces containing them) on the next layer
    and recurse on the attached fragments.

    With one anchor the region is a cone (corners bl/br); with two anchors
    it is a tent with apex `tent` over the anchor segment.
    """
    base_pt = anchor_pts[0]
    layer_y = base_pt.y + 1
    bt = _blocks_from_adjacency(adj)
    if len(anchors) == 1:
        v = anchors[0]
        bidx = next(i for i, b in enumerate(bt.blocks) if v in b and len(b) >= 3)
    else:
        e = edge(anchors[0], anchors[1])
        bidx = next(i for i, es in enumerate(bt.block_edges) if e in es)
        if len(bt.blocks[bidx]) < 3:
            raise VerificationError("anchor edge block is trivial but no cutvertex split applied")
    bverts = bt.blocks[bidx]
    badj = _induced(adj, set(bverts))
    bs = _block_structure(sorted(bverts), badj)
    if isinstance(bs, Rejection):
        raise VerificationError(f"block unexpectedly not outerplanar: {bs}")

    face_sets = [set(f) for f in bs.inner_faces]
    region = [f for f, fs in zip(bs.inner_faces, face_sets)
              if any(a in fs for a in anchors)]
    if len(anchors) == 1:
        walk = _region_boundary_walk(region, anchors[0])
        link = walk[1:]
    else:
        walk = _region_boundary_walk(region, anchors[0], avoid_first=anchors[1])
        if walk[-1] != anchors[1]:
            raise VerificationError("anchor edge is not on the region boundary")
        link = walk[1:-1]
    m = len(link)

    # Fragments hanging beyond link edges (across a chord of the block) and
    # at link vertices (other blocks of the subgraph).
    edge_frags: dict[int, set[int]] = {}
    for i in range(m - 1):
        p, q = link[i], link[i + 1]
        sides = _components_without(badj, {p, q})
        beyond = [c for c in sides if anchors[0] not in c]
        if len(beyond) > 1:
            raise VerificationError("link edge separates the block into 3+ parts")
        if beyond:
            seeds = set(beyond[0])
            grown = set(seeds)
            stack = list(seeds)
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in grown and y != p and y != q:
                        grown.add(y)
                        stack.append(y)
            edge_frags[i] = grown | {p, q}
    vert_frags: dict[int, set[int]] = {}
    for i, q in enumerate(link):
        comps = _components_without(adj, {q})
        hangers = [c for c in comps if anchors[0] not in c]
        if hangers:
            vert_frags[i] = set().union(*hangers) | {q}

    covered = (set(anchors) | set(link)
               | {x for s in edge_frags.values() for x in s}
               | {x for s in vert_frags.values() for x in s})
    if covered != set(adj):
        raise VerificationError("block link decomposition does not cover the subgraph")

    # The link goes on the slice one layer up. Fragments live in the strips
    # between the rays from the ruling corner R (the cone apex below, or the
    # tent top above) through the link points; ray strips stay inside the
    # region even when it leans, which vertical strips do not.
    if tent is None:
        ruler = base_pt
        xl, xr = _cone_slice(base_pt, bl, br, layer_y)
    else:
        ruler = tent
        xl, xr = _tent_slice(anchor_pts[0], anchor_pts[1], tent, layer_y)
    sl, sr = _shrunk(xl, xr)
    xs = _spread(sl, sr, m)
    for q, x in zip(link, xs):
        state.place(q, Point(x, layer_y))

    def ray_at(x0: Fraction, y: Fraction) -> Fraction:
        """x of the ray from the ruler through (x0, layer_y) at height y."""
        return ruler.x + (x0 - ruler.x) * (y - ruler.y) / (layer_y - ruler.y)

    def region_slice(y: Fraction) -> tuple[Fraction, Fraction]:
        if tent is None:
            return _cone_slice(base_pt, bl, br, y)
        return _tent_slice(anchor_pts[0], anchor_pts[1], tent, y)

    # Edge fragments first; their side slopes then wall off the slivers.
    apexes: dict[int, Point] = {}
    for i, frag in sorted(edge_frags.items()):
        y_e = layer_y + len(frag)
        lo, hi = sorted((ray_at(xs[i], y_e), ray_at(xs[i + 1], y_e)))
        ax = simplest_between(lo + (hi - lo) / 3, hi - (hi - lo) / 3)
        apexes[i] = Point(ax, y_e)
    for i, frag in sorted(edge_frags.items()):
        _claim2(state, _induced(adj, frag), link[i], link[i + 1],
                Point(xs[i], layer_y), Point(xs[i + 1], layer_y), apexes[i])

    def slope_wall(i: int, a: Point, y: Fraction) -> Fraction:
        """x at height y of the line through link point i and apex a."""
        return xs[i] + (a.x - xs[i]) * (y - layer_y) / (a.y - layer_y)

    for i, frag in sorted(vert_frags.items()):
        n_q = len(frag)
        y_q = layer_y + n_q
        lo_w, hi_w = region_slice(y_q)
        lo = [lo_w]
        hi = [hi_w]
        if i > 0:
            lo.append(ray_at((xs[i - 1] + xs[i]) / 2, y_q))
        if i < m - 1:
            hi.append(ray_at((xs[i] + xs[i + 1]) / 2, y_q))
        if i - 1 in apexes:
            lo.append(slope_wall(i, apexes[i - 1], y_q))
        if i in apexes:
            hi.append(slope_wall(i, apexes[i], y_q))
        lo_b, hi_b = max(lo), min(hi)
        if not lo_b < hi_b:
            raise VerificationError("no room for a vertex-fragment sliver")
        w = hi_b - lo_b
        a = simplest_between(lo_b + 3 * w / 8, lo_b + w / 2)
        b = simplest_between(lo_b + w / 2, hi_b - 3 * w / 8)
        _claim1(state, _induced(adj, frag), link[i], Point(xs[i], layer_y),
                Point(a, y_q), Point(b, y_q))
