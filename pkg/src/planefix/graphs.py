"""Combinatorial layer: graphs, rotation-system embeddings, faces, blocks,
duals and circumference search.

Embeddings are pure rotation systems; coordinates never appear here. All
embeddings in this package are produced constructively (seed fixtures,
face refinement, outerplanar recognition), so no general planarity test
is needed or provided.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InputError, VerificationError

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertex ids [0, n)."""

    n: int
    edges: frozenset[Edge]

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        norm = set()
        for (u, v) in edges:
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range [0, {n})")
            norm.add(edge(u, v))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(self.n)}
        for (u, v) in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges


def adjacency_of(edges: Iterable[Edge], vertices: Iterable[int]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for (u, v) in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def connected_components(adj: Mapping[int, Iterable[int]]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class BlockTree:
    """Block/cutvertex decomposition of a connected graph."""

    blocks: tuple[frozenset[int], ...]          # vertex set per block
    block_edges: tuple[frozenset[Edge], ...]    # edge set per block
    cutvertices: frozenset[int]

    def blocks_at(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]


def blocks_and_cutvertices(g: Graph) -> BlockTree:
    """Hopcroft-Tarjan block decomposition (iterative DFS).

    Raises on disconnected input, listing the components.
    """
    adj = g.adjacency()
    comps = connected_components(adj)
    if g.n == 0:
        return BlockTree((), (), frozenset())
    if len(comps) > 1:
        raise InputError(f"graph is disconnected; components: {comps}")
    return _blocks_from_adjacency(adj)


def _blocks_from_adjacency(adj: Mapping[int, Sequence[int]]) -> BlockTree:
    verts = sorted(adj)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    cutvertices: set[int] = set()
    blocks: list[frozenset[int]] = []
    block_edges: list[frozenset[Edge]] = []
    estack: list[Edge] = []
    counter = 0

    for root in verts:
        if root in disc:
            continue
        stack = [(root, iter(adj[root]))]
        parent[root] = None
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    parent[w] = v
                    disc[w] = low[w] = counter
                    counter += 1
                    estack.append(edge(v, w))
                    if v == root:
                        root_children += 1
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
                elif w != parent[v] and disc[w] < disc[v]:
                    estack.append(edge(v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    # u closes a block; every edge pushed after (u, v) is in it.
                    eset = set()
                    while True:
                        e = estack.pop()
                        eset.add(e)
                        if e == edge(u, v):
                            break
                    vset = {x for e in eset for x in e}
                    blocks.append(frozenset(vset))
                    block_edges.append(frozenset(eset))
                    if u != root or root_children > 1:
                        cutvertices.add(u)
    order = sorted(range(len(blocks)), key=lambda i: sorted(blocks[i]))
    return BlockTree(tuple(blocks[i] for i in order),
                     tuple(block_edges[i] for i in order),
                     frozenset(cutvertices))


class RotationEmbedding:
    """Rotation system plus the derived face list.

    ``rotation[v]`` is the cyclic order of v's neighbors. Faces are traced
    with the successor rule: arriving at v along (u, v), the walk leaves
    along (v, w) where w follows u in rotation[v]. For a sphere embedding
    the Euler relation v - e + f = 2 must hold (checked for connected
    graphs).
    """

    def __init__(self, graph: Graph, rotation: Mapping[int, Sequence[int]],
                 check_euler: bool = True):
        adj = graph.adjacency()
        rot: dict[int, tuple[int, ...]] = {}
        for v in range(graph.n):
            r = tuple(rotation.get(v, ()))
            if sorted(r) != adj[v]:
                raise InputError(
                    f"rotation at vertex {v} is not a permutation of its "
                    f"neighbors: {r} vs {adj[v]}")
            rot[v] = r
        self.graph = graph
        self.rotation = rot
        self._succ = {
            v: {r[i]: r[(i + 1) % len(r)] for i in range(len(r))}
            for v, r in rot.items() if r
        }
        self.faces: tuple[tuple[int, ...], ...] = self._trace_faces()
        if check_euler and graph.n > 0:
            comps = connected_components(adj)
            if len(comps) == 1:
                euler = graph.n - graph.m + len(self.faces)
                if euler != 2:
                    raise InputError(
                        f"rotation system is not spherical: v - e + f = {euler}")

    def _trace_faces(self) -> tuple[tuple[int, ...], ...]:
        visited: set[tuple[int, int]] = set()
        faces: list[tuple[int, ...]] = []
        darts = sorted((u, v) for u in self.rotation for v in self.rotation[u])
        for start in darts:
            if start in visited:
                continue
            walk: list[int] = []
            cur = start
            while cur not in visited:
                visited.add(cur)
                u, v = cur
                walk.append(u)
                cur = (v, self._succ[v][u])
            if cur != start:
                raise InputError("inconsistent rotation: face walk does not close")
            faces.append(tuple(walk))
        return tuple(faces)

    def face_count(self) -> int:
        return len(self.faces)

    def succ(self, v: int, u: int) -> int:
        """Neighbor following u in the rotation at v."""
        return self._succ[v][u]


def trace_faces(e: RotationEmbedding) -> tuple[tuple[int, ...], ...]:
    return e.faces


def is_triangulation(e: RotationEmbedding) -> bool:
    """True iff every facial walk is a simple triangle (and hence 3f = 2e)."""
    if e.graph.n < 3:
        return False
    for f in e.faces:
        if len(f) != 3 or len(set(f)) != 3:
            return False
    return True


def dual_graph(e: RotationEmbedding) -> tuple[Graph, list[tuple[int, ...]]]:
    """Dual graph: one vertex per face, adjacent iff the faces share an edge.

    Returns (dual, face list) where face i of the list is dual vertex i.
    Raises when the dual would need loops or parallel edges, which only
    happens for non-3-connected input.
    """
    side: dict[tuple[int, int], int] = {}
    for i, f in enumerate(e.faces):
        k = len(f)
        for j in range(k):
            side[(f[j], f[(j + 1) % k])] = i
    dedges: set[Edge] = set()
    seen_pairs: dict[Edge, Edge] = {}
    for (u, v) in e.graph.edges:
        f1, f2 = side[(u, v)], side[(v, u)]
        if f1 == f2:
            raise InputError(
                f"edge ({u}, {v}) borders face {f1} on both sides; "
                "dual undefined (input not 3-connected)")
        de = edge(f1, f2)
        if de in seen_pairs:
            raise InputError(
                f"faces {de} share two edges ({seen_pairs[de]} and "
                f"{(u, v)}); dual has parallel edges (input not 3-connected)")
        seen_pairs[de] = (u, v)
        dedges.add(de)
    return Graph(len(e.faces), dedges), list(e.faces)


def embedding_from_faces(n: int, faces: Sequence[Sequence[int]]) -> RotationEmbedding:
    """Rebuild the rotation system from a consistently oriented face list.

    Each face (a, b, c, ...) contributes the successor constraints
    succ_v(prev) = next at every corner; the constraints must chain into
    one cycle per vertex.
    """
    succ: dict[int, dict[int, int]] = {v: {} for v in range(n)}
    edges: set[Edge] = set()
    for f in faces:
        k = len(f)
        for i in range(k):
            a, v, b = f[i - 1], f[i], f[(i + 1) % k]
            if a in succ[v]:
                raise InputError(f"face list not consistently oriented at {v}")
            succ[v][a] = b
            edges.add(edge(v, b))
    rotation: dict[int, list[int]] = {}
    for v in range(n):
        if not succ[v]:
            rotation[v] = []
            continue
        start = next(iter(succ[v]))
        cyc = [start]
        cur = succ[v][start]
        while cur != start:
            cyc.append(cur)
            cur = succ[v][cur]
        if len(cyc) != len(succ[v]):
            raise InputError(f"rotation at vertex {v} does not close into one cycle")
        rotation[v] = cyc
    return RotationEmbedding(Graph(n, edges), rotation)


def k4_embedding() -> RotationEmbedding:
    return embedding_from_faces(4, [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])


def octahedron_embedding() -> RotationEmbedding:
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1),
             (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4)]
    return embedding_from_faces(6, faces)


def icosahedron_embedding() -> RotationEmbedding:
    # North pole 0, upper ring 1-5, lower ring 6-10, south pole 11.
    up = [1, 2, 3, 4, 5]
    lo = [6, 7, 8, 9, 10]
    faces: list[tuple[int, int, int]] = []
    for i in range(5):
        j = (i + 1) % 5
        faces.append((0, up[i], up[j]))
        faces.append((up[j], up[i], lo[i]))
        faces.append((lo[i], lo[j], up[j]))
        faces.append((11, lo[j], lo[i]))
    return embedding_from_faces(12, faces)


def subdivide_face(e: RotationEmbedding, face_index: int) -> RotationEmbedding:
    """Insert a new degree-3 vertex inside a triangular face."""
    f = e.faces[face_index]
    if len(f) != 3:
        raise InputError("can only subdivide a triangular face")
    a, b, c = f
    w = e.graph.n
    rotation = {v: list(r) for v, r in e.rotation.items()}

    def insert_in_gap(v: int, pred: int, succ_v: int):
        r = rotation[v]
        i = r.index(pred)
        if r[(i + 1) % len(r)] != succ_v:
            raise VerificationError("face corner not found in rotation")
        r.insert(i + 1, w)

    insert_in_gap(a, c, b)
    insert_in_gap(b, a, c)
    insert_in_gap(c, b, a)
    rotation[w] = [a, c, b]
    g = Graph(w + 1, set(e.graph.edges) | {edge(a, w), edge(b, w), edge(c, w)})
    return RotationEmbedding(g, rotation)


@dataclass(frozen=True)
class CircumferenceResult:
    length: int
    cycle: tuple[int, ...]
    exact: bool


def circumference(g: Graph, node_budget: int = 2_000_000) -> CircumferenceResult:
    """Longest cycle via DFS branch-and-bound with degree pruning.

    The witness cycle is returned in canonical form (smallest vertex first,
    lexicographically smaller direction). ``exact`` is False when the node
    budget ran out, in which case the result is a lower bound.
    """
    if g.n < 3:
        raise InputError("circumference needs at least 3 vertices")
    adj = {v: tuple(ws) for v, ws in g.adjacency().items()}
    adjset = {v: frozenset(ws) for v, ws in adj.items()}
    best_len = 0
    best_cycle: tuple[int, ...] = ()
    nodes = 0
    exact = True

    for s in range(g.n):
        if len(adj[s]) < 2:
            continue
        # Only search cycles whose minimum vertex is s.
        avail = {v: sum(1 for w in adj[v] if w >= s) for v in range(g.n)}
        path = [s]
        on_path = {s}

        def dfs(v: int) -> bool:
            """Returns False when the budget is exhausted."""
            nonlocal best_len, best_cycle, nodes, exact
            nodes += 1
            if nodes > node_budget:
                exact = False
                return False
            # Optimistic bound: the path plus every vertex that could still
            # sit on a cycle extension (needs 2 neighbors among the unused
            # vertices, s, or the current endpoint v).
            nv = adjset[v]
            usable = sum(1 for u in range(s + 1, g.n)
                         if u not in on_path
                         and (avail[u] >= 2 or (avail[u] >= 1 and u in nv)))
            if len(path) + usable <= best_len:
                return True
            for w in adj[v]:
                if w == s and len(path) >= 3:
                    if len(path) > best_len:
                        best_len = len(path)
                        best_cycle = _canonical_cycle(path)
                if w <= s or w in on_path:
                    continue
                path.append(w)
                on_path.add(w)
                for x in adj[w]:
                    avail[x] -= 1
                ok = dfs(w)
                for x in adj[w]:
                    avail[x] += 1
                path.pop()
                on_path.remove(w)
                if not ok:
                    return False
            return True

        if not dfs(s):
            break
    return CircumferenceResult(best_len, best_cycle, exact)


def _canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate/reflect a cycle so it starts at its minimum with the smaller
    second element."""
    k = len(cycle)
    i = min(range(k), key=lambda j: cycle[j])
    fwd = tuple(cycle[(i + j) % k] for j in range(k))
    bwd = tuple(cycle[(i - j) % k] for j in range(k))
    return min(fwd, bwd)


def cycle_is_valid(g: Graph, cycle: Sequence[int]) -> bool:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k))


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Backtracking isomorphism test with degree pruning; meant for the
    small fixtures used in tests (n <= 12 or so)."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    adj1 = {v: set(ws) for v, ws in g1.adjacency().items()}
    adj2 = {v: set(ws) for v, ws in g2.adjacency().items()}
    deg1 = sorted(len(adj1[v]) for v in adj1)
    deg2 = sorted(len(adj2[v]) for v in adj2)
    if deg1 != deg2:
        return False
    order = sorted(range(g1.n), key=lambda v: -len(adj1[v]))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in range(g2.n):
            if w in used or len(adj2[w]) != len(adj1[v]):
                continue
            ok = True
            for u in adj1[v]:
                if u in mapping and mapping[u] not in adj2[w]:
                    ok = False
                    break
            for u, mu in mapping.items():
                if u not in adj1[v] and mu in adj2[w]:
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.remove(w)
        return False

    return extend(0)
