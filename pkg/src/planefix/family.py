"""Recursive triangulation families and exact straight-line drawings.

`refine` pastes a copy of a seed triangulation (minus its designated outer
triangle) into every face of a triangulation, keeping the rotation system
consistent; iterating it from a seed of f faces multiplies the face count
by f - 1 per level. `tutte_draw` realizes any such member in the plane by
solving the barycentric equations exactly over the rationals and then
verifying crossing-freeness with the exact predicates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Mapping, Sequence

from .errors import BudgetError, InputError, VerificationError
from .geometry import Drawing, Point, crossing_report
from .graphs import Edge, Graph, RotationEmbedding, edge, is_triangulation

VERTEX_CAP = 10 ** 6


def _canon_walk(walk: Sequence[int]) -> tuple[int, ...]:
    """Rotation-canonical form of a cyclic walk (orientation preserved)."""
    k = len(walk)
    i = min(range(k), key=lambda j: walk[j])
    return tuple(walk[(i + j) % k] for j in range(k))


@dataclass(frozen=True)
class SeedTriangulation:
    """A triangulation seed with a designated outer triangle used to align
    every pasted copy."""

    embedding: RotationEmbedding
    outer_face: int = 0

    def __post_init__(self):
        e = self.embedding
        if e.graph.n < 4:
            raise InputError("seed triangulation needs at least 4 vertices")
        if not is_triangulation(e):
            raise InputError("seed embedding is not a triangulation")
        if not (0 <= self.outer_face < len(e.faces)):
            raise InputError("designated outer face index out of range")

    @property
    def v(self) -> int:
        return self.embedding.graph.n

    @property
    def f(self) -> int:
        return len(self.embedding.faces)


def refine(e: RotationEmbedding, seed: SeedTriangulation):
    """Paste a seed copy into every face of a triangulation.

    Returns (embedding, copy_maps, face_parent):
      copy_maps[i]  - for host face i, the map seed vertex -> refined id;
      face_parent[j] - for face j of the result, the host face it replaced.

    Face counts obey f_out = f_in * (f_seed - 1) and
    v_out = v_in + f_in * (v_seed - 3), both checked exactly.
    """
    if not is_triangulation(e):
        raise InputError("refine requires a triangulation")
    s_emb = seed.embedding
    sw = _min_first(s_emb.faces[seed.outer_face])
    s0, s1, s2 = sw
    interior = [v for v in range(s_emb.graph.n) if v not in (s0, s1, s2)]
    arcs = {s: _interior_arc(s_emb, sw, i) for i, s in enumerate(sw)}

    rotation: dict[int, list[int]] = {v: list(r) for v, r in e.rotation.items()}
    edges: set[Edge] = set(e.graph.edges)
    next_id = e.graph.n
    copy_maps: list[dict[int, int]] = []
    new_face_parent: dict[tuple[int, ...], int] = {}

    for fi, face in enumerate(e.faces):
        t0, t1, t2 = _min_first(face)
        # Walk-reversing identification: both walks see their empty region
        # on the same side, so the copy glues in with orientation reversed.
        phi = {s0: t0, s1: t2, s2: t1}
        for sv in interior:
            phi[sv] = next_id
            next_id += 1
        for sv in interior:
            rotation[phi[sv]] = [phi[x] for x in s_emb.rotation[sv]]
        host_walk = (t0, t1, t2)
        for s in sw:
            t = phi[s]
            j = host_walk.index(t)
            hp, hs = host_walk[j - 1], host_walk[(j + 1) % 3]
            _insert_arc(rotation[t], hp, hs, [phi[x] for x in arcs[s]])
        for (u, v) in s_emb.graph.edges:
            edges.add(edge(phi[u], phi[v]))
        for sfi, sface in enumerate(s_emb.faces):
            if sfi == seed.outer_face:
                continue
            new_face_parent[_canon_walk([phi[x] for x in sface])] = fi
        copy_maps.append(phi)

    out = RotationEmbedding(Graph(next_id, edges), rotation)
    if not is_triangulation(out):
        raise VerificationError("refinement did not produce a triangulation")
    if len(out.faces) != len(e.faces) * (seed.f - 1):
        raise VerificationError("refined face count violates f_in * (f_seed - 1)")
    if out.graph.n != e.graph.n + len(e.faces) * (seed.v - 3):
        raise VerificationError("refined vertex count violates v_in + f_in * (v_seed - 3)")
    face_parent = []
    for f in out.faces:
        key = _canon_walk(f)
        if key not in new_face_parent:
            raise VerificationError(f"refined face {f} does not match any pasted copy")
        face_parent.append(new_face_parent[key])
    return out, copy_maps, face_parent


def _min_first(walk: Sequence[int]) -> tuple[int, int, int]:
    i = min(range(3), key=lambda j: walk[j])
    return walk[i], walk[(i + 1) % 3], walk[(i + 2) % 3]


def _interior_arc(e: RotationEmbedding, walk: Sequence[int], i: int) -> list[int]:
    """Neighbors of walk vertex i strictly inside the seed, read in rotation
    order from the walk successor around to the walk predecessor."""
    s = walk[i]
    sp, ss = walk[i - 1], walk[(i + 1) % 3]
    arc = []
    cur = e.succ(s, ss)
    while cur != sp:
        arc.append(cur)
        cur = e.succ(s, cur)
    return arc


def _insert_arc(rot: list[int], pred: int, succ: int, arc: list[int]) -> None:
    """Splice `arc` into the rotation gap (pred -> succ)."""
    k = len(rot)
    for i in range(k):
        if rot[i] == pred and rot[(i + 1) % k] == succ:
            rot[i + 1:i + 1] = arc
            return
    raise VerificationError(f"rotation gap ({pred} -> {succ}) not found")


@dataclass(frozen=True)
class FamilyMember:
    """Levels 1..k of the family: embeddings, per-level copy maps, and the
    per-face parent links used to restrict a drawing of level k to lower
    levels."""

    levels: tuple[RotationEmbedding, ...]
    copy_maps: tuple[tuple[dict[int, int], ...], ...]   # per refinement step
    face_parents: tuple[tuple[int, ...], ...]           # per refinement step
    designated: tuple[int, ...]                         # outer-face lineage

    @property
    def k(self) -> int:
        return len(self.levels)

    @property
    def embedding(self) -> RotationEmbedding:
        return self.levels[-1]

    def ancestor_face(self, level_from: int, face: int, level_to: int) -> int:
        """Face of `level_to` whose region contains the given face of
        `level_from` (1-based levels, level_to <= level_from)."""
        f = face
        for step in range(level_from - 1, level_to - 1, -1):
            f = self.face_parents[step - 1][f]
        return f


def projected_counts(seed: SeedTriangulation, k: int) -> tuple[int, int]:
    """(v, f) of level k by the exact recurrences."""
    v, f = seed.v, seed.f
    for _ in range(k - 1):
        v = v + f * (seed.v - 3)
        f = f * (seed.f - 1)
    return v, f


def generate(seed: SeedTriangulation, k: int) -> FamilyMember:
    """Levels 1..k of the recursive family; f(G_k) = f * (f-1)^(k-1)."""
    if k < 1:
        raise InputError("level k must be >= 1")
    pv, pf = projected_counts(seed, k)
    if pv > VERTEX_CAP:
        raise BudgetError(
            f"level {k} would have v = {pv} > cap {VERTEX_CAP}; refusing")
    levels = [seed.embedding]
    copy_maps = []
    face_parents = []
    designated = [seed.outer_face]
    first_inner = next(i for i in range(seed.f) if i != seed.outer_face)
    for _ in range(k - 1):
        emb, cmaps, fparent = refine(levels[-1], seed)
        # The designated face descends into the copy pasted on it: take the
        # image of the first non-outer seed face there.
        phi = cmaps[designated[-1]]
        key = _canon_walk([phi[x] for x in seed.embedding.faces[first_inner]])
        canon_index = {_canon_walk(f): i for i, f in enumerate(emb.faces)}
        designated.append(canon_index[key])
        levels.append(emb)
        copy_maps.append(tuple(cmaps))
        face_parents.append(tuple(fparent))
    member = FamilyMember(tuple(levels), tuple(copy_maps),
                          tuple(face_parents), tuple(designated))
    if len(member.embedding.faces) != pf:
        raise VerificationError("face count does not match the closed form")
    return member


# ---------------------------------------------------------------------------
# exact barycentric drawing
# ---------------------------------------------------------------------------

def tutte_draw(e: RotationEmbedding, outer_face: int,
               boundary: Sequence[Point]) -> Drawing:
    """Straight-line drawing with the outer triangle pinned to `boundary`
    (in face-walk order) and every interior vertex at the exact average of
    its neighbors. The result is verified crossing-free before returning.
    """
    if not (0 <= outer_face < len(e.faces)):
        raise InputError("outer_face index out of range")
    walk = e.faces[outer_face]
    if len(walk) != 3 or len(set(walk)) != 3:
        raise InputError("outer face must be a simple triangle")
    if len(boundary) != 3:
        raise InputError("need exactly 3 boundary points")
    b0, b1, b2 = boundary
    if (b1.x - b0.x) * (b2.y - b0.y) - (b1.y - b0.y) * (b2.x - b0.x) == 0:
        raise InputError("boundary points are collinear")
    fixed = {walk[i]: boundary[i] for i in range(3)}
    adj = e.graph.adjacency()
    inner = [v for v in range(e.graph.n) if v not in fixed]
    if not inner:
        return Drawing(fixed)
    index = {v: i for i, v in enumerate(inner)}
    m = len(inner)
    # deg(v) * p_v - sum_{w ~ v} p_w = sum of fixed neighbors
    rows = []
    for v in inner:
        row = [Fraction(0)] * m
        bx = Fraction(0)
        by = Fraction(0)
        row[index[v]] = Fraction(len(adj[v]))
        for w in adj[v]:
            if w in fixed:
                bx += fixed[w].x
                by += fixed[w].y
            else:
                row[index[w]] -= 1
        rows.append((row, bx, by))
    xs, ys = _solve_exact(rows, m)
    pos = dict(fixed)
    for v, i in index.items():
        pos[v] = Point(xs[i], ys[i])
    d = Drawing(pos)
    bad = crossing_report(e.graph, d, limit=1)
    if bad:
        raise VerificationError(f"barycentric drawing has a crossing: {bad[0]}")
    return d


def _solve_exact(rows, m: int) -> tuple[list[Fraction], list[Fraction]]:
    """Gaussian elimination over the rationals with two right-hand sides."""
    a = [list(r[0]) + [r[1], r[2]] for r in rows]
    for col in range(m):
        piv = next((r for r in range(col, m) if a[r][col] != 0), None)
        if piv is None:
            raise VerificationError("singular barycentric system")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(m):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[i][m] for i in range(m)], [a[i][m + 1] for i in range(m)]


def drawing_respects_embedding(e: RotationEmbedding, d: Drawing) -> bool:
    """True iff the geometric face structure of d matches e's faces (up to
    global reflection): the angular neighbor order at every vertex induces
    the same face set."""
    geo_rot: dict[int, list[int]] = {}
    for v in range(e.graph.n):
        pv = d[v]

        def cmp(u: int, w: int) -> int:
            du = (d[u].x - pv.x, d[u].y - pv.y)
            dw = (d[w].x - pv.x, d[w].y - pv.y)
            hu = 0 if (du[1] > 0 or (du[1] == 0 and du[0] > 0)) else 1
            hw = 0 if (dw[1] > 0 or (dw[1] == 0 and dw[0] > 0)) else 1
            if hu != hw:
                return -1 if hu < hw else 1
            cr = du[0] * dw[1] - du[1] * dw[0]
            return 0 if cr == 0 else (1 if cr < 0 else -1)

        geo_rot[v] = sorted(e.rotation[v], key=cmp_to_key(cmp))
    try:
        geo = RotationEmbedding(e.graph, geo_rot)
    except InputError:
        return False
    want = {frozenset(f) for f in e.faces}
    got = {frozenset(f) for f in geo.faces}
    return want == got and len(geo.faces) == len(e.faces)


def family_drawing(member: FamilyMember, scale: int = 1000) -> Drawing:
    """Canonical plane drawing of the top level: outer face = the designated
    descendant, pinned to a fixed wide triangle."""
    outer = member.designated[-1]
    boundary = (Point(0, 0), Point(4 * scale, 0), Point(2 * scale, 3 * scale))
    return tutte_draw(member.embedding, outer, boundary)
