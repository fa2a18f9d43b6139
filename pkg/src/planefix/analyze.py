"""Measuring collinearity and line-cut quantities on concrete drawings.

A line *cuts* a face when it meets the face's interior; the unbounded face
is cut by every line. For a fixed crossing-free drawing the number of cut
faces depends only on which side of the line each vertex lies on, so the
per-drawing maximum is found exactly by enumerating, for every vertex
pair, the line through the pair under four symbolic perturbations (offset
to either side, tiny rotation either way about the midpoint).

For triangulations the crossing sequence of a vertex-avoiding line walks
through the dual graph and visits each face at most once, which bounds the
cut count by the dual's circumference; `dual_cut_bound_check` verifies
both facts on concrete drawings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError, VerificationError
from .family import FamilyMember, SeedTriangulation
from .geometry import Drawing, Line, Point, max_collinear, orientation
from .graphs import (CircumferenceResult, RotationEmbedding, circumference,
                     dual_graph, edge, is_triangulation)

SIGMA_LOWER = "log2(1 + sqrt(5)) - 1 = 0.694241..."
SIGMA_UPPER = "log 26 / log 27 = 0.988549..."


def sigma_bounds() -> tuple[float, float]:
    """Numeric bounds on the shortness exponent of cubic polyhedral graphs."""
    return (math.log2(1 + math.sqrt(5)) - 1, math.log(26) / math.log(27))


# ---------------------------------------------------------------------------
# outer face identification and sign vectors
# ---------------------------------------------------------------------------

def _signed_area2(walk: Sequence[int], d: Drawing) -> Fraction:
    s = Fraction(0)
    k = len(walk)
    for i in range(k):
        p, q = d[walk[i]], d[walk[(i + 1) % k]]
        s += p.x * q.y - p.y * q.x
    return s


def outer_face_of(e: RotationEmbedding, d: Drawing) -> int:
    """Index of the unbounded face of the drawing: the unique face whose
    walk orientation disagrees with the others."""
    if len(e.faces) == 1:
        return 0
    areas = [_signed_area2(f, d) for f in e.faces]
    pos = [i for i, a in enumerate(areas) if a > 0]
    neg = [i for i, a in enumerate(areas) if a < 0]
    if len(pos) == 1 and len(neg) >= 1:
        return pos[0]
    if len(neg) == 1 and len(pos) >= 1:
        return neg[0]
    if len(e.faces) == 2:
        return pos[0] if pos else 0
    raise InputError("cannot identify the outer face; drawing inconsistent "
                     "with the embedding")


def line_sign_vector(d: Drawing, l: Line) -> dict[int, int]:
    """Raw side signs of every vertex (0 = on the line)."""
    out = {}
    for v, p in d.positions.items():
        s = l.side(p)
        out[v] = (s > 0) - (s < 0)
    return out


def _resolve_zeros_offset(signs: dict[int, int]) -> tuple[dict[int, int], str | None, int]:
    """Shift the line infinitesimally toward the side with more vertices
    (ties toward the positive side); on-line vertices land on the other side."""
    zeros = [v for v, s in signs.items() if s == 0]
    if not zeros:
        return signs, None, 0
    pos = sum(1 for s in signs.values() if s > 0)
    neg = sum(1 for s in signs.values() if s < 0)
    direction = 1 if pos >= neg else -1
    out = dict(signs)
    for v in zeros:
        out[v] = -direction
    label = f"offset toward {'positive' if direction > 0 else 'negative'} normal"
    return out, label, direction


def _offset_line(l: Line, d: Drawing, direction: int) -> Line:
    """A concrete line realizing the symbolic offset: shifted by half the
    smallest nonzero vertex distance toward the given normal side."""
    nonzero = [abs(l.side(p)) for p in d.positions.values() if l.side(p) != 0]
    eps = min(nonzero) / 2 if nonzero else Fraction(1)
    return Line(l.a, l.b, l.c + eps * direction)


# ---------------------------------------------------------------------------
# cut profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CutProfile:
    line: Line
    faces_cut: int
    cut_face_ids: tuple[int, ...]
    dual_walk: tuple[int, ...]
    signs: Mapping[int, int]
    perturbation: str | None
    outer_face: int


def _faces_cut_by_signs(faces: Sequence[Sequence[int]], signs: Mapping[int, int],
                        outer: int) -> list[int]:
    cut = []
    for i, f in enumerate(faces):
        if i == outer:
            cut.append(i)
            continue
        k = len(f)
        if any(signs[f[j]] != signs[f[(j + 1) % k]] for j in range(k)):
            cut.append(i)
    return cut


def _dual_walk(e: RotationEmbedding, d: Drawing, l: Line,
               signs: Mapping[int, int], outer: int) -> tuple[int, ...]:
    """Face sequence along the line, ordered by the crossing positions."""
    side: dict[tuple[int, int], int] = {}
    for i, f in enumerate(e.faces):
        k = len(f)
        for j in range(k):
            side[(f[j], f[(j + 1) % k])] = i
    dx, dy = l.b, -l.a
    crossings = []
    for (u, v) in sorted(e.graph.edges):
        if signs[u] == signs[v]:
            continue
        pu, pv = d[u], d[v]
        su, sv = l.side(pu), l.side(pv)
        if su == sv:
            t = Fraction(1, 2)
        else:
            t = su / (su - sv)
        px = pu.x + (pv.x - pu.x) * t
        py = pu.y + (pv.y - pu.y) * t
        crossings.append((px * dx + py * dy, (u, v)))
    crossings.sort(key=lambda c: (c[0], c[1]))
    walk = [outer]
    cur = outer
    for _, (u, v) in crossings:
        f1, f2 = side[(u, v)], side[(v, u)]
        if cur == f1:
            cur = f2
        elif cur == f2:
            cur = f1
        else:
            raise VerificationError(
                f"crossing sequence leaves face {cur} without bordering it")
        walk.append(cur)
    return tuple(walk)


def cut_count(e: RotationEmbedding, d: Drawing, l: Line) -> CutProfile:
    """Faces of the drawing cut by the line (outer face always included).

    A line through vertices is resolved by an exact offset toward the side
    holding more vertices (ties toward the positive normal), realized with
    a rational shift smaller than every nonzero vertex distance; the
    applied perturbation is recorded in the profile.
    """
    outer = outer_face_of(e, d)
    signs, perturbation, direction = _resolve_zeros_offset(line_sign_vector(d, l))
    walk_line = _offset_line(l, d, direction) if perturbation else l
    cut = _faces_cut_by_signs(e.faces, signs, outer)
    walk = _dual_walk(e, d, walk_line, signs, outer)
    return CutProfile(l, len(cut), tuple(cut), walk, signs, perturbation, outer)


def _pair_sign_variants(d: Drawing, u: int, v: int,
                        verts: Sequence[int]) -> Iterator[tuple[str, dict[int, int]]]:
    """Sign vectors of the four symbolic perturbations of the line through
    the drawn pair (u, v)."""
    pu, pv = d[u], d[v]
    base: dict[int, int] = {}
    ts: dict[int, int] = {}
    mx2 = pu.x + pv.x          # 2 * midpoint
    my2 = pu.y + pv.y
    dxv = pv.x - pu.x
    dyv = pv.y - pu.y
    for r in verts:
        pr = d[r]
        base[r] = orientation(pu, pv, pr)
        if base[r] == 0:
            t = (2 * pr.x - mx2) * dxv + (2 * pr.y - my2) * dyv
            ts[r] = (t > 0) - (t < 0)
    for name, fix in (
        ("offset+", lambda r: -1),
        ("offset-", lambda r: 1),
        ("rotate+", lambda r: -ts[r] if ts[r] != 0 else -1),
        ("rotate-", lambda r: ts[r] if ts[r] != 0 else 1),
    ):
        yield name, {r: (base[r] if base[r] != 0 else fix(r)) for r in verts}


def candidate_sign_vectors(e: RotationEmbedding, d: Drawing):
    """All candidate (pair, perturbation, sign vector) triples of the
    max-cut enumeration, in deterministic order."""
    verts = sorted(d.positions)
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            for name, signs in _pair_sign_variants(d, u, v, verts):
                yield (u, v), name, signs


def _realize_variant(d: Drawing, u: int, v: int, name: str) -> Line:
    """A concrete rational line whose crossing pattern equals the symbolic
    perturbation `name` of the line through the drawn pair (u, v).

    Offsets shift by half the smallest nonzero vertex distance; rotations
    are realized as a shear of the normal about the midpoint with eps small
    enough to keep every off-line sign, plus a second-order offset for a
    vertex sitting exactly at the midpoint.
    """
    base = Line.through(d[u], d[v])
    a, b, c = base.a, base.b, base.c
    sides = {w: base.side(p) for w, p in d.positions.items()}
    nonzero = [abs(s) for s in sides.values() if s != 0]
    ms = min(nonzero) / 2 if nonzero else Fraction(1)
    if name == "offset+":
        return Line(a, b, c + ms)
    if name == "offset-":
        return Line(a, b, c - ms)
    s1 = 1 if name == "rotate+" else -1
    dx, dy = b, -a
    mx = (d[u].x + d[v].x) / 2
    my = (d[u].y + d[v].y) / 2
    ts = {w: (p.x - mx) * dx + (p.y - my) * dy for w, p in d.positions.items()}
    mt = max((abs(t) for t in ts.values()), default=Fraction(0))
    eps1 = ms / (mt + 1)
    on_t = [abs(ts[w]) for w in d.positions if sides[w] == 0 and ts[w] != 0]
    eps2 = eps1 * min(on_t) / 2 if on_t else eps1 / 2
    return Line(a - eps1 * s1 * dx,
                b - eps1 * s1 * dy,
                c - eps1 * s1 * (mx * dx + my * dy) + eps2 * s1)


def max_cut(e: RotationEmbedding, d: Drawing) -> tuple[int, CutProfile]:
    """Exact per-drawing maximum of cut_count over all lines.

    Every achievable vertex sign vector is realized by a line through two
    vertices under one of the four perturbations, so enumerating those
    candidates is exhaustive. The first candidate attaining the maximum
    (pairs in lexicographic order, perturbations in a fixed order) is the
    witness.
    """
    outer = outer_face_of(e, d)
    n = len(d.positions)
    if n <= 1:
        y = d[next(iter(d.positions))].y - 1 if n == 1 else Fraction(0)
        l = Line.horizontal(y)
        signs = {v: 1 for v in d.positions}
        return 1, CutProfile(l, 1, (outer,), (outer,), signs, None, outer)
    best = 0
    best_key: tuple[int, int, str, dict[int, int], tuple[int, ...]] | None = None
    for (u, v), name, signs in candidate_sign_vectors(e, d):
        cut = _faces_cut_by_signs(e.faces, signs, outer)
        if len(cut) > best:
            best = len(cut)
            best_key = (u, v, name, signs, tuple(cut))
    assert best_key is not None
    u, v, name, signs, cut = best_key
    l = _realize_variant(d, u, v, name)
    walk = _dual_walk(e, d, l, signs, outer)
    return best, CutProfile(l, best, cut, walk, signs, name, outer)


@dataclass(frozen=True)
class DualWalkRecord:
    profile: CutProfile
    walk_is_valid: bool
    dual_circumference: CircumferenceResult
    bound_ok: bool | None        # None when the circumference search hit its budget


def dual_cut_bound_check(e: RotationEmbedding, d: Drawing, l: Line,
                         node_budget: int = 2_000_000) -> DualWalkRecord:
    """Check cut(d, l) <= circumference(dual) on a triangulation drawing.

    The line must avoid all vertices; its crossing sequence is extracted as
    a closed dual walk starting and ending at the outer face and visiting
    every face at most once.
    """
    if not is_triangulation(e):
        raise InputError("dual cut bound applies to triangulations only")
    if any(l.contains(p) for p in d.positions.values()):
        raise InputError("line must avoid all drawn vertices")
    profile = cut_count(e, d, l)
    walk = profile.dual_walk
    valid = walk[0] == profile.outer_face and walk[-1] == profile.outer_face
    interior = list(walk[1:-1]) if len(walk) > 1 else []
    valid = valid and len(set(interior)) == len(interior)
    valid = valid and profile.outer_face not in interior
    valid = valid and set(interior) | {profile.outer_face} >= set(profile.cut_face_ids)
    dual, _ = dual_graph(e)
    circ = circumference(dual, node_budget)
    bound_ok = (profile.faces_cut <= circ.length) if circ.exact else None
    return DualWalkRecord(profile, valid, circ, bound_ok)


# ---------------------------------------------------------------------------
# family bound reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    k: int
    v: int
    f: int
    seed_v: int
    seed_f: int
    fbar: int
    fbar_source: str                     # 'dual-circumference' or 'face-count'
    seed_dual_circumference: CircumferenceResult
    measured_max_cut: int
    cut_bound: int
    cut_ok: bool
    measured_max_collinear: int
    collinear_bound: Fraction
    collinear_ok: bool
    recurrence_ok: bool | None
    recurrence_checked: int
    sigma_note: str

    def as_records(self) -> list[str]:
        lines = [
            f"k = {self.k}",
            f"v = {self.v}",
            f"f = {self.f}",
            f"seed_v = {self.seed_v}",
            f"seed_f = {self.seed_f}",
            f"fbar = {self.fbar}",
            f"fbar_source = {self.fbar_source}",
            f"seed_dual_circumference = {self.seed_dual_circumference.length}"
            f" (exact = {self.seed_dual_circumference.exact})",
            f"measured_max_cut = {self.measured_max_cut}",
            f"cut_bound = {self.cut_bound}",
            f"cut_ok = {self.cut_ok}",
            f"measured_max_collinear = {self.measured_max_collinear}",
            f"collinear_bound = {self.collinear_bound}",
            f"collinear_ok = {self.collinear_ok}",
            f"recurrence_ok = {self.recurrence_ok}",
            f"recurrence_checked = {self.recurrence_checked}",
            f"sigma = {self.sigma_note}",
        ]
        return lines

    def as_text(self) -> str:
        header = f"family bound report (level {self.k}: v = {self.v}, f = {self.f})"
        rows = [
            ("max cut measured / bound",
             f"{self.measured_max_cut} <= {self.cut_bound}"
             f" [{'ok' if self.cut_ok else 'VIOLATED'}]"),
            ("max collinear measured / bound",
             f"{self.measured_max_collinear} <= {self.collinear_bound}"
             f" [{'ok' if self.collinear_ok else 'VIOLATED'}]"),
            ("cut recurrence per level",
             "not checked" if self.recurrence_ok is None else
             f"{self.recurrence_checked} candidate lines"
             f" [{'ok' if self.recurrence_ok else 'VIOLATED'}]"),
            ("fbar", f"{self.fbar} ({self.fbar_source})"),
            ("shortness exponent window", self.sigma_note),
        ]
        width = max(len(r[0]) for r in rows)
        body = "\n".join(f"  {name.ljust(width)}  {val}" for name, val in rows)
        return header + "\n" + body


def verify_family_bounds(member: FamilyMember, seed: SeedTriangulation,
                         d: Drawing, node_budget: int = 2_000_000,
                         audit_recurrence: bool = True) -> BoundReport:
    """Measure max_cut and max_collinear on a drawing of the family's top
    level and compare them with the closed-form bounds.

    fbar is instantiated with the circumference of the seed's dual when the
    search completes (a valid upper bound for the seed's cut number), else
    with the seed's face count. The collinear bound always uses the seed's
    face count, which is unconditionally valid. The recurrence audit
    re-counts cut faces level by level for every candidate sign vector of
    the max-cut enumeration.
    """
    e = member.embedding
    k = member.k
    sdual, _ = dual_graph(seed.embedding)
    circ = circumference(sdual, node_budget)
    if circ.exact:
        fbar, fbar_source = circ.length, "dual-circumference"
    else:
        fbar, fbar_source = seed.f, "face-count"
    measured_cut, _witness = max_cut(e, d)
    cut_bound = fbar * (fbar - 1) ** (k - 1)
    count, _line, _verts = max_collinear(d)
    ff = seed.f
    collinear_bound = Fraction((seed.v - 3) * ff, ff - 2) * (ff - 1) ** (k - 1)

    recurrence_ok: bool | None = None
    checked = 0
    if audit_recurrence:
        recurrence_ok = True
        outer_k = outer_face_of(e, d)
        outers = [member.ancestor_face(k, outer_k, i) for i in range(1, k + 1)]
        level_faces = [lvl.faces for lvl in member.levels]
        for _pair, _name, signs in candidate_sign_vectors(e, d):
            checked += 1
            prev = None
            for i in range(k):
                cut_i = len(_faces_cut_by_signs(level_faces[i], signs, outers[i]))
                if i == 0:
                    if cut_i > fbar:
                        recurrence_ok = False
                elif prev == 1:
                    if cut_i > fbar:
                        recurrence_ok = False
                else:
                    if cut_i > prev * (fbar - 1):
                        recurrence_ok = False
                prev = cut_i
    lo, hi = sigma_bounds()
    return BoundReport(
        k=k, v=e.graph.n, f=len(e.faces), seed_v=seed.v, seed_f=seed.f,
        fbar=fbar, fbar_source=fbar_source, seed_dual_circumference=circ,
        measured_max_cut=measured_cut, cut_bound=cut_bound,
        cut_ok=measured_cut <= cut_bound,
        measured_max_collinear=count, collinear_bound=collinear_bound,
        collinear_ok=count <= collinear_bound,
        recurrence_ok=recurrence_ok, recurrence_checked=checked,
        sigma_note=f"{SIGMA_LOWER} <= sigma <= {SIGMA_UPPER} "
                   f"({lo:.6f} .. {hi:.6f})",
    )


def cut_count_value(e: RotationEmbedding, d: Drawing, l: Line,
                    outer: int | None = None) -> int:
    """Count-only variant of cut_count (no walk, no profile)."""
    if outer is None:
        outer = outer_face_of(e, d)
    signs, _, _ = _resolve_zeros_offset(line_sign_vector(d, l))
    return len(_faces_cut_by_signs(e.faces, signs, outer))


def sample_cut_counts(e: RotationEmbedding, d: Drawing, rng,
                      samples: int) -> int:
    """Max cut count over seeded random probe lines (a sanity oracle that
    must never exceed the enumerated maximum)."""
    from .randgraphs import random_line
    outer = outer_face_of(e, d)
    best = 0
    for _ in range(samples):
        l = random_line(rng)
        best = max(best, cut_count_value(e, d, l, outer))
    return best
