"""Folding layered drawings into drawings with large free collinear sets,
conformal displacement, and untangling collinear drawings of outerplanar
graphs.

The fold puts every second layer on the base line y = 0 and hangs the
remaining layers on perpendiculars between them, alternating half-planes.
The vertices on the base line form a free set: they may be moved to any
strictly increasing target positions and the perpendiculars re-slotted in
between, which `displace_free` does without ever breaking crossing-
freeness. Untangling combines this with a longest monotone subsequence of
the requested positions; the fixed set has size at least ceil(sqrt(n/2))
for an n-vertex connected outerplanar graph.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InputError, ScopeError, VerificationError
from .geometry import Drawing, Line, Point, crossing_report
from .graphs import Graph
from .outerplanar import LayeredDrawing, almost_layered_draw, validate_layered

try:
    from ._lis_kernel import lis_indices_int64
except Exception:      # pragma: no cover - numba genuinely unavailable
    lis_indices_int64 = None


# ---------------------------------------------------------------------------
# fold certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Strip:
    """One perpendicular of a fold: its x position, half-plane sign, the
    off-line vertices in near-to-far order, and the base-line vertices
    whose movements drive its re-placement."""

    x: Fraction
    sign: int                       # +1 upper half-plane, -1 lower
    left_anchor: int | None         # base-line vertex left of the strip
    right_anchor: int | None        # base-line vertex right of the strip
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class FoldCertificate:
    drawing: Drawing
    free_set: tuple[int, ...]       # on-line vertices, left to right
    strips: tuple[Strip, ...]
    parity: str                     # 'odd' or 'even': which layers sit on the line

    @property
    def line(self) -> Line:
        return Line.horizontal(0)

    def mirrored(self) -> "FoldCertificate":
        """Reflection across x = 0: reverses the on-line order while keeping
        crossing-freeness and the strip structure."""
        strips = tuple(Strip(-s.x, s.sign, s.right_anchor, s.left_anchor,
                             s.vertices)
                       for s in reversed(self.strips))
        return FoldCertificate(self.drawing.mirrored_x(),
                               tuple(reversed(self.free_set)),
                               strips, self.parity)


def fold(g: Graph, ld: LayeredDrawing, parity: str = "auto",
         validate: bool = True) -> FoldCertificate:
    """Fold an almost-layered drawing onto the base line y = 0.

    With parity 'auto' the layer class (odd or even) holding at least half
    the vertices goes onto the line, so the free set has size >= ceil(n/2).
    The fold is exact: base-line vertices at consecutive integers, each
    skipped layer on a perpendicular at the midpoint of a unit gap, with
    alternating half-planes (first strip up) and unit spacing outward.
    """
    if parity not in ("auto", "odd", "even"):
        raise InputError(f"parity must be auto/odd/even, not {parity!r}")
    if validate:
        validate_layered(g, ld)
    n = len(ld.layer)
    if n == 0:
        return FoldCertificate(Drawing({}), (), (), "odd")
    segs = ld.segments()
    layers = sorted(segs)
    if layers != list(range(1, len(layers) + 1)):
        raise InputError(f"layers are not consecutive from 1: {layers}")
    if parity == "auto":
        odd = sum(len(segs[k]) for k in layers if k % 2 == 1)
        parity = "odd" if odd >= n - odd else "even"
    on_line = (lambda k: k % 2 == 1) if parity == "odd" else (lambda k: k % 2 == 0)

    # First pass: orientation per segment and the base-line order. The
    # orientation flips on every line-to-perpendicular transition and is
    # preserved on perpendicular-to-line ones; this is exactly what keeps
    # the unfolded quadrants crossing-free.
    orient = 1
    free: list[int] = []
    seg_info: list[tuple[int, bool, list[int]]] = []    # (layer, on_line, ordered)
    for k in layers:
        if k > 1:
            prev_on = seg_info[-1][1]
            if prev_on and not on_line(k):
                orient = -orient
        ordered = segs[k] if orient == 1 else list(reversed(segs[k]))
        seg_info.append((k, on_line(k), ordered))
        if on_line(k):
            free.extend(ordered)

    pos: dict[int, Point] = {}
    for i, v in enumerate(free):
        pos[v] = Point(i, 0)
    strips: list[Strip] = []
    placed_on = 0
    strip_count = 0
    for (k, is_on, ordered) in seg_info:
        if is_on:
            placed_on += len(ordered)
            continue
        strip_count += 1
        sign = 1 if strip_count % 2 == 1 else -1
        x = Fraction(-1, 2) if placed_on == 0 else Fraction(placed_on - 1) + Fraction(1, 2)
        left = free[placed_on - 1] if placed_on > 0 else None
        right = free[placed_on] if placed_on < len(free) else None
        for j, v in enumerate(ordered):
            pos[v] = Point(x, sign * (j + 1))
        strips.append(Strip(x, sign, left, right, tuple(ordered)))

    fc = FoldCertificate(Drawing(pos), tuple(free), tuple(strips), parity)
    if validate:
        bad = crossing_report(g, fc.drawing, limit=1)
        if bad:
            raise VerificationError(f"fold produced a crossing: {bad[0]}")
    return fc


@dataclass(frozen=True)
class ConformalDisplacement:
    """New x targets for every free-set vertex, strictly increasing in the
    left-to-right order of the free set."""

    targets: Mapping[int, Fraction]


def displace_free(fc: FoldCertificate, d: ConformalDisplacement) -> Drawing:
    """Move the free set to its targets and re-slot every perpendicular
    strictly between the new positions of its neighboring base vertices.

    The output is crossing-free for every conformal displacement: all
    crossing predicates in a fold depend only on the left-to-right order of
    the base line and the fixed near-to-far orders on the perpendiculars,
    and both are preserved here. Off-line y coordinates are unchanged.
    """
    S = fc.free_set
    if set(d.targets) != set(S):
        raise InputError("displacement targets must cover exactly the free set")
    prev = None
    for v in S:
        t = Fraction(d.targets[v])
        if prev is not None and not t > prev:
            raise InputError("displacement targets must be strictly increasing "
                             "along the free set")
        prev = t
    pos: dict[int, Point] = {}
    for v in S:
        pos[v] = Point(Fraction(d.targets[v]), 0)
    for s in fc.strips:
        if s.left_anchor is None and s.right_anchor is None:
            x = s.x            # fold of a drawing with no on-line vertices
        elif s.left_anchor is None:
            x = Fraction(d.targets[s.right_anchor]) - Fraction(1, 2)
        elif s.right_anchor is None:
            x = Fraction(d.targets[s.left_anchor]) + Fraction(1, 2)
        else:
            x = (Fraction(d.targets[s.left_anchor])
                 + Fraction(d.targets[s.right_anchor])) / 2
        for v in s.vertices:
            pos[v] = Point(x, fc.drawing[v].y)
    return Drawing(pos)


# ---------------------------------------------------------------------------
# longest monotone subsequence
# ---------------------------------------------------------------------------

def _lis_indices(values: Sequence, decreasing: bool = False) -> list[int]:
    """Indices of a longest strictly increasing (or decreasing) subsequence,
    patience style, O(m log m)."""
    m = len(values)
    if m == 0:
        return []
    if lis_indices_int64 is not None and m >= 64:
        order = sorted(range(m), key=lambda i: values[i])
        rank = [0] * m
        for r, i in enumerate(order):
            rank[i] = r
        import numpy as np
        arr = np.array(rank, dtype=np.int64)
        if decreasing:
            arr = -arr
        return [int(i) for i in lis_indices_int64(arr)]
    tails: list = []          # smallest tail value per pile
    tails_idx: list[int] = []
    prev = [-1] * m
    gt = (lambda a, b: a > b) if not decreasing else (lambda a, b: a < b)
    for i, x in enumerate(values):
        lo, hi = 0, len(tails)
        while lo < hi:
            mid = (lo + hi) // 2
            if gt(x, tails[mid]):
                lo = mid + 1
            else:
                hi = mid
        if lo == len(tails):
            tails.append(x)
            tails_idx.append(i)
        else:
            tails[lo] = x
            tails_idx[lo] = i
        prev[i] = tails_idx[lo - 1] if lo > 0 else -1
    out = []
    j = tails_idx[-1]
    while j >= 0:
        out.append(j)
        j = prev[j]
    out.reverse()
    return out


def longest_monotone(seq: Sequence) -> tuple[list, str]:
    """A longest monotone subsequence of distinct comparables and its
    direction; ties between directions go to 'increasing'.

    The length is at least ceil(sqrt(m)) for m elements: the increasing and
    decreasing records of a sequence of distinct values multiply to at
    least m (Erdos-Szekeres)."""
    if len(set(seq)) != len(seq):
        raise InputError("longest_monotone needs distinct elements")
    inc = _lis_indices(seq, decreasing=False)
    dec = _lis_indices(seq, decreasing=True)
    if len(inc) >= len(dec):
        return [seq[i] for i in inc], "increasing"
    return [seq[i] for i in dec], "decreasing"


def longest_monotone_oracle(seq: Sequence) -> int:
    """Quadratic DP for the longest monotone subsequence length (test oracle)."""
    m = len(seq)
    if m == 0:
        return 0
    best = 1
    for gt in ((lambda a, b: a > b), (lambda a, b: a < b)):
        dp = [1] * m
        for i in range(m):
            for j in range(i):
                if gt(seq[i], seq[j]):
                    dp[i] = max(dp[i], dp[j] + 1)
        best = max(best, max(dp))
    return best


# ---------------------------------------------------------------------------
# untangling collinear drawings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UntangleResult:
    drawing: Drawing                 # crossing-free output
    fixed: tuple[int, ...]           # vertices left exactly at their input spot
    n: int
    free_size: int
    direction: str                   # 'increasing' | 'decreasing' | 'identity'
    certificate: FoldCertificate | None


def untangle_collinear(g: Graph, pi: Mapping[int, Fraction],
                       root: int = 0) -> UntangleResult:
    """Untangle a collinear drawing (x-coordinates on the line y = 0) of a
    connected outerplanar graph, keeping at least ceil(sqrt(n/2)) vertices
    bit-exactly fixed.

    Pipeline: almost-layered drawing -> fold (auto parity, free set >=
    ceil(n/2)) -> longest monotone subsequence of the requested positions
    in fold order (mirroring the fold when it is decreasing) -> conformal
    displacement sending the subsequence to its requested positions.
    The output is re-verified exactly before returning.
    """
    if set(pi) != set(range(g.n)) or g.n == 0:
        raise InputError("pi must assign an x-coordinate to every vertex")
    xs = {v: Fraction(x) for v, x in pi.items()}
    if len(set(xs.values())) != g.n:
        raise InputError("pi must be injective")

    input_drawing = Drawing({v: Point(x, 0) for v, x in xs.items()})

    from .outerplanar import recognize, Rejection
    rec = recognize(g)
    if isinstance(rec, Rejection):
        raise ScopeError(str(rec), evidence=rec)

    if not crossing_report(g, input_drawing, limit=1):
        # Already crossing-free as drawn: fix everything.
        order = sorted(range(g.n), key=lambda v: xs[v])
        return UntangleResult(input_drawing, tuple(order), g.n, g.n,
                              "identity", None)

    ld = almost_layered_draw(g, root=root)
    fc = fold(g, ld, parity="auto")
    S = fc.free_set
    seq = [xs[v] for v in S]
    inc = _lis_indices(seq, decreasing=False)
    dec = _lis_indices(seq, decreasing=True)
    if len(inc) >= len(dec):
        direction, chosen = "increasing", inc
    else:
        direction, chosen = "decreasing", dec
        fc = fc.mirrored()
        k = len(S)
        chosen = [k - 1 - i for i in reversed(chosen)]
        S = fc.free_set
        seq = [xs[v] for v in S]

    targets = _interpolated_targets(seq, chosen)
    rho = displace_free(fc, ConformalDisplacement(
        {S[i]: targets[i] for i in range(len(S))}))
    fixed = tuple(S[i] for i in chosen)
    for v in fixed:
        if rho[v] != Point(xs[v], 0):
            raise VerificationError(f"fixed vertex {v} moved")
    bad = crossing_report(g, rho, limit=1)
    if bad:
        raise VerificationError(f"untangled drawing has a crossing: {bad[0]}")
    return UntangleResult(rho, fixed, g.n, len(S), direction, fc)


def _interpolated_targets(seq: list[Fraction], chosen: list[int]) -> list[Fraction]:
    """Strictly increasing targets for every free-set slot, equal to seq[i]
    at the chosen slots and interpolated elsewhere."""
    k = len(seq)
    targets: list[Fraction | None] = [None] * k
    for i in chosen:
        targets[i] = seq[i]
    first, last = chosen[0], chosen[-1]
    for i in range(first - 1, -1, -1):
        targets[i] = targets[i + 1] - 1
    for i in range(last + 1, k):
        targets[i] = targets[i - 1] + 1
    for a, b in zip(chosen, chosen[1:]):
        gap = b - a
        if gap > 1:
            lo, hi = targets[a], targets[b]
            step = (hi - lo) / gap
            for j in range(1, gap):
                targets[a + j] = lo + j * step
    return targets


# ---------------------------------------------------------------------------
# wheel fixture: an empirical freeness witness for the 10-vertex wheel
# ---------------------------------------------------------------------------

WHEEL_FREE_SET = tuple(range(2, 10))


def wheel_fixture() -> tuple[Graph, Drawing]:
    """The 10-vertex wheel (hub 0, rim 1..9) drawn with rim vertices 2..9 on
    the base line, the hub just above, and rim vertex 1 high above closing
    the rim cycle around the hub's spoke fan."""
    edges = [(0, k) for k in range(1, 10)]
    edges += [(k, k + 1) for k in range(1, 9)] + [(9, 1)]
    g = Graph(10, edges)
    return g, wheel_adjust({v: Fraction(v - 1) for v in WHEEL_FREE_SET})


def wheel_adjust(targets: Mapping[int, Fraction]) -> Drawing:
    """Re-draw the wheel fixture for new strictly increasing positions of
    the base-line rim vertices 2..9 (fixture-specific, not a general wheel
    untangler)."""
    if set(targets) != set(WHEEL_FREE_SET):
        raise InputError("targets must cover rim vertices 2..9")
    ts = [Fraction(targets[v]) for v in WHEEL_FREE_SET]
    if any(not a < b for a, b in zip(ts, ts[1:])):
        raise InputError("targets must be strictly increasing")
    center = (ts[0] + ts[-1]) / 2
    pos = {v: Point(Fraction(targets[v]), 0) for v in WHEEL_FREE_SET}
    pos[0] = Point(center, 1)
    pos[1] = Point(center, 100)
    return Drawing(pos)
