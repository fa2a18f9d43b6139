"""Text formats for graphs, embeddings, drawings and pipeline artifacts.

All formats are line-based; `#` starts a comment. Rational coordinates are
written as `num/den` (plain integers mean denominator 1). Writers accept a
metadata mapping that is embedded as header comments, so every produced
file records the tool version and RNG seed that made it.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, TextIO

from . import __version__
from .errors import InputError
from .geometry import Drawing, Point
from .graphs import Graph, RotationEmbedding


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"line {lineno}: bad rational {tok!r}: {exc}") from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def header_comment(meta: Mapping[str, object] | None = None) -> str:
    parts = [f"# planefix v{__version__}"]
    for k, v in (meta or {}).items():
        parts.append(f"# {k} = {v}")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# graphs and embeddings
# ---------------------------------------------------------------------------

def write_graph(g: Graph, meta: Mapping[str, object] | None = None) -> str:
    out = [header_comment(meta), f"{g.n} {g.m}\n"]
    for (u, v) in sorted(g.edges):
        out.append(f"{u} {v}\n")
    return "".join(out)


def parse_graph(text: str) -> Graph:
    g, rest = _parse_graph_part(text)
    for lineno, line in rest:
        raise InputError(f"line {lineno}: unexpected content {line!r} in graph file")
    return g


def _parse_graph_part(text: str):
    lines = list(_content_lines(text))
    if not lines:
        raise InputError("empty graph file")
    lineno, first = lines[0]
    toks = first.split()
    if len(toks) != 2:
        raise InputError(f"line {lineno}: expected 'n m', got {first!r}")
    try:
        n, m = int(toks[0]), int(toks[1])
    except ValueError:
        raise InputError(f"line {lineno}: expected integers 'n m'") from None
    edges = []
    idx = 1
    while idx < len(lines) and len(edges) < m:
        lineno, line = lines[idx]
        toks = line.split()
        if len(toks) != 2 or not all(t.lstrip("-").isdigit() for t in toks):
            raise InputError(f"line {lineno}: expected edge 'u v', got {line!r}")
        u, v = int(toks[0]), int(toks[1])
        try:
            edges.append((u, v))
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
        idx += 1
    if len(edges) < m:
        raise InputError(f"graph file ended early: expected {m} edges, got {len(edges)}")
    try:
        g = Graph(n, edges)
    except InputError as exc:
        raise InputError(f"bad graph: {exc}") from None
    if g.m != m:
        raise InputError(f"graph file declares {m} edges but {g.m} are distinct")
    return g, lines[idx:]


def write_embedding(e: RotationEmbedding, meta: Mapping[str, object] | None = None) -> str:
    out = [write_graph(e.graph, meta)]
    for v in range(e.graph.n):
        if e.rotation[v]:
            out.append(f"rot {v}: {' '.join(map(str, e.rotation[v]))}\n")
    return "".join(out)


def parse_embedding(text: str) -> RotationEmbedding:
    g, rest = _parse_graph_part(text)
    rotation: dict[int, list[int]] = {}
    for lineno, line in rest:
        if not line.startswith("rot "):
            raise InputError(f"line {lineno}: expected 'rot v: ...', got {line!r}")
        head, _, tail = line.partition(":")
        try:
            v = int(head.split()[1])
            neighbors = [int(t) for t in tail.split()]
        except (IndexError, ValueError):
            raise InputError(f"line {lineno}: malformed rotation line {line!r}") from None
        if v in rotation:
            raise InputError(f"line {lineno}: duplicate rotation for vertex {v}")
        rotation[v] = neighbors
    try:
        return RotationEmbedding(g, rotation)
    except InputError as exc:
        raise InputError(f"bad embedding: {exc}") from None


# ---------------------------------------------------------------------------
# drawings
# ---------------------------------------------------------------------------

def write_drawing(d: Drawing, meta: Mapping[str, object] | None = None,
                  extra_lines: Iterable[str] = ()) -> str:
    out = [header_comment(meta)]
    for v in d.vertices():
        p = d[v]
        out.append(f"{v} {format_rational(p.x)} {format_rational(p.y)}\n")
    for line in extra_lines:
        out.append(line if line.endswith("\n") else line + "\n")
    return "".join(out)


def parse_drawing(text: str) -> Drawing:
    d, rest = _parse_drawing_part(text)
    for lineno, line in rest:
        raise InputError(f"line {lineno}: unexpected content {line!r} in drawing file")
    return d


def _parse_drawing_part(text: str):
    positions: dict[int, Point] = {}
    rest = []
    for lineno, line in _content_lines(text):
        toks = line.split()
        if toks and toks[0].lstrip("-").isdigit() and len(toks) == 3:
            v = int(toks[0])
            if v in positions:
                raise InputError(f"line {lineno}: duplicate position for vertex {v}")
            if v < 0:
                raise InputError(f"line {lineno}: negative vertex id {v}")
            x = parse_rational(toks[1], lineno)
            y = parse_rational(toks[2], lineno)
            positions[v] = Point(x, y)
        else:
            rest.append((lineno, line))
    try:
        return Drawing(positions), rest
    except InputError as exc:
        raise InputError(f"bad drawing: {exc}") from None


def write_layered_drawing(ld, meta: Mapping[str, object] | None = None) -> str:
    extra = [f"layer {v} {ld.layer[v]}" for v in sorted(ld.layer)]
    return write_drawing(ld.drawing, meta, extra)


def parse_layered_drawing(text: str):
    from .outerplanar import LayeredDrawing
    d, rest = _parse_drawing_part(text)
    layer: dict[int, int] = {}
    for lineno, line in rest:
        toks = line.split()
        if len(toks) != 3 or toks[0] != "layer":
            raise InputError(f"line {lineno}: expected 'layer v k', got {line!r}")
        try:
            v, k = int(toks[1]), int(toks[2])
        except ValueError:
            raise InputError(f"line {lineno}: malformed layer line") from None
        layer[v] = k
    if set(layer) != set(d.positions):
        raise InputError("layer lines do not cover exactly the drawn vertices")
    return LayeredDrawing(d, layer)


# ---------------------------------------------------------------------------
# fold certificates and untangle results
# ---------------------------------------------------------------------------

def write_fold_certificate(fc, meta: Mapping[str, object] | None = None) -> str:
    extra = [f"parity {fc.parity}"]
    extra.append("free " + " ".join(map(str, fc.free_set)))
    for s in fc.strips:
        left = s.left_anchor if s.left_anchor is not None else "-"
        right = s.right_anchor if s.right_anchor is not None else "-"
        verts = " ".join(map(str, s.vertices))
        extra.append(
            f"strip x={format_rational(s.x)} sign={s.sign:+d} "
            f"left={left} right={right} order={verts}")
    return write_drawing(fc.drawing, meta, extra)


def parse_fold_certificate(text: str):
    from .untangle import FoldCertificate, Strip
    d, rest = _parse_drawing_part(text)
    parity = None
    free: list[int] | None = None
    strips = []
    for lineno, line in rest:
        toks = line.split()
        if toks[0] == "parity" and len(toks) == 2:
            parity = toks[1]
        elif toks[0] == "free":
            free = [int(t) for t in toks[1:]]
        elif toks[0] == "strip":
            fields = dict(t.split("=", 1) for t in toks[1:] if "=" in t)
            order_idx = line.index("order=")
            verts = tuple(int(t) for t in line[order_idx + len("order="):].split())
            strips.append(Strip(
                x=parse_rational(fields["x"], lineno),
                sign=int(fields["sign"]),
                left_anchor=None if fields["left"] == "-" else int(fields["left"]),
                right_anchor=None if fields["right"] == "-" else int(fields["right"]),
                vertices=verts,
            ))
        else:
            raise InputError(f"line {lineno}: unexpected line {line!r} in certificate")
    if parity not in ("odd", "even"):
        raise InputError("certificate lacks a parity line")
    if free is None:
        raise InputError("certificate lacks a free line")
    return FoldCertificate(drawing=d, free_set=tuple(free),
                           strips=tuple(strips), parity=parity)


def write_untangle_result(res, meta: Mapping[str, object] | None = None) -> str:
    extra = [f"fixed {v}" for v in res.fixed]
    extra.append(f"summary n={res.n} free={res.free_size} fixed={len(res.fixed)} "
                 f"direction={res.direction}")
    return write_drawing(res.drawing, meta, extra)
