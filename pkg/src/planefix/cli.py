"""Command-line front end.

Subcommands: gen, draw-outerplanar, fold, untangle, analyze, svg, corpus.
Exit codes: 0 ok, 1 input error, 2 scope rejection (e.g. not outerplanar),
3 internal verification failure. All randomness flows from --seed through
one documented generator; every output file embeds the seed and version.
"""
from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import BudgetError, InputError, PlanefixError, ScopeError, VerificationError
from . import fileio
from .geometry import Drawing, Line, crossing_report, max_collinear
from .graphs import is_triangulation
from .outerplanar import Rejection, almost_layered_draw, recognize
from .randgraphs import (random_collinear_positions, random_outerplanar,
                         rng_from_seed)
from .untangle import ConformalDisplacement, fold, untangle_collinear
from .svg import SvgOptions, render_fold_certificate, render_svg


class _Parser(argparse.ArgumentParser):
    def error(self, message):          # argparse would exit(2); we map usage
        raise InputError(message)      # problems to the input-error code 1


def _meta(args, **extra):
    meta = {"command": args.command, "seed": getattr(args, "seed", 0)}
    meta.update(extra)
    return meta


def _write(path: str, content: str) -> None:
    Path(path).write_text(content)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="planefix", description=__doc__)
    p.add_argument("--version", action="version", version=f"planefix {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        sp.add_argument("--budget", type=int, default=2_000_000,
                        help="node budget for circumference search")
        sp.add_argument("--out", type=str, default=None, help="output path")

    sp = sub.add_parser("gen", help="generate a triangulation family member")
    add_common(sp)
    sp.add_argument("--seed-graph", type=str, required=True,
                    help="embedding file of the seed triangulation")
    sp.add_argument("--k", type=int, required=True, help="family level (>= 1)")
    sp.add_argument("--outer-face", type=int, default=0,
                    help="designated outer face index of the seed")
    sp.add_argument("--lineage", type=str, default=None,
                    help="write 'face i -> copy j' audit lines here")

    sp = sub.add_parser("draw-outerplanar",
                        help="almost-layered drawing of an outerplanar graph")
    add_common(sp)
    sp.add_argument("graph", type=str, help="graph file")
    sp.add_argument("--root", type=int, default=0, help="root vertex (layer 1)")

    sp = sub.add_parser("fold", help="fold a layered drawing onto a line")
    add_common(sp)
    sp.add_argument("graph", type=str, help="graph file")
    sp.add_argument("layered", type=str, help="layered drawing file")
    sp.add_argument("--parity", choices=("odd", "even", "auto"), default="auto")

    sp = sub.add_parser("untangle",
                        help="untangle a collinear drawing of an outerplanar graph")
    add_common(sp)
    sp.add_argument("graph", type=str, help="graph file")
    sp.add_argument("drawing", type=str, help="collinear drawing file (all y = 0)")
    sp.add_argument("--root", type=int, default=0)

    sp = sub.add_parser("analyze", help="cut/collinearity analysis of a drawing")
    add_common(sp)
    sp.add_argument("embedding", type=str, help="embedding file")
    sp.add_argument("drawing", type=str, help="drawing file")
    sp.add_argument("--sample", type=int, default=0,
                    help="probe with this many seeded random lines")
    sp.add_argument("--svg", type=str, default=None,
                    help="write an SVG with the witness line overlay")

    sp = sub.add_parser("svg", help="render a drawing / layered drawing / fold file")
    add_common(sp)
    sp.add_argument("drawing", type=str, help="input file")
    sp.add_argument("--graph", type=str, default=None, help="graph file for edges")
    sp.add_argument("--precision", type=int, default=6)
    sp.add_argument("--labels", action="store_true")

    sp = sub.add_parser("corpus", help="seeded random untangling corpus run")
    add_common(sp)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--sizes", type=str, default="10,20,50",
                    help="comma-separated vertex counts to cycle through")
    return p


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    from .family import SeedTriangulation, generate, projected_counts
    if args.k < 1:
        raise InputError("--k must be >= 1")
    emb = fileio.parse_embedding(Path(args.seed_graph).read_text())
    seed = SeedTriangulation(emb, args.outer_face)
    member = generate(seed, args.k)
    top = member.embedding
    print(f"seed: v = {seed.v}, f = {seed.f}")
    for i, lvl in enumerate(member.levels, start=1):
        closed = seed.f * (seed.f - 1) ** (i - 1)
        print(f"level {i}: v = {lvl.graph.n}, f = {len(lvl.faces)}"
              f" (closed form {closed})")
    if args.out:
        _write(args.out, fileio.write_embedding(top, _meta(args, k=args.k)))
        print(f"wrote {args.out}")
    if args.lineage and member.k >= 2:
        lines = [fileio.header_comment(_meta(args, k=args.k))]
        for step, cmaps in enumerate(member.copy_maps, start=1):
            for fi, phi in enumerate(cmaps):
                mapped = " ".join(f"{s}:{t}" for s, t in sorted(phi.items()))
                lines.append(f"level {step} face {fi} -> copy {mapped}\n")
        _write(args.lineage, "".join(lines))
        print(f"wrote {args.lineage}")
    return 0


def cmd_draw_outerplanar(args) -> int:
    g = fileio.parse_graph(Path(args.graph).read_text())
    ld = almost_layered_draw(g, root=args.root)
    print(f"n = {g.n}, layers = {ld.layer_count()}, root = {args.root}")
    if args.out:
        _write(args.out, fileio.write_layered_drawing(ld, _meta(args, root=args.root)))
        print(f"wrote {args.out}")
    return 0


def cmd_fold(args) -> int:
    g = fileio.parse_graph(Path(args.graph).read_text())
    ld = fileio.parse_layered_drawing(Path(args.layered).read_text())
    fc = fold(g, ld, parity=args.parity)
    n = g.n
    print(f"n = {n}, parity = {fc.parity}, |free| = {len(fc.free_set)}"
          f" (>= ceil(n/2) = {math.ceil(n / 2)})")
    if args.out:
        _write(args.out, fileio.write_fold_certificate(fc, _meta(args, parity=fc.parity)))
        print(f"wrote {args.out}")
    return 0


def cmd_untangle(args) -> int:
    g = fileio.parse_graph(Path(args.graph).read_text())
    d = fileio.parse_drawing(Path(args.drawing).read_text())
    if set(d.positions) != set(range(g.n)):
        raise InputError("drawing must place exactly the graph's vertices")
    bad = [v for v in d.positions if d[v].y != 0]
    if bad:
        raise ScopeError(
            "input drawing is not collinear on y = 0 (general drawings are "
            f"out of scope; only collinear inputs are untangled): vertices {bad[:5]}")
    pi = {v: d[v].x for v in d.positions}
    res = untangle_collinear(g, pi, root=args.root)
    bound = math.ceil(math.sqrt(g.n / 2))
    ok = len(res.fixed) >= bound
    print(f"n = {res.n}")
    print(f"free set size = {res.free_size}")
    print(f"fixed = {len(res.fixed)} (bound ceil(sqrt(n/2)) = {bound})"
          f" [{'PASS' if ok else 'FAIL'}]")
    print(f"direction = {res.direction}")
    if args.out:
        _write(args.out, fileio.write_untangle_result(res, _meta(args, root=args.root)))
        print(f"wrote {args.out}")
    return 0 if ok else 3


def cmd_analyze(args) -> int:
    from .analyze import cut_count, dual_cut_bound_check, max_cut, sample_cut_counts
    emb = fileio.parse_embedding(Path(args.embedding).read_text())
    d = fileio.parse_drawing(Path(args.drawing).read_text())
    bad = crossing_report(emb.graph, d, limit=1)
    if bad:
        raise InputError(f"drawing is not crossing-free: {bad[0]}")
    count, witness = max_cut(emb, d)
    col_count, col_line, col_verts = max_collinear(d)
    lines = [
        f"max_cut = {count}",
        f"max_cut_witness_line = {witness.line.a} {witness.line.b} {witness.line.c}",
        f"max_cut_perturbation = {witness.perturbation}",
        f"max_collinear = {col_count}",
        f"max_collinear_vertices = {' '.join(map(str, col_verts))}",
        f"faces = {len(emb.faces)}",
    ]
    if is_triangulation(emb):
        rec = dual_cut_bound_check(emb, d, witness.line, args.budget)
        lines.append(f"dual_circumference = {rec.dual_circumference.length}"
                     f" (exact = {rec.dual_circumference.exact})")
        lines.append(f"dual_walk_valid = {rec.walk_is_valid}")
        lines.append(f"cut_le_dual_circumference = {rec.bound_ok}")
    if args.sample:
        rng = rng_from_seed(args.seed)
        sampled = sample_cut_counts(emb, d, rng, args.sample)
        lines.append(f"sampled_max_cut = {sampled} (over {args.sample} seeded lines,"
                     f" never exceeds {count}: {sampled <= count})")
    for line in lines:
        print(line)
    if args.svg:
        opt = SvgOptions(overlay_line=witness.line,
                         highlight=tuple(col_verts))
        _write(args.svg, render_svg(d, emb.graph, opt))
        print(f"wrote {args.svg}")
    if args.out:
        _write(args.out, fileio.header_comment(_meta(args)) +
               "".join(x + "\n" for x in lines))
        print(f"wrote {args.out}")
    return 0


def cmd_svg(args) -> int:
    text = Path(args.drawing).read_text()
    g = fileio.parse_graph(Path(args.graph).read_text()) if args.graph else None
    opt = SvgOptions(precision=args.precision, labels=args.labels)
    try:
        fc = fileio.parse_fold_certificate(text)
        content = render_fold_certificate(fc, g, opt)
    except InputError:
        try:
            ld = fileio.parse_layered_drawing(text)
            opt.layer_lines = True
            content = render_svg(ld.drawing, g, opt)
        except InputError:
            d = fileio.parse_drawing(text)
            content = render_svg(d, g, opt)
    out = args.out or (args.drawing + ".svg")
    _write(out, content)
    print(f"wrote {out}")
    return 0


def cmd_corpus(args) -> int:
    rng = rng_from_seed(args.seed)
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if not sizes or args.count < 1:
        raise InputError("corpus needs at least one size and --count >= 1")
    failures = 0
    print(f"{'run':>4} {'n':>5} {'free':>5} {'fixed':>5} {'bound':>5} result")
    for i in range(args.count):
        n = sizes[i % len(sizes)]
        g = random_outerplanar(rng, n)
        pi = random_collinear_positions(rng, n)
        res = untangle_collinear(g, pi)
        bound = math.ceil(math.sqrt(n / 2))
        ok = len(res.fixed) >= bound and not crossing_report(g, res.drawing, limit=1)
        failures += 0 if ok else 1
        print(f"{i:>4} {n:>5} {res.free_size:>5} {len(res.fixed):>5} {bound:>5} "
              f"{'ok' if ok else 'FAIL'}")
    print(f"{args.count} runs, {failures} failures")
    return 0 if failures == 0 else 3


COMMANDS = {
    "gen": cmd_gen,
    "draw-outerplanar": cmd_draw_outerplanar,
    "fold": cmd_fold,
    "untangle": cmd_untangle,
    "analyze": cmd_analyze,
    "svg": cmd_svg,
    "corpus": cmd_corpus,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except ScopeError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        if isinstance(exc.evidence, Rejection):
            print(f"evidence: {exc.evidence}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return 3
    except (InputError, BudgetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
