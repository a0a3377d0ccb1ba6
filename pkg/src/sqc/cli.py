"""Command-line front end: ``sqc <subcommand> [input] [options]``.

Every command that reads a complex takes a path (``-`` for standard input)
or ``--gen SPEC`` instead. Exit status: 0 when the command ran and any
requested expectation held, 1 when a check failed, 2 on usage, input or
parse errors. ``--machine`` replaces the human report with ``key<TAB>value``
lines. ``SQC_SEED`` sets the default seed.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import collapse as col
from .core import ParseError, SquareComplex, ball, euler_characteristic, parse_complex, serialize_complex, validate
from .curvature import check_cat0, curvature_report, format_pi, is_median, is_npc
from .generators import GENERATORS, generate

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- helpers ------------------------------------------------------------------


def _default_seed() -> int:
    raw = os.environ.get("SQC_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"SQC_SEED must be an integer, got {raw!r}") from None


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(args) -> SquareComplex:
    if args.gen is not None and args.input is not None:
        raise UsageError("give either an input file or --gen, not both")
    if args.gen is not None:
        try:
            return generate(args.gen)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.input is None:
        raise UsageError("no input: give a file, '-' for stdin, or --gen SPEC")
    try:
        return parse_complex(_read_text(args.input))
    except ParseError as exc:
        raise UsageError(f"{args.input}: {exc}") from None
    except ValueError as exc:
        raise UsageError(f"{args.input}: {exc}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _emit(pairs) -> None:
    for key, value in pairs:
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, float):
            value = f"{value:.12g}"
        print(f"{key}\t{value}")


def _emit_rows(rows) -> None:
    """Machine block for (name, measured, bound, pass) rows."""
    pairs = []
    for name, measured, bound, ok in rows:
        pairs.append((name, measured))
        if bound != "":
            pairs.append((f"{name}.bound", bound))
            pairs.append((f"{name}.pass", ok))
    _emit(pairs)


def _point(text: str):
    from .geometry.points import SurfacePoint

    try:
        return SurfacePoint.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _id_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ids, got {text!r}") from None


def _check_vertex(K: SquareComplex, v: int) -> None:
    if v not in K.vertex_edges:
        raise UsageError(f"no vertex {v} in the complex")


# -- commands -------------------------------------------------------------------


def cmd_validate(args) -> int:
    K = _load(args)
    rep = validate(K)
    if args.machine:
        _emit([("ok", rep.ok), ("violations", len(rep.violations))])
        _emit((f"violation.{i}", f"{v.rule}: {v.message}") for i, v in enumerate(rep.violations))
    elif rep.ok:
        V, E, S = K.counts
        print(f"ok: {V} vertices, {E} edges, {S} squares")
    else:
        for v in rep.violations:
            print(f"{v.rule}: {v.message}")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_check(args) -> int:
    K = _load(args)
    if args.property == "npc":
        ok, w = is_npc(K)
        verdict = "NPC" if ok else "NotNPC"
        detail = "" if ok else f"vertex {w} has link girth < 4"
    elif args.property == "median":
        try:
            ok, w = is_median(K)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        verdict = "Median" if ok else "NotMedian"
        detail = "" if ok else f"vertices {w[:3]} have {w[3]} medians"
    else:
        v = check_cat0(K)
        verdict, w = v.kind, v.witness
        detail = "" if w is None else f"witness {w}"
    met = args.expect is None or args.expect.lower() == verdict.lower()
    if args.machine:
        pairs = [("verdict", verdict), ("witness", "" if w is None else w)]
        if args.expect is not None:
            pairs.append(("expected", args.expect))
        _emit(pairs + [("pass", met)])
    else:
        print(verdict if not detail else f"{verdict}: {detail}")
        if not met:
            print(f"expected {args.expect}", file=sys.stderr)
    return EXIT_OK if met else EXIT_FAIL


def cmd_curvature(args) -> int:
    K = _load(args)
    rep = curvature_report(K)
    if args.machine:
        _emit([("npc", rep.npc), ("witness", "" if rep.witness is None else rep.witness)])
        for r in rep.vertices:
            omega = "" if r.omega_pi is None else format_pi(r.omega_pi)
            _emit([(f"vertex.{r.vertex}", f"{r.classification} {r.corners} {omega}".rstrip())])
    else:
        print(rep.table())
        print("nonpositively curved" if rep.npc else f"not nonpositively curved at vertex {rep.witness}")
    return EXIT_OK


def _seed(args) -> int:
    return args.seed if args.seed is not None else _default_seed()


def cmd_collapse(args) -> int:
    K = _load(args)
    res = col.collapse_all(K, args.strategy, _seed(args), mixed=args.mixed)
    seq, final = res
    if args.output:
        _write(args.output, col.format_sequence(seq))
    V, E, S = final.counts
    if res.collapsed:
        msg = f"collapsed to vertex {final.vertices[0]} in {len(seq)} steps"
    else:
        msg = f"stalled, {S} squares remain ({V} vertices, {E} edges) after {len(seq)} steps"
    if args.machine:
        _emit([
            ("collapsed", res.collapsed), ("steps", len(seq)),
            ("vertices", V), ("edges", E), ("squares", S),
            ("euler", euler_characteristic(final)), ("final", final.fingerprint),
        ])
    else:
        print(msg)
        if args.print_steps:
            sys.stdout.write(col.format_sequence(seq))
    return EXIT_OK


def cmd_spine(args) -> int:
    K = _load(args)
    L = col.spine(K, args.strategy, _seed(args))
    _write(args.output, serialize_complex(L))
    return EXIT_OK


def cmd_verify(args) -> int:
    K = _load(args)
    try:
        seq = col.parse_sequence(_read_text(args.sequence))
    except ValueError as exc:
        raise UsageError(f"{args.sequence}: {exc}") from None
    ok = col.verify_sequence(K, seq)
    if args.machine:
        _emit([("valid", ok), ("steps", len(seq))])
    else:
        print(f"valid sequence of {len(seq)} steps" if ok else "invalid sequence")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ball(args) -> int:
    K = _load(args)
    _check_vertex(K, args.vertex)
    if args.radius < 0:
        raise UsageError("radius must be nonnegative")
    _write(args.output, serialize_complex(ball(K, args.vertex, args.radius)))
    return EXIT_OK


def cmd_filtration(args) -> int:
    K = _load(args)
    _check_vertex(K, args.vertex)
    F = col.filtration(K, args.vertex, args.strategy, _seed(args))
    ok = F.all_collapsed and F.is_monotone()
    if args.machine:
        _emit([("balls", len(F.steps)), ("monotone", F.is_monotone()), ("all_collapsed", F.all_collapsed)])
        for st in F.steps:
            _emit([(f"ball.{st.radius}", "%d %d %d %s" % (*st.ball.counts, "collapsed" if st.collapsed else "stalled"))])
    else:
        print(f"{'n':>3}  {'V':>4}  {'E':>4}  {'S':>4}  result")
        for st in F.steps:
            V, E, S = st.ball.counts
            print(f"{st.radius:>3}  {V:>4}  {E:>4}  {S:>4}  {'collapsed' if st.collapsed else 'stalled'}")
        print(f"{len(F.steps)} balls, monotone: {F.is_monotone()}, all collapse: {F.all_collapsed}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_geodesic(args) -> int:
    from .geometry import build_mesh, mesh_distance, unfold_gallery

    K = _load(args)
    try:
        M = build_mesh(K, args.k, args.remove_squares, args.remove_edges)
        length, path = mesh_distance(M, args.P, args.Q)
        unf = unfold_gallery(K, args.gallery, args.P, args.Q) if args.gallery else None
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    if args.machine:
        pairs = [("mesh_length", length), ("path_nodes", len(path)), ("k", args.k)]
        if unf is not None:
            pairs += [("gallery_inside", unf.inside), ("gallery_length", unf.length)]
        _emit(pairs)
    else:
        print(f"mesh distance {length:.6f} (k = {args.k}, {len(path)} nodes on the path)")
        if unf is not None:
            print(f"gallery {','.join(map(str, args.gallery))}: {unf}")
    return EXIT_OK


def cmd_sample(args) -> int:
    from .geometry import sample_cat0

    K = _load(args)
    try:
        rep = sample_cat0(
            K, args.remove_squares, args.remove_edges, args.triangles, args.k, args.tolerance, _seed(args)
        )
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    if args.machine:
        _emit_rows(rep.rows())
    else:
        print(
            f"{rep.n_checked} triangles checked, {rep.n_degenerate} degenerate skipped, "
            f"{len(rep.violations)} violations (k = {rep.k}, tolerance {rep.tolerance:g})"
        )
        for w in rep.violations[: args.show]:
            print(f"  {w}")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_collapsed_geodesic(args) -> int:
    from .geometry import check_collapsed_geodesic

    K = _load(args)
    try:
        rep = check_collapsed_geodesic(K, args.square, args.edge, args.P, args.Q, args.k, args.tolerance)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    if args.machine:
        _emit_rows(rep.rows())
        _emit((f"label.{k}", v) for k, v in rep.labels.items())
    else:
        if rep.case == "none":
            print("no detour needed: the straight route avoids the collapsed square")
            print(f"  d in K = {rep.d_full:.6f}, d after collapse = {rep.d_collapsed:.6f}")
        else:
            print(f"case {rep.case} {rep.labels}, crossed edges {rep.crossed_edges}")
            print(f"  d after collapse   {rep.d_collapsed:.6f}")
            if rep.via_a is not None:
                print(f"  via a              {rep.via_a:.6f}  {'match' if rep.matches_a else 'differs'}")
                print(f"  via a and h        {rep.via_ah:.6f}  {'match' if rep.matches_ah else 'differs'}")
        print("ok" if rep.ok else "check failed")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_gen(args) -> int:
    try:
        K = generate(args.spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.output, serialize_complex(K))
    return EXIT_OK


def cmd_render(args) -> int:
    from .render import NotPlanarGridError, link_to_dot, to_dot, to_svg

    K = _load(args)
    if args.format == "svg":
        try:
            text = to_svg(K)
        except NotPlanarGridError as exc:
            raise UsageError(f"cannot draw as a planar grid: {exc}") from None
    elif args.vertex is not None:
        _check_vertex(K, args.vertex)
        text = link_to_dot(K, args.vertex)
    else:
        text = to_dot(K)
    _write(args.output, text)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sqc",
        description="Square 2-complexes: validation, curvature, CAT(0) checks, collapses and geodesics.",
    )
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def source(sp):
        sp.add_argument("input", nargs="?", help="complex file, or '-' for standard input")
        sp.add_argument("--gen", metavar="SPEC", help=f"generate the input instead ({', '.join(GENERATORS)})")
        sp.add_argument("--machine", action="store_true", help="print key<TAB>value lines")

    engine = argparse.ArgumentParser(add_help=False)
    engine.add_argument("--strategy", choices=col.STRATEGIES, default="first")
    engine.add_argument("--seed", type=int, default=None, help="default: $SQC_SEED or 0")

    mesh = argparse.ArgumentParser(add_help=False)
    mesh.add_argument("-k", "--k", type=int, default=32, help="lattice steps per side (default 32)")

    def add(name, fn, help_, parents=(), first=None):
        sp = sub.add_parser(name, parents=list(parents), help=help_, description=help_)
        if first is not None:
            first(sp)
        source(sp)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check the cubical-complex rules")

    sp = add(
        "check", cmd_check, "decide a curvature property",
        first=lambda sp: sp.add_argument("property", choices=("npc", "cat0", "median")),
    )
    sp.add_argument("--expect", metavar="VERDICT", help="exit 1 unless the verdict matches (e.g. CAT0, NPC)")

    add("curvature", cmd_curvature, "per-vertex corner counts and curvature")

    sp = add("collapse", cmd_collapse, "collapse as far as possible", (engine,))
    sp.add_argument("-o", "--output", help="write the collapse sequence here")
    sp.add_argument("--mixed", action="store_true", help="interleave 1->0 steps with 2->1 steps")
    sp.add_argument("--print-steps", action="store_true", help="also print the sequence")

    sp = add("spine", cmd_spine, "exhaust 2->1 collapses and print the result", (engine,))
    sp.add_argument("-o", "--output")

    sp = add("verify", cmd_verify, "replay a collapse sequence file")
    sp.add_argument("-s", "--sequence", required=True, help="sequence file ('-' for stdin)")

    sp = add("ball", cmd_ball, "full subcomplex within edge distance n of a vertex")
    sp.add_argument("--vertex", "-v", type=int, required=True)
    sp.add_argument("--radius", "-n", type=int, required=True)
    sp.add_argument("-o", "--output")

    sp = add("filtration", cmd_filtration, "collapse every ball around a vertex", (engine,))
    sp.add_argument("--vertex", "-v", type=int, required=True)

    sp = add("geodesic", cmd_geodesic, "mesh distance between two points", (mesh,))
    sp.add_argument("--from", dest="P", type=_point, required=True, metavar="POINT")
    sp.add_argument("--to", dest="Q", type=_point, required=True, metavar="POINT")
    sp.add_argument("--gallery", type=_id_list, help="also unfold this chain of square ids")
    sp.add_argument("--remove-squares", type=_id_list, default=[], metavar="IDS")
    sp.add_argument("--remove-edges", type=_id_list, default=[], metavar="IDS")

    sp = add("cat0-sample", cmd_sample, "sample triangles and test the CAT(0) inequality", (mesh,))
    sp.add_argument("--triangles", type=int, default=500)
    sp.add_argument("--tolerance", type=float, default=0.05)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--remove-squares", type=_id_list, default=[], metavar="IDS")
    sp.add_argument("--remove-edges", type=_id_list, default=[], metavar="IDS")
    sp.add_argument("--show", type=int, default=5, help="violations to print (default 5)")

    sp = add("collapsed-geodesic", cmd_collapsed_geodesic, "geodesics after collapsing a square", (mesh,))
    sp.add_argument("--square", type=int, required=True)
    sp.add_argument("--edge", type=int, required=True, help="free side of the square")
    sp.add_argument("--from", dest="P", type=_point, required=True, metavar="POINT")
    sp.add_argument("--to", dest="Q", type=_point, required=True, metavar="POINT")
    sp.add_argument("--tolerance", type=float, default=0.05)

    sp = sub.add_parser("gen", help="print a generated complex", description="print a generated complex")
    sp.add_argument("spec", nargs="+", help=f"one of: {', '.join(GENERATORS)} followed by integers")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = add("render", cmd_render, "DOT for the 1-skeleton or a link, SVG for planar grids")
    sp.add_argument("--format", choices=("dot", "svg"), default="dot")
    sp.add_argument("--vertex", "-v", type=int, help="draw the link of this vertex (DOT only)")
    sp.add_argument("-o", "--output")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"sqc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
