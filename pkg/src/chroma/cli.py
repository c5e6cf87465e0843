"""Command-line front end: ``chroma gen|color|verify|svg|tighten``.

Exit codes: 0 success or verification passed, 1 verification (or tightness
claim) failed, 2 bad input or any other error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .colorings import EdgeColoring, TupleColoring
from .edge_coloring import (color_bottomless_edges, color_disk_edges, color_halfplane_edges,
                            color_rectangle_edges)
from .errors import ChromaError
from .families import Hypergraph
from .generate import bottomless_witness, convex_points, grid_points, odd_convex_points, random_points
from .io import coloring_from_json, dumps, load_pointset, pointset_to_json, read_json
from .kinds import BOTTOMLESS, HALFPLANE, KINDS, FamilyKind, HalfspaceSpec
from .svg import render_svg
from .tuple_coloring import (color_pairs_boxes, color_pairs_rectangles_optimal,
                             color_tuples_h_regions, lift_proper_two_coloring, lift_tuples,
                             polychromatic_tuples_from_vertex_coloring, ramsey_number,
                             verify_no_local_mapping)
from .verify import (DEFAULT_IMPOSSIBILITY_BUDGET, DEFAULT_SEARCH_BUDGET, budget_from_env,
                     check_tuple_coloring, exhaustive_impossibility, find_bottomless_counterexample,
                     verify_edge_coloring, verify_tuple_coloring)

ALGORITHMS = {
    "thm1": ("disk", "disk Delaunay-edges, conflict graph 4-coloring"),
    "thm2": ("halfplane", "halfplane Delaunay-edges, hull-walk 2-coloring"),
    "thm3": ("bottomless", "bottomless Delaunay-edges, bottom-to-top sweep 2-coloring"),
    "cor-rect": ("axisrect", "rectangle Delaunay-edges, Hasse diagram coloring"),
    "thm8": ("axisrect", "rectangle pairs, empty-box 2-coloring"),
    "thm9": ("boxd", "box pairs, longest monotone path coloring"),
    "thm6": ("boxd", "tuple lift by depth order"),
    "prop1": (None, "proper 2-coloring lift of tuples"),
    "prop2": (None, "subset-palette lift of a vertex coloring"),
}


class UsageError(ChromaError):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _family(args, default: str | None = None) -> FamilyKind:
    kind = args.family or default
    if kind is None:
        raise UsageError("--family is required")
    halfspaces = json.loads(args.halfspaces) if getattr(args, "halfspaces", None) else ()
    return FamilyKind(kind, tuple(HalfspaceSpec(tuple(h)) for h in halfspaces))


def _budget(args, default: int) -> int:
    return args.budget if getattr(args, "budget", None) is not None else budget_from_env(default)


# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.kind == "random":
        fam = _family(args, "axisrect" if args.dim == 2 else "boxd")
        S = random_points(args.n, args.seed, args.dim, fam)
    elif args.kind == "grid":
        S = grid_points(args.n)
    elif args.kind == "convex":
        S = convex_points(args.n)
    elif args.kind == "counterexample":
        if args.variant == "halfplane-odd":
            S = odd_convex_points(args.n)
        elif args.variant == "bottomless":
            S = bottomless_witness()
        else:
            raise UsageError("counterexample variant is halfplane-odd or bottomless")
    else:
        raise UsageError(f"unknown generator {args.kind!r}")
    data = pointset_to_json(S)
    data["provenance"] = {"generator": args.kind, "variant": args.variant, "n": len(S),
                          "seed": args.seed if args.kind == "random" else None}
    _emit(dumps(data), args.out)
    return 0


def _color(args):
    alg = args.alg
    if alg not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {alg!r}")
    if alg == "prop1":
        base = coloring_from_json(read_json(args.base))
        return lift_proper_two_coloring(base, args.t)
    if alg == "prop2":
        base = coloring_from_json(read_json(args.base))
        if not isinstance(base, TupleColoring) or base.t != 1:
            raise UsageError("prop2 needs a vertex coloring (a tuple coloring with t = 1) as --base")
        colors = [base[(v,)] for v in range(base.n)]
        return polychromatic_tuples_from_vertex_coloring(colors, args.t, base.k)

    S = load_pointset(args.input)
    fam = _family(args, ALGORITHMS[alg][0])
    if alg == "thm1":
        return color_disk_edges(S, fam)
    if alg == "thm2":
        return color_halfplane_edges(S)
    if alg == "thm3":
        return color_bottomless_edges(S)
    if alg == "cor-rect":
        return color_rectangle_edges(S)
    if alg == "thm8":
        return color_pairs_rectangles_optimal(S)
    if alg in ("thm9", "thm6"):
        if fam.kind == "hregion":
            t = args.t if alg == "thm6" else 2
            return color_tuples_h_regions(S, fam.halfspaces, t, args.k)
        pairs = color_pairs_boxes(S, args.k)
        if alg == "thm9":
            return pairs
        axis = HalfspaceSpec(tuple(1 if a == 0 else 0 for a in range(S.dim)))
        return lift_tuples(pairs, S, axis, args.t)
    raise UsageError(f"unknown algorithm {alg!r}")


def cmd_color(args) -> int:
    coloring = _color(args)
    data = coloring.to_json()
    data["provenance"] = {"algorithm": args.alg, "construction": ALGORITHMS[args.alg][1],
                          "family": args.family or ALGORITHMS[args.alg][0],
                          "k": args.k, "t": args.t, "input": _input_provenance(args)}
    _emit(dumps(data), args.out)
    return 0


def _input_provenance(args):
    src = args.base if args.alg in ("prop1", "prop2") else args.input
    if src is None:
        return None
    data = read_json(src)
    return data.get("provenance")


def cmd_verify(args) -> int:
    coloring = coloring_from_json(read_json(args.coloring))
    if args.hypergraph:
        H = Hypergraph.from_json(read_json(args.hypergraph))
        if isinstance(coloring, EdgeColoring):
            raise UsageError("abstract hypergraphs are checked against tuple colorings")
        report = check_tuple_coloring(H, coloring, args.threshold, args.mode or "polychromatic")
    else:
        S = load_pointset(args.input)
        fam = _family(args)
        if isinstance(coloring, EdgeColoring):
            report = verify_edge_coloring(S, fam, coloring, args.threshold, args.threshold_kind)
        else:
            report = verify_tuple_coloring(S, fam, coloring, args.threshold, args.mode or "polychromatic")
    _emit(dumps(report.to_json()), args.out)
    return 0 if report.passed else 1


def cmd_svg(args) -> int:
    S = load_pointset(args.input)
    coloring = coloring_from_json(read_json(args.coloring)) if args.coloring else None
    _emit(render_svg(S, coloring), args.out)
    return 0


def cmd_tighten(args) -> int:
    if args.which == "halfplane-odd":
        S = odd_convex_points(args.n)
        result = exhaustive_impossibility(S, HALFPLANE, 2, 2, "edges", "edges",
                                          _budget(args, DEFAULT_IMPOSSIBILITY_BUDGET))
        summary = {"which": args.which, "n": args.n, "impossibleAtThreshold2": result}
        line = f"impossible at threshold 2: {str(result).lower()}"
    elif args.which == "bottomless":
        W = find_bottomless_counterexample(_budget(args, DEFAULT_SEARCH_BUDGET))
        result = exhaustive_impossibility(W, BOTTOMLESS, 3, 2, "edges", "points")
        summary = {"which": args.which, "witness": pointset_to_json(W), "impossibleAtThreshold3": result}
        line = (f"witness {[list(map(int, p)) for p in W.points]}\n"
                f"impossible at threshold 3: {str(result).lower()}")
    elif args.which == "nocol":
        valid = verify_no_local_mapping(args.m_max)
        result = valid == 0
        summary = {"which": args.which, "valid": valid, "candidates": 3 ** 10, "mMax": args.m_max}
        line = f"{valid} / {3 ** 10} mappings valid"
    elif args.which == "ramsey":
        R = ramsey_number(args.t, args.k, args.t_prime, _budget(args, DEFAULT_IMPOSSIBILITY_BUDGET))
        result = R is not None
        summary = {"which": args.which, "t": args.t, "k": args.k, "tPrime": args.t_prime, "R": R}
        line = f"R = {R if R is not None else 'unknown (budget exhausted)'}"
    else:
        raise UsageError(f"unknown tightness check {args.which!r}")
    print(line)
    if args.out:
        Path(args.out).write_text(dumps(summary))
    return 0 if result else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chroma", description="Delaunay-edge and tuple colorings of point sets.")
    p.add_argument("--version", action="version", version=f"chroma {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *, family=True):
        if family:
            sp.add_argument("--family", choices=KINDS)
            sp.add_argument("--halfspaces", help="JSON list of halfspace normals for --family hregion")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--budget", type=int)

    g = sub.add_parser("gen", help="generate a point set")
    g.add_argument("kind", choices=("random", "grid", "convex", "counterexample"))
    g.add_argument("variant", nargs="?", choices=("halfplane-odd", "bottomless"))
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--dim", type=int, default=2)
    common(g)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("color", help="run a coloring algorithm")
    c.add_argument("--in", dest="input")
    c.add_argument("--alg", required=True, choices=sorted(ALGORITHMS))
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--t", type=int, default=2)
    c.add_argument("--base", help="base coloring file for prop1 / prop2")
    c.add_argument("--seed", type=int)
    common(c)
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="check a coloring against the canonical regions")
    v.add_argument("--in", dest="input")
    v.add_argument("--hypergraph", help="abstract hypergraph file instead of a point set")
    v.add_argument("--coloring", required=True)
    v.add_argument("--threshold", type=int, required=True)
    v.add_argument("--threshold-kind", choices=("points", "edges"), default="points")
    v.add_argument("--mode", choices=("proper", "polychromatic"))
    v.add_argument("--seed", type=int)
    common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("svg", help="draw a point set and its colored edges")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--coloring")
    common(s, family=False)
    s.set_defaults(func=cmd_svg)

    t = sub.add_parser("tighten", help="run a tightness or impossibility search")
    t.add_argument("which", choices=("halfplane-odd", "bottomless", "nocol", "ramsey"))
    t.add_argument("--n", type=int, default=3)
    t.add_argument("--m-max", type=int, default=8)
    t.add_argument("--t", type=int, default=2)
    t.add_argument("--k", type=int, default=2)
    t.add_argument("--t-prime", type=int, default=3)
    common(t, family=False)
    t.set_defaults(func=cmd_tighten)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (ChromaError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"chroma: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
