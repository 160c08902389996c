"""Command line interface.

    pg series GRAPH [--start N] [--format text|json|latex]
    pg invariants GRAPH [--start N]
    pg terms GRAPH [--start N] [--count K]
    pg c2 GRAPH [--start N] [--radius R]
    pg verify GRAPH [--start N] [--samples K]

GRAPH is a path to a JSON graph file (or '-' for stdin)."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .graph import parse_graph, validate_graph
from .pipeline import analyze_graph


def _read_source(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r") as fh:
        return fh.read()


def _common(sub):
    sub.add_argument("graph", help="graph JSON file, or - for stdin")
    sub.add_argument("--start", type=int, default=0,
                     help="start vertex class (default 0)")
    sub.add_argument("--epsilon", type=str, default="1/2",
                     help="lower clamp for the support coefficients, "
                          "a rational in (0,1)")
    sub.add_argument("--max-memory-gb", type=float, default=12.0)
    sub.add_argument("--check-extra", type=int, default=25,
                     help="extra sequence terms verified beyond the "
                          "certified truncation degree")
    sub.add_argument("--triangulation", type=str, default=None,
                     help="JSON file prescribing facet triangulations")


def _load_override(path):
    if path is None:
        return None
    with open(path, "r") as fh:
        raw = json.load(fh)
    out = {}
    for item in raw:
        normal = tuple(Fraction(x) for x in item["normal"])
        simplices = [[tuple(Fraction(x) for x in v) for v in s]
                     for s in item["simplices"]]
        out[normal] = simplices
    return out


def _run_analysis(args, want_quasi=True):
    return analyze_graph(
        _read_source(args.graph),
        start_class=args.start,
        epsilon=Fraction(args.epsilon),
        triangulation_override=_load_override(args.triangulation),
        extra_terms=args.check_extra,
        max_memory_gb=args.max_memory_gb,
        want_quasi=want_quasi,
    )


def cmd_series(args):
    an = _run_analysis(args)
    if args.format == "json":
        out = {
            "series": an.series.as_dict(),
            "quasi_polynomial": an.quasi.as_dict() if an.quasi else None,
            "C1": str(an.report.C1),
            "C2_prime": str(an.report.C2_prime),
            "beta": str(an.report.beta),
        }
        print(json.dumps(out, indent=2))
    elif args.format == "latex":
        print(an.series.latex())
    else:
        print(an.summary())
    return 0


def cmd_invariants(args):
    an = _run_analysis(args, want_quasi=False)
    rep = an.report
    print("C1 = %s" % rep.C1)
    print("C2' = %s" % rep.C2_prime)
    print("graph period = %d" % rep.cpx_global)
    print("beta = %s" % rep.beta)
    for vd in rep.vertex_data:
        print("facet %d simplex %d vertex %s: period %d, beta_v = %s"
              % (vd.facet_index, vd.simplex_index,
                 tuple(str(x) for x in vd.vertex), vd.cpx, vd.beta))
    return 0


def cmd_terms(args):
    from .lattice import naive_growth_terms
    g = parse_graph(_read_source(args.graph))
    rep = validate_graph(g)
    if not rep.ok:
        print("invalid graph: %s" % "; ".join(rep.messages), file=sys.stderr)
        return 1
    terms = naive_growth_terms(g, args.start, args.count)
    print(" ".join(str(t) for t in terms))
    return 0


def cmd_c2(args):
    from .cycles import build_nu_table
    from .geometry import GrowthPolytope
    from .invariants import compute_C1
    from .lattice import compute_C2_exact

    g = parse_graph(_read_source(args.graph))
    nu = build_nu_table(g)
    polytope = GrowthPolytope(nu.points)
    c1 = compute_C1(g, polytope, nu, args.start)
    value, vertex, _ = compute_C2_exact(g, polytope, args.start, args.radius,
                                        c1, args.max_memory_gb)
    print("max distance-minus-gauge over radius %d: %s at %r"
          % (args.radius, value, vertex))
    return 0


def cmd_verify(args):
    from .lattice import growth_ball, translation_check
    an = _run_analysis(args)
    ball = growth_ball(an.graph, an.polytope, an.start_class,
                       min(len(an.terms) - 1, args.radius),
                       an.report.C1, args.max_memory_gb)
    n = translation_check(an.graph, an.polytope, an.triangulations,
                          an.report, ball, an.start_class,
                          n_samples=args.samples)
    print("series cross-check: %d extra coefficients match"
          % an.extra_verified)
    print("translation property: %d samples verified" % n)
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="pg",
        description="exact growth series of periodic graphs (dimension <= 3)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="certified generating function")
    _common(p)
    p.add_argument("--format", choices=("text", "json", "latex"),
                   default="text")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("invariants", help="certificate constants")
    _common(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("terms", help="raw growth terms (no certificates)")
    p.add_argument("graph")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--count", type=int, default=30)
    p.set_defaults(func=cmd_terms)

    p = sub.add_parser("c2", help="exact distance defect over a ball")
    _common(p)
    p.add_argument("--radius", type=int, default=40)
    p.set_defaults(func=cmd_c2)

    p = sub.add_parser("verify", help="run the self-checks on a graph")
    _common(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--radius", type=int, default=60)
    p.set_defaults(func=cmd_verify)

    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, MemoryError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
