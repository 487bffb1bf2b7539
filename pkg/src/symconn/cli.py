"""Command-line front end: ``python3 -m symconn <subcommand> ...``.

Exit codes for ``check``: 0 connected, 1 disconnected, 2 unknown.  Any
input problem exits with 64; other subcommands exit 0 on success.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .compositions import FamilyPattern, minimizer_family
from .pipeline import FaceFamily, Problem, connectivity_symmetric, validate
from .polycore import InputError, InternalError, UniPoly, as_fraction
from .realroots import ThomEncoding, isolate_roots, refine_interval, sign_at, thom_encodings
from .saoracle import ResourceError, SubdivisionOracle
from .uniongraph import build_graph
from .vandermonde import mv_minimizer

EXIT_INPUT = 64
EXIT_INTERNAL = 70


def _load_problem(path: str, depth: int | None) -> Problem:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    P = Problem.from_json(text)
    if depth is not None:
        P.depth = depth
    return P


def _cmd_check(args) -> int:
    P = _load_problem(args.problem, args.depth)
    verdict = connectivity_symmetric(P)
    print(verdict.dumps())
    return verdict.exit_code


def _cmd_validate(args) -> int:
    P = _load_problem(args.problem, None)
    problems = validate(P)
    print(json.dumps({"valid": not problems, "violations": problems}, indent=2))
    return 0 if not problems else EXIT_INPUT


def _cmd_mv(args) -> int:
    values = list(args.a or [])
    if args.a_list:
        values += [v for v in args.a_list.split(",") if v.strip()]
    if not values:
        raise InputError("give the fiber values, e.g. --a 4,6")
    pt = mv_minimizer([as_fraction(v) for v in values], args.n, args.pattern)
    out = pt.to_json()
    exact = pt.local.rational_value()
    if exact is not None:
        out["local_exact"] = [str(v) for v in exact]
    print(json.dumps(out, indent=2))
    return 0


def _cmd_thom(args) -> int:
    q = UniPoly.parse(args.poly)
    encs = thom_encodings(q)
    roots = isolate_roots(q)
    rows = []
    for enc, iv in zip(encs, roots):
        lo, hi = refine_interval(q, iv, Fraction(1, 10**12))
        rows.append({"encoding": str(enc), "approx": float((lo + hi) / 2)})
    print(json.dumps(rows, indent=2))
    return 0


def _cmd_sign(args) -> int:
    q = UniPoly.parse(args.q)
    if args.encoding.strip().lstrip("-").isdigit():
        encs = thom_encodings(q)
        k = int(args.encoding)
        if not -len(encs) <= k < len(encs):
            raise InputError(f"{q.to_text()} has {len(encs)} real roots; index {k} is out of range")
        zeta = encs[k]
    else:
        zeta = ThomEncoding.parse(args.encoding)
    p = UniPoly.parse(args.p)
    s = sign_at(q, zeta, p)
    print({1: "+1", 0: "0", -1: "-1"}[s])
    return 0


def _cmd_graph(args) -> int:
    P = _load_problem(args.problem, args.depth)
    lams = minimizer_family(P.n, P.d, P.pattern)
    family = FaceFamily(P.polys, lams)
    g = build_graph(family, SubdivisionOracle(P.depth), P.depth)
    doc = g.to_json()
    doc["family"] = [str(l) for l in lams]
    text = json.dumps(doc, indent=2)
    if args.emit_graph in (None, "-"):
        print(text)
    else:
        with open(args.emit_graph, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"graph with {len(g.A)} A, {len(g.B)} B vertices and {len(g.E)} edges written to {args.emit_graph}")
    return 0


def _cmd_family(args) -> int:
    fam = minimizer_family(args.n, args.d, args.pattern)
    print("[" + ", ".join(str(c) for c in fam) + "]")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="symconn", description="Connectivity queries for symmetric semi-algebraic sets.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    patterns = [p.value for p in FamilyPattern]

    c = sub.add_parser("check", help="decide whether x and y are connected in S")
    c.add_argument("problem", help="problem JSON file, or - for stdin")
    c.add_argument("--depth", type=int, default=None, help="override the subdivision depth")
    c.set_defaults(func=_cmd_check)

    v = sub.add_parser("validate", help="report problem violations without solving")
    v.add_argument("problem")
    v.set_defaults(func=_cmd_validate)

    m = sub.add_parser("mv", help="chamber minimizer of p_{d+1} on a fiber")
    m.add_argument("a", nargs="*", help="fiber values p_1..p_d (rationals like 3/2)")
    m.add_argument("--a", dest="a_list", default=None, help="comma-separated fiber values")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--pattern", choices=patterns, default="min")
    m.set_defaults(func=_cmd_mv)

    t = sub.add_parser("thom", help="Thom encodings of the real roots of a polynomial in T")
    t.add_argument("poly")
    t.set_defaults(func=_cmd_thom)

    s = sub.add_parser("sign", help="sign of p at the root of q with a given Thom encoding")
    s.add_argument("q")
    s.add_argument("encoding", help='root index in ascending order (0-based) or an encoding like "(+,+)"')
    s.add_argument("p")
    s.set_defaults(func=_cmd_sign)

    g = sub.add_parser("graph", help="union graph of the face sets of a problem")
    g.add_argument("problem")
    g.add_argument("--emit-graph", nargs="?", const="-", default="-", metavar="PATH")
    g.add_argument("--depth", type=int, default=None)
    g.set_defaults(func=_cmd_graph)

    f = sub.add_parser("family", help="list the minimizer family of compositions")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--d", type=int, required=True)
    f.add_argument("--pattern", choices=patterns, default="front")
    f.set_defaults(func=_cmd_family)
    return ap


def cli_main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
