"""Command-line surface: construction, Jacobi computation, design checks,
closed-form verification, and the dual-shell scan.

Exit codes: 0 success, 1 usage or input error, 2 mathematical mismatch
(a brute-force/closed-form disagreement or a scan counterexample).
All JSON output is deterministic: fixed key order, sorted terms, and big
integers rendered as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys

from .field import Field
from .grm import (
    COLLINEAR_TRIPLE,
    GENERIC,
    GrmCode,
    TClass,
    class_witness,
    classify_T,
    reachable_classes,
)
from .jacobi import JacobiPolynomial, jacobi_brute_force, jacobi_closed_form
from .designs import (
    design_check_bruteforce,
    design_check_jacobi,
    generalized_design_params,
)
from .conjecture import COUNTEREXAMPLE, conjecture_scan
from .checks import CHECKS, DEFAULT_PAIRS, run_checks
from ._parallel import resolve_workers

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        raise UsageError(message)


class UsageError(Exception):
    def __init__(self, message):
        self.message = message


def parse_points(text: str, m: int) -> tuple[tuple[int, ...], ...]:
    """Parse "(0,0);(1,2)" into point tuples of element indices."""
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ValueError(f"point {chunk!r} is not a parenthesized tuple")
        coords = [c.strip() for c in chunk[1:-1].split(",") if c.strip()]
        if len(coords) != m:
            raise ValueError(f"point {chunk!r} needs {m} coordinates")
        points.append(tuple(int(c) for c in coords))
    if not points:
        raise ValueError("empty point list")
    if len(set(points)) != len(points):
        raise ValueError("points must be distinct")
    return tuple(points)


def parse_bound(text: str) -> int:
    value = int(float(text))
    if value <= 0:
        raise ValueError(f"bound must be positive, got {text}")
    return value


def _poly_json(poly: JacobiPolynomial) -> dict:
    return {"t": poly.t, "n": poly.n, "terms": poly.to_records()}


def _emit(obj, pretty_lines=None, output="json"):
    if output == "pretty" and pretty_lines is not None:
        for line in pretty_lines:
            print(line)
    else:
        print(json.dumps(obj, sort_keys=False))


def _make_code(args) -> GrmCode:
    return GrmCode(Field(args.p, args.k), args.m)


# -- jacobi ---------------------------------------------------------------


def _jacobi_targets(code: GrmCode, args):
    """Resolve --points / --t-size [--rank [--subcase]] into a list of
    (points, tclass) work items."""
    if args.points:
        points = parse_points(args.points, code.m)
        cls = classify_T(code, points) if 2 <= len(points) <= 4 else None
        return [(points, cls)]
    if args.t_size is None:
        raise ValueError("give either --points or --t-size")
    t = args.t_size
    if args.rank is None:
        classes = reachable_classes(code, t)
    else:
        sub = None
        if t == 4 and args.rank == 2:
            if args.subcase is None:
                classes = [
                    TClass(4, 2, COLLINEAR_TRIPLE),
                    TClass(4, 2, GENERIC),
                ]
                classes = [c for c in classes if class_witness(code, c)]
                if not classes:
                    raise ValueError("no rank-2 quadruple class at this (q, m)")
                return [(class_witness(code, c), c) for c in classes]
            sub = args.subcase
        cls = TClass(t, args.rank, sub)
        classes = [cls]
    items = []
    for cls in classes:
        witness = class_witness(code, cls)
        if witness is None:
            raise ValueError(f"class {cls.label()} has no witness at q={code.q}, m={code.m}")
        items.append((witness, cls))
    if not items:
        raise ValueError(f"no size-{t} classes exist at q={code.q}, m={code.m}")
    return items


def cmd_jacobi(args) -> int:
    code = _make_code(args)
    workers = resolve_workers(args.workers)
    items = _jacobi_targets(code, args)
    results = []
    mismatch = False
    for points, cls in items:
        entry: dict = {
            "class": cls.label() if cls else None,
            "points": [list(p) for p in points],
        }
        brute = closed = None
        if args.method in ("brute", "both"):
            brute = jacobi_brute_force(code, points, workers=workers)
            entry["brute"] = _poly_json(brute)
        if args.method in ("closed", "both"):
            if cls is None:
                raise ValueError(
                    "closed form needs |T| in [2, 4]; use --method brute for other sizes"
                )
            closed = jacobi_closed_form(code, cls)
            entry["closed"] = _poly_json(closed)
        if args.method == "both":
            diff = []
            keys = set(brute.terms) | set(closed.terms)
            for key in sorted(keys):
                cb, cc = brute.terms.get(key, 0), closed.terms.get(key, 0)
                if cb != cc:
                    diff.append(
                        {
                            "e_w": key[0], "e_z": key[1], "e_x": key[2], "e_y": key[3],
                            "brute": str(cb), "closed": str(cc),
                        }
                    )
            entry["diff"] = diff
            mismatch = mismatch or bool(diff)
        results.append(entry)
    out = {"q": code.q, "m": code.m, "n": code.n, "method": args.method, "results": results}
    pretty = []
    for entry in results:
        pretty.append(f"T = {entry['points']}  class = {entry['class']}")
        for kind in ("brute", "closed"):
            if kind in entry:
                poly = JacobiPolynomial.from_records(
                    entry[kind]["t"], entry[kind]["n"], entry[kind]["terms"]
                )
                pretty.append(f"  {kind}: {poly.pretty()}")
        if "diff" in entry:
            pretty.append(f"  diff: {'EMPTY' if not entry['diff'] else entry['diff']}")
    _emit(out, pretty, args.output)
    return EXIT_MISMATCH if mismatch else EXIT_OK


# -- design ----------------------------------------------------------------


def cmd_design(args) -> int:
    code = _make_code(args)
    workers = resolve_workers(args.workers)
    reports = {}
    if args.method in ("jacobi", "both"):
        reports["jacobi"] = design_check_jacobi(code, args.l, args.t, workers=workers)
    if args.method in ("brute", "both"):
        reports["bruteforce"] = design_check_bruteforce(
            code, args.l, args.t, workers=workers
        )
    agree = None
    if len(reports) == 2:
        a, b = reports["jacobi"], reports["bruteforce"]
        agree = (
            a.lambda_by_class == b.lambda_by_class
            and a.is_t_design == b.is_t_design
        )
    generalized = None
    if args.t in (3, 4) and args.l == (code.q - 1) * code.q ** (code.m - 1):
        generalized = generalized_design_params(code, args.l, args.t).to_json_dict()
    out = {
        "q": code.q,
        "m": code.m,
        "l": args.l,
        "t": args.t,
        "method": args.method,
        "reports": {k: r.to_json_dict() for k, r in reports.items()},
        "agree": agree,
        "generalized_params": generalized,
    }
    primary = reports.get("jacobi") or reports.get("bruteforce")
    verdict = (
        "trivial"
        if primary.trivial
        else (f"{args.t}-design" if primary.is_t_design else f"not-{args.t}-design")
    )
    if args.output == "csv":
        print("q,m,l,t,class,lambda,verdict")
        rep = primary.to_json_dict()
        for cls in rep["classes"]:
            print(
                f"{code.q},{code.m},{args.l},{args.t},"
                f"{cls['class']},{cls['lambda']},{verdict}"
            )
    else:
        pretty = [
            f"shell l={args.l}, t={args.t}: {verdict}"
            + (" [trivial design excluded]" if primary.trivial else ""),
        ]
        for cls in primary.to_json_dict()["classes"]:
            pretty.append(f"  {cls['class']}: lambda = {cls['lambda']} ({cls['subsets']} subsets)")
        if agree is not None:
            pretty.append(f"  routes agree: {agree}")
        _emit(out, pretty, args.output)
    return EXIT_MISMATCH if agree is False else EXIT_OK


# -- verify -----------------------------------------------------------------


def cmd_verify(args) -> int:
    if (args.p is None) != (args.m is None):
        raise ValueError("--p and --m must be given together")
    pairs = DEFAULT_PAIRS if args.p is None else ((args.p, args.k, args.m),)
    workers = resolve_workers(args.workers)
    results = run_checks(pairs, only=args.only or None, workers=workers)
    failures = sum(1 for r in results if r.status == "FAIL")
    out = {"results": [r.to_json_dict() for r in results], "failures": failures}
    pretty = [
        f"{r.status:4s} {r.name} q={r.q} m={r.m}  {r.detail}" for r in results
    ] + [f"{failures} failure(s)"]
    _emit(out, pretty, args.output)
    return EXIT_MISMATCH if failures else EXIT_OK


# -- scan ---------------------------------------------------------------------


def cmd_scan(args) -> int:
    bound = parse_bound(args.bound)
    workers = resolve_workers(args.workers)
    results = conjecture_scan(bound, workers=workers)
    bad = False
    for res in results:
        print(json.dumps(res.to_json_dict(), sort_keys=False))
        bad = bad or res.verdict == COUNTEREXAMPLE
    return EXIT_MISMATCH if bad else EXIT_OK


# -- enum ----------------------------------------------------------------------


def cmd_enum(args) -> int:
    code = _make_code(args)
    dist = code.weight_distribution()
    out = {
        "q": code.q,
        "m": code.m,
        "n": code.n,
        "code_size": str(code.size),
        "weights": [
            {"weight": w, "count": str(dist[w])} for w in sorted(dist)
        ],
    }
    pretty = [f"RM_{code.q}(1, {code.m}): length {code.n}, {code.size} codewords"]
    pretty += [f"  weight {w}: {dist[w]} codewords" for w in sorted(dist)]
    if args.l is not None:
        shell = code.shell(args.l)
        out["shell"] = {
            "l": args.l,
            "codewords": [{"lam": list(c.lam), "b": c.b} for c in shell],
        }
        pretty.append(f"shell l={args.l}: {len(shell)} codewords")
    _emit(out, pretty, args.output)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="grmjacobi",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_code_args(p):
        p.add_argument("--p", type=int, required=True, help="prime characteristic")
        p.add_argument("--k", type=int, default=1, help="extension degree (q = p^k)")
        p.add_argument("--m", type=int, required=True, help="dimension of the point space")

    def add_common(p):
        p.add_argument(
            "--output", choices=("json", "pretty", "csv"), default="json"
        )
        p.add_argument(
            "--workers", type=int, default=None,
            help="worker processes (default: GRMJACOBI_WORKERS or 1)",
        )

    pj = sub.add_parser("jacobi", help="Jacobi polynomial for a position set or class")
    add_code_args(pj)
    pj.add_argument("--points", help='explicit T, e.g. "(0,0);(0,1)"')
    pj.add_argument("--t-size", type=int, dest="t_size", help="|T| for a class selector")
    pj.add_argument("--rank", type=int, help="affine rank of the class")
    pj.add_argument(
        "--subcase", choices=(COLLINEAR_TRIPLE, GENERIC),
        help="sub-case for |T|=4 rank-2 classes",
    )
    pj.add_argument("--method", choices=("brute", "closed", "both"), default="both")
    add_common(pj)
    pj.set_defaults(fn=cmd_jacobi)

    pd = sub.add_parser("design", help="t-design verdict of a shell")
    add_code_args(pd)
    pd.add_argument("--l", type=int, required=True, help="shell weight")
    pd.add_argument("--t", type=int, required=True, help="design strength")
    pd.add_argument("--method", choices=("jacobi", "brute", "both"), default="both")
    add_common(pd)
    pd.set_defaults(fn=cmd_design)

    pv = sub.add_parser("verify", help="run the closed-form cross-checks")
    pv.add_argument("--p", type=int, help="prime characteristic (default: built-in set)")
    pv.add_argument("--k", type=int, default=1)
    pv.add_argument("--m", type=int)
    pv.add_argument(
        "--only", action="append", metavar="CHECK",
        help=f"restrict to named checks; known: {', '.join(CHECKS)}",
    )
    add_common(pv)
    pv.set_defaults(fn=cmd_verify)

    ps = sub.add_parser("scan", help="dual-shell scan (JSON lines, one per pair)")
    ps.add_argument("--bound", default="1e7", help="scan all q^(2m) < bound")
    ps.add_argument("--workers", type=int, default=None)
    ps.set_defaults(fn=cmd_scan)

    pe = sub.add_parser("enum", help="enumerated weight distribution")
    add_code_args(pe)
    pe.add_argument("--l", type=int, help="also list the codewords of this shell")
    add_common(pe)
    pe.set_defaults(fn=cmd_enum)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
