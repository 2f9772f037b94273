"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 scale guard violation,
3 disagreement between routes or a failed verification check.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import closedform, fock, graphs, qubit, verify
from .exactmath import ScaleError
from .poly3 import Polynomial3
from .ratios import RegionRatios, parse_number

SCHEMA = "twistgraph/1"
EXIT_OK, EXIT_USAGE, EXIT_GUARD, EXIT_DISAGREE = 0, 1, 2, 3
FLOAT_TOL = 1e-10

NEG_ROUTES = ("graph-raw", "graph-fast", "closed", "direct-sum", "density", "wick")
RENYI_ROUTES = ("closed", "density", "partition")


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return format(float(x), ".15g")


def _log(x) -> float:
    return math.log(float(x)) if x > 0 else float("-inf")


def _parse_n(text: str) -> tuple[str, float]:
    """``"4"`` -> integer replica index; ``"0.5x2"`` -> ``n = 2m`` continued; other reals -> k=1 only."""
    t = text.strip()
    if t.endswith("x2"):
        m = float(t[:-2])
        return "even", 2 * m
    try:
        v = int(t)
        return "int", v
    except ValueError:
        return "real", float(t)


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


# -- partition ------------------------------------------------------------

def _negativity_poly(k: int, n: int, route: str) -> Polynomial3:
    if route == "closed" or n == 1:
        return closedform.negativity_polynomial(k, n)
    scale = math.factorial(k) ** n
    if route == "graph-raw":
        return graphs.partition_function_raw(k, n).exact_div(scale)
    if route == "graph-fast":
        return graphs.partition_function_fast(k, n).exact_div(scale)
    raise UsageError(f"route {route!r} does not produce a polynomial")


def cmd_partition(args) -> int:
    routes = ["graph-fast", "closed"] if args.route == "all" else [args.route]
    polys = {r: _negativity_poly(args.k, args.n, r) for r in routes}
    first = polys[routes[0]]
    agree = all(p == first for p in polys.values())
    out = first * (math.factorial(args.k) ** args.n) if args.unnormalized else first
    if args.format == "json":
        obj = {"schema": SCHEMA, "k": args.k, "n": args.n, "normalized": not args.unnormalized,
               "polynomial": out.to_json_obj(), "routes": routes, "agree": agree}
        print(json.dumps(obj, indent=2))
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["e1", "e0", "em1", "c"])
        for (e1, e0, em1), c in out:
            w.writerow([e1, e0, em1, c])
    else:
        print(out.to_text())
    if not agree:
        print("error: routes disagree", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


# -- negativity -----------------------------------------------------------

def _negativity_value(k: int, n: int, r: RegionRatios, route: str):
    if route == "closed":
        return closedform.negativity_exp(k, n, r)
    if route in ("graph-raw", "graph-fast"):
        if n == 1:
            return closedform.negativity_exp(k, 1, r)
        p = graphs.partition_function_raw(k, n) if route == "graph-raw" else graphs.partition_function_fast(k, n)
        scale = math.factorial(k) ** n
        if r.exact:
            return p.evaluate(*r.as_tuple()) / scale
        return p.evaluate_float(*r.as_floats()) / scale
    if route == "direct-sum":
        return qubit.negativity_direct_sum(k, n, r)
    if route == "density":
        return qubit.density_matrix_negativity(k, n, r)
    if route == "wick":
        if not r.exact:
            raise UsageError("the wick route needs exact ratios")
        return fock.wick_oracle(k, n, verify.layout_for(r))
    raise UsageError(f"unknown route {route!r}")


def _agreement(values: dict) -> bool:
    vals = list(values.values())
    ref = vals[0]
    exact = [v for v in vals if isinstance(v, Fraction)]
    if len(set(exact)) > 1:
        return False
    return all(abs(float(v) - float(ref)) <= FLOAT_TOL for v in vals)


def _report(kind: str, header: dict, values: dict, fmt: str, log_fn: Callable) -> int:
    agree = _agreement(values)
    if fmt == "json":
        obj = {"schema": SCHEMA, **header,
               "routes": {name: {f"exp_{kind}": _fmt(v), kind: log_fn(v)} for name, v in values.items()},
               "agree": agree}
        print(json.dumps(obj, indent=2))
    else:
        for name, v in values.items():
            print(f"{name}: exp_{kind}={_fmt(v)} {kind}={format(log_fn(v), '.15g')}")
        if len(values) > 1:
            print(f"verdict: {'OK' if agree else 'DISAGREE'}")
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_negativity(args) -> int:
    r = RegionRatios.parse(args.r)
    if not r.exact:
        _warn("float ratios: exact-equality checks downgraded to tolerance checks")
    kind, n = _parse_n(args.n)
    header = {"k": args.k, "n": args.n, "r": [_fmt(x) for x in r.as_tuple()]}
    if kind != "int":
        if args.k != 1:
            raise UsageError("non-integer n is only available for k = 1")
        if kind == "even" and n == 1.0:
            values = {
                "closed": math.exp(closedform.log_negativity_k1(r)),
                "spectrum": math.fsum(abs(x) for x in qubit.negativity_spectrum(1, r)),
            }
        else:
            values = {
                "closed": graphs.partition_k1_closed(n, r),
                "spectrum": math.fsum(abs(x) ** n for x in qubit.negativity_spectrum(1, r)),
            }
        return _report("En", header, values, args.format, _log)
    if n < 1:
        raise UsageError("n must be >= 1")
    routes = list(NEG_ROUTES) if args.route == "all" else [args.route]
    values = {}
    for route in routes:
        try:
            values[route] = _negativity_value(args.k, n, r, route)
        except ScaleError as exc:
            if args.route != "all":
                raise
            _warn(f"route {route} skipped: {exc}")
        except UsageError as exc:
            if args.route != "all":
                raise
            _warn(f"route {route} skipped: {exc}")
    return _report("En", header, values, args.format, _log)


# -- renyi ----------------------------------------------------------------

def cmd_renyi(args) -> int:
    r1 = parse_number(args.r1)
    r0 = 1 - r1
    if not 0 <= r1 <= 1:
        raise UsageError("r1 must lie in [0, 1]")
    if args.n == 1:
        raise UsageError("the Renyi index must differ from 1")
    if isinstance(r1, float):
        _warn("float ratio: exact-equality checks downgraded to tolerance checks")
    routes = list(RENYI_ROUTES) if args.route == "all" else [args.route]
    values = {}
    for route in routes:
        if route == "closed":
            values[route] = closedform.renyi_exp(args.k, args.n, r1, r0)
        elif route == "density":
            values[route] = qubit.renyi_direct(args.k, args.n, r1, r0)
        elif route == "partition":
            p = graphs.partition_function_fast(args.k, args.n)
            values[route] = p.evaluate(r1, r0, 0 * r1) / math.factorial(args.k) ** args.n
    header = {"k": args.k, "n": args.n, "r1": _fmt(r1)}
    return _report("Sn", header, values, args.format, lambda v: _log(v) / (1 - args.n) + 0.0)


# -- curve ----------------------------------------------------------------

def _linspace_exact(spec: str) -> list:
    """``start:stop:count`` with exact endpoints."""
    try:
        a, b, c = spec.split(":")
    except ValueError as exc:
        raise UsageError(f"sweep must look like start:stop:count, got {spec!r}") from exc
    start, stop, count = Fraction(a), Fraction(b), int(c)
    if count < 1:
        raise UsageError("count must be >= 1")
    if count == 1:
        return [start]
    return [start + (stop - start) * i / (count - 1) for i in range(count)]


def _curve_points(args) -> list[RegionRatios]:
    pts = []
    if args.grid is not None:
        vals = _linspace_exact(f"0:1:{args.grid}")
        for r1 in vals:
            for rm1 in vals:
                if r1 + rm1 <= 1:
                    pts.append(RegionRatios(r1, 1 - r1 - rm1, rm1))
        return pts
    share = Fraction(args.rm1_share)
    if not 0 <= share <= 1:
        raise UsageError("--rm1-share must lie in [0, 1]")
    for r1 in _linspace_exact(args.r1):
        rest = 1 - r1
        pts.append(RegionRatios(r1, rest * (1 - share), rest * share))
    return pts


def cmd_curve(args) -> int:
    kind, n = _parse_n(args.n)
    points = _curve_points(args)
    w = csv.writer(sys.stdout, lineterminator="\n")
    status = EXIT_OK
    if args.renyi:
        if kind != "int" or n == 1:
            raise UsageError("Renyi curves need an integer n != 1")
        w.writerow(["r1", "r0", "rm1", "exp_1mn_Sn", "Sn"])
    else:
        if kind != "int" and args.k != 1:
            raise UsageError("non-integer n is only available for k = 1")
        w.writerow(["r1", "r0", "rm1", "exp_En", "En"])
    for r in points:
        if args.renyi:
            if r.rm1 != 0:
                raise UsageError("Renyi curves need rm1 = 0 (use --rm1-share 0)")
            v = closedform.renyi_exp(args.k, n, r.r1, r.r0)
            val = _log(v) / (1 - n)
        elif kind == "even" and n == 1.0:
            val = closedform.log_negativity_k1(r)
            v = math.exp(val)
        elif kind != "int":
            v = graphs.partition_k1_closed(n, r)
            val = _log(v)
        else:
            v = closedform.negativity_exp(args.k, n, r)
            val = _log(v)
            if args.check:
                others = [qubit.density_matrix_negativity(args.k, n, r)]
                if qubit.direct_sum_admits(args.k, n):
                    others.append(qubit.negativity_direct_sum(args.k, n, r))
                if n >= 2:
                    others.append(graphs.partition_function_fast(args.k, n).evaluate(*r.as_tuple())
                                  / math.factorial(args.k) ** n)
                if any(abs(float(o) - float(v)) > FLOAT_TOL for o in others):
                    _warn(f"routes disagree at r = {r.as_tuple()}")
                    status = EXIT_DISAGREE
        w.writerow([_fmt(float(r.r1)), _fmt(float(r.r0)), _fmt(float(r.rm1)), _fmt(float(v)),
                    _fmt(val + 0.0)])
    return status


# -- verify / spectrum / graphs ------------------------------------------

def cmd_verify(args) -> int:
    grid = None
    if args.grid_size is not None:
        grid = verify.RATIO_GRID[: args.grid_size]
    rep = verify.run(args.scope, grid=grid)
    text = json.dumps(rep.to_json_obj(), indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for c in rep.checks:
        if not c.ok:
            print(f"FAILED {c.scope}: {c.name}", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_DISAGREE


def cmd_spectrum(args) -> int:
    r = RegionRatios.parse(args.r)
    eig = qubit.negativity_spectrum(args.k, r)
    obj = {
        "schema": SCHEMA,
        "k": args.k,
        "r": [_fmt(x) for x in r.as_tuple()],
        "eigenvalues": eig,
        "nonzero": [x for x in eig if abs(x) >= qubit.ZERO_EIG_TOL],
        "sum": math.fsum(eig),
        "sum_abs": math.fsum(abs(x) for x in eig),
    }
    if args.matrix:
        mat = qubit.partial_transposed_matrix(qubit._state_tensor(qubit.build_qubit_state(args.k, r)))
        obj["matrix"] = mat.real.tolist()
    print(json.dumps(obj, indent=2))
    return EXIT_OK


def cmd_graphs(args) -> int:
    out = []
    count = 0
    for g in graphs.enumerate_graphs_raw(args.k, args.n):
        count += 1
        if args.limit is None or len(out) < args.limit:
            out.append(g.to_json_obj())
    print(json.dumps({"schema": SCHEMA, "k": args.k, "n": args.n, "count": count, "graphs": out}, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="print the exp[E_n] polynomial")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--route", choices=("graph-raw", "graph-fast", "closed", "all"), default="closed")
    p.add_argument("--unnormalized", action="store_true", help="print p_{k,n} instead of p_{k,n}/(k!)^n")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("negativity", help="evaluate the replica negativity")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", required=True, help="integer, or M x2 (e.g. 0.5x2) for the n = 2M continuation")
    p.add_argument("--r", required=True, help="r1,r0,rm1 as fractions a/b or floats")
    p.add_argument("--route", choices=NEG_ROUTES + ("all",), default="closed")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_negativity)

    p = sub.add_parser("renyi", help="evaluate the Renyi entropy (rm1 = 0)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r1", required=True)
    p.add_argument("--route", choices=RENYI_ROUTES + ("all",), default="closed")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_renyi)

    p = sub.add_parser("curve", help="CSV sweep over region ratios")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--r1", default="0:1:11", help="start:stop:count sweep of r1")
    g.add_argument("--grid", type=int, help="count per axis of an (r1, rm1) grid on the simplex")
    p.add_argument("--rm1-share", default="0", help="fraction of 1 - r1 assigned to rm1")
    p.add_argument("--renyi", action="store_true")
    p.add_argument("--check", action="store_true", help="cross-check every row against other routes")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("verify", help="run reproduction checks, JSON report")
    p.add_argument("--scope", choices=verify.SCOPES, default="all")
    p.add_argument("--grid-size", type=int, help="use only the first N ratio triples for cross-routes")
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="eigenvalues of the partially transposed matrix")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--matrix", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("graphs", help="dump the graphs of G_{k,n} as edge lists")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_graphs)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScaleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
