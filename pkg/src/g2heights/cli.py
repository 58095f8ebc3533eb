"""Command-line front end for genus-2 height computations.

Curves are given as JSON {"f": ["f0","f1","f2","f3","f4"]} (coefficients of
the quintic in ascending order, decimal strings, monic x^5 implicit).  Points
are divisor classes, either as a pair of affine points
{"points": [["x1","y1"], ["x2","y2"]]} or in Mumford form
{"u": [...], "v": [...]}; --points-file reads a JSON list of them.

Every command prints a single JSON document on standard output.  Exit codes:
0 success, 2 domain error (theta support, membership failures, bad input
values), 3 resource-guard error (search or recursion bounds), 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .jacobian import (
    Genus2Curve,
    MumfordDivisor,
    cantor_scalar_mul,
    divisor_from_points,
)
from .kummer import build_form_library, delta_eval, kummer_map
from .padic_height import (
    canonical_height,
    certify,
    height_pairing,
    naive_height,
    regulator,
)
from .real_height import neron_tate_report

_RESOURCE_ERRORS = (
    "resource guard exceeded",
    "no J_p multiple found within bound",
    "mu_symbolic bound exceeded",
    "reduction order exceeds the group-order bound",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(64)


def _parse_curve(text):
    return Genus2Curve.from_json(json.loads(text))


def _parse_point(obj, curve):
    if isinstance(obj, str):
        obj = json.loads(obj)
    if "points" in obj:
        pts = [(Fraction(x), Fraction(y)) for x, y in obj["points"]]
        return divisor_from_points(pts, curve)
    if "u" in obj:
        return MumfordDivisor.from_json(obj, curve)
    raise ValueError("point JSON needs either 'points' or 'u'/'v'")


def _points(args, curve, minimum=1):
    objs = list(args.point or [])
    if args.points_file:
        with open(args.points_file) as fh:
            objs.extend(json.load(fh))
    if len(objs) < minimum:
        raise ValueError(f"command needs at least {minimum} point(s)")
    return [_parse_point(o, curve) for o in objs]


def _emit(doc, compact):
    if compact:
        print(json.dumps(doc, separators=(",", ":")))
    else:
        print(json.dumps(doc, indent=2))


def _build_parser():
    top = _Parser(prog="g2heights", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, prime=False, prec=False, tol=False, mmax=False, multi=False):
        p.add_argument("--curve", required=True, help="curve JSON or @file")
        p.add_argument("--point", action="append", help="point JSON (repeatable)")
        p.add_argument("--points-file", help="JSON file with a list of points")
        if prime:
            p.add_argument("-p", type=int, required=True, help="odd prime")
        if prec:
            p.add_argument("--prec", type=int, default=10, help="p-adic precision")
        if tol:
            p.add_argument("--tol", type=float, default=1e-6, help="real tolerance")
        if mmax:
            p.add_argument("--mmax", type=int, default=10000, help="multiplier search bound")
        p.add_argument("--json", action="store_true", help="compact single-line output")

    common(sub.add_parser("certify", help="J_1/U_q/J_p membership certificate"), prime=True)
    common(sub.add_parser("hp", help="canonical p-adic height"), prime=True, prec=True, mmax=True)
    common(sub.add_parser("hp-naive", help="naive p-adic height H_p"), prime=True, prec=True)
    common(sub.add_parser("pairing", help="canonical p-adic height pairing"), prime=True, prec=True, mmax=True)
    common(sub.add_parser("regulator", help="p-adic regulator of a point list"), prime=True, prec=True, mmax=True)
    common(sub.add_parser("nt", help="canonical real (Neron-Tate) height"), tol=True)
    common(sub.add_parser("local", help="per-place local height table"), tol=True)
    kum = sub.add_parser("kummer", help="Kummer map / duplication / multiplication")
    kum.add_argument("action", choices=("map", "double", "mul"))
    kum.add_argument("--m", type=int, default=2, help="multiplier for mul")
    common(kum)
    return top


def _curve_text(raw):
    if raw.startswith("@"):
        with open(raw[1:]) as fh:
            return fh.read()
    return raw


def run(argv):
    """Execute one CLI invocation; returns the JSON document."""
    args = _build_parser().parse_args(argv)
    curve = _parse_curve(_curve_text(args.curve))
    cmd = args.command
    if cmd == "certify":
        P = _points(args, curve)[0]
        return certify(P, args.p, curve).to_json(), args
    if cmd == "hp":
        P = _points(args, curve)[0]
        return canonical_height(P, args.p, args.prec, curve, args.mmax).to_json(), args
    if cmd == "hp-naive":
        P = _points(args, curve)[0]
        v = naive_height(P, args.p, args.prec, curve)
        return {"p": args.p, "value": v.to_json()}, args
    if cmd == "pairing":
        P, Q = _points(args, curve, minimum=2)[:2]
        v = height_pairing(P, Q, args.p, args.prec, curve, args.mmax)
        return {"p": args.p, "value": v.to_json()}, args
    if cmd == "regulator":
        pts = _points(args, curve)
        v = regulator(pts, args.p, args.prec, curve, args.mmax)
        return {"p": args.p, "rank": len(pts), "value": v.to_json()}, args
    if cmd == "nt":
        P = _points(args, curve)[0]
        return neron_tate_report(P, args.tol, curve), args
    if cmd == "local":
        P = _points(args, curve)[0]
        report = neron_tate_report(P, args.tol, curve)
        return {"places": report["places"], "error_bound": report["error_bound"]}, args
    if cmd == "kummer":
        P = _points(args, curve)[0]
        k = kummer_map(P, curve)
        if args.action == "map":
            return k.to_json(), args
        lib = build_form_library(curve)
        if args.action == "double":
            return delta_eval(lib, k).primitive().to_json(), args
        return kummer_map(cantor_scalar_mul(P, args.m, curve), curve).to_json(), args
    raise ValueError(f"unknown command {cmd!r}")  # unreachable


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        doc, args = run(argv)
    except SystemExit:
        raise
    except (ValueError, ZeroDivisionError, OSError, json.JSONDecodeError, KeyError) as exc:
        msg = str(exc)
        code = 3 if any(m in msg for m in _RESOURCE_ERRORS) else 2
        print(json.dumps({"error": msg}), file=sys.stderr)
        return code
    _emit(doc, args.json)
    return 0


if __name__ == "__main__":
    sys.exit(main())
