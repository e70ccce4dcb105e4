"""Command-line interface: evaluate, tabulate, verify, expand, reduce.

Angles are radians unless --degrees is given.  Numeric output is serialized
at 17 significant digits so CSV and JSON round-trip float64 losslessly.
Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

from .applications import FourierInputs, fourier_g2_detailed, spherical_distance
from .errors import SphereGreenError
from .green import green, green_odd, green_via_recurrence
from .hyp import (
    HypParams,
    classify,
    eval_reduced,
    eval_series_oracle,
    format_reduced,
    reduce,
)
from .quadrature import QuadratureConfig, quad_green_with_error
from .special import HalfIntRational, SphereGeometry
from .verify import SUITES, run_suite

CSV_HEADER = "n,R,theta,value,method,error_estimate"


def _fmt(x: float | None) -> str:
    return "" if x is None else format(float(x), ".17g")


@dataclass
class OutputRecord:
    n: int
    R: float
    theta: float
    value: float
    method: str
    error_estimate: float | None = None

    def csv_row(self) -> str:
        return ",".join(
            [
                str(self.n),
                _fmt(self.R),
                _fmt(self.theta),
                _fmt(self.value),
                self.method,
                _fmt(self.error_estimate),
            ]
        )

    def json_obj(self) -> str:
        err = "null" if self.error_estimate is None else _fmt(self.error_estimate)
        return (
            f'{{"n": {self.n}, "R": {_fmt(self.R)}, "theta": {_fmt(self.theta)}, '
            f'"value": {_fmt(self.value)}, "method": "{self.method}", '
            f'"error_estimate": {err}}}'
        )


def _evaluate(geom: SphereGeometry, theta: float, method: str, tol: float) -> OutputRecord:
    if method == "quadrature":
        cfg = QuadratureConfig(rel_tol=tol, abs_tol=1e-16)
        val, err = quad_green_with_error(geom, theta, cfg)
        return OutputRecord(geom.n, geom.R, theta, val, "quadrature", err)
    if method == "recurrence":
        ev = green_via_recurrence(geom, theta)
    elif method == "closed":
        if geom.n % 2 == 1 and theta < math.pi:
            ev = green_odd((geom.n - 1) // 2, theta, geom, antipode_fallback=False)
        else:
            ev = green(geom, theta)
    else:  # auto: closed forms with the near-antipode quadrature fallback
        ev = green(geom, theta)
    return OutputRecord(geom.n, geom.R, theta, ev.value, ev.method.value, None)


def _emit(records: list[OutputRecord], fmt: str) -> None:
    if fmt == "csv":
        print(CSV_HEADER)
        for rec in records:
            print(rec.csv_row())
    else:
        print("[" + ",\n ".join(rec.json_obj() for rec in records) + "]")


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def cmd_eval(args) -> int:
    geom = SphereGeometry(args.n, args.R)
    theta = _angle(args.theta, args.degrees)
    _emit([_evaluate(geom, theta, args.method, args.tol)], args.format)
    return 0


def cmd_table(args) -> int:
    geom = SphereGeometry(args.n, args.R)
    lo = _angle(args.theta_min, args.degrees)
    hi = _angle(args.theta_max, args.degrees)
    if not (0.0 < lo < hi <= math.pi):
        raise SphereGreenError(
            f"need 0 < theta-min < theta-max <= pi, got [{lo}, {hi}]"
        )
    if args.points < 2:
        raise SphereGreenError(f"need at least 2 points, got {args.points}")
    step = (hi - lo) / (args.points - 1)
    thetas = [lo + i * step for i in range(args.points - 1)] + [hi]
    _emit(
        [_evaluate(geom, t, args.method, args.tol) for t in thetas], args.format
    )
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite)
    for res in results:
        print(res.line())
        for row in res.failures[:10]:
            print(f"       worst offenders: {row}")
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def cmd_fourier(args) -> int:
    inp = FourierInputs(
        args.theta, args.theta_prime, args.delta_phi, max_terms=args.max_terms
    )
    res = fourier_g2_detailed(inp)
    d = spherical_distance(args.theta, args.theta_prime, args.delta_phi)
    rec = OutputRecord(2, 1.0, d, res.value, "fourier-series", res.tail_bound)
    print(CSV_HEADER)
    print(rec.csv_row())
    print(f"# terms used: {res.terms_used}, tail bound: {_fmt(res.tail_bound)}")
    limit = res.terms_used if args.breakdown == 0 else min(args.breakdown, res.terms_used)
    hi, lo = max(args.theta, args.theta_prime), min(args.theta, args.theta_prime)
    running = math.log(1.0 / (math.sin(0.5 * hi) * math.cos(0.5 * lo)))
    q = inp.ratio()
    print("k,term,running_sum")
    print(f"0,{_fmt(running)},{_fmt(running)}")
    power = 1.0
    for k in range(1, limit + 1):
        power *= q
        term = math.cos(k * args.delta_phi) * power / k
        running += term
        print(f"{k},{_fmt(term)},{_fmt(running)}")
    return 0


def cmd_reduce(args) -> int:
    params = HypParams(
        HalfIntRational.from_value(args.a),
        HalfIntRational.from_value(args.b),
        HalfIntRational.from_value(args.c),
    )
    case = classify(params)
    form = reduce(params)
    print(f"# {params}  case: {case.name} ({case.value})")
    print(format_reduced(form))
    if args.z is not None:
        got = eval_reduced(form, args.z)
        want = eval_series_oracle(params, args.z)
        print(f"# at z={_fmt(args.z)}: reduced={_fmt(got)} series={_fmt(want)} "
              f"|diff|={abs(got - want):.3e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spheregreen",
        description="Green's functions of the Laplacian on n-spheres: "
        "closed forms, quadrature oracle, and 2F1 reduction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--n", type=int, required=True, help="sphere dimension (>= 2)")
        p.add_argument("--R", type=float, default=1.0, help="sphere radius (default 1)")
        p.add_argument("--degrees", action="store_true", help="angles are in degrees")
        p.add_argument(
            "--method",
            choices=["auto", "closed", "recurrence", "quadrature"],
            default="auto",
        )
        p.add_argument(
            "--tol", type=float, default=1e-10, help="quadrature relative tolerance"
        )
        p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("eval", help="evaluate the Green's function at one angle")
    add_common(p)
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("table", help="tabulate over an evenly spaced angle grid")
    add_common(p)
    p.add_argument("--theta-min", type=float, required=True)
    p.add_argument("--theta-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("fourier", help="azimuthal expansion of the 2-sphere kernel")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--theta-prime", type=float, required=True)
    p.add_argument("--delta-phi", type=float, required=True)
    p.add_argument("--max-terms", type=int, default=200_000)
    p.add_argument(
        "--breakdown", type=int, default=20,
        help="number of per-term rows to print (0 = all)",
    )
    p.set_defaults(fn=cmd_fourier)

    p = sub.add_parser("reduce", help="reduce a 2F1 with half-integer parameters")
    p.add_argument(
        "--a", required=True,
        help='integer or half-integer; write negatives as --a=-3/2',
    )
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--z", type=float, default=None, help="also evaluate at z in (0,1)")
    p.set_defaults(fn=cmd_reduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SphereGreenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
