"""Command-line front end.

Three subcommands:

  compute   one configuration -> value, method, error estimate, term list
  table     grid sweep over (L/r, d/r, z/r) -> CSV or JSON rows
  verify    randomized self-check suites -> per-suite PASS/FAIL report

Values print with 17 significant digits so a printed number parses back to
the exact double the library produced. Normalized solid angle (fraction of
4*pi) is the default; --steradians rescales. Exit codes: 0 success, 1 domain
or runtime failure, 2 usage.

Table grids are dimensionless (r = 1); each axis takes either a comma list
("0.5,1,2") or a range spec "start:stop:count:linear" / "start:stop:count:log".
Rows are emitted in lexicographic (L, d, z) order and a given request always
produces byte-identical output.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys

from . import verify as verify_mod
from .errors import SolidCylError
from .geometry import CanonicalConfig, CylinderSpec, SourcePoint, TermKind, decompose
from .oracle import mc_total, quad_cyl0_phi, quad_disc
from .solid_angle import Method, SolidAngle, omega_circ, omega_cyl0, omega_total

__all__ = ["main"]

_QUAD_TOL_CYL0 = 1e-12
_QUAD_TOL_DISC = 1e-10


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _parse_axis(text: str) -> tuple[float, ...]:
    """Axis spec: comma-separated floats, or start:stop:count:linear|log."""
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 4:
                raise ValueError("range spec needs start:stop:count:linear|log")
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
            kind = parts[3]
            if count < 1:
                raise ValueError("count must be >= 1")
            if kind == "linear":
                if count == 1:
                    return (start,)
                step = (stop - start) / (count - 1)
                return tuple(start + i * step for i in range(count))
            if kind == "log":
                if start <= 0.0 or stop <= 0.0:
                    raise ValueError("log range needs positive endpoints")
                if count == 1:
                    return (start,)
                la, lb = math.log(start), math.log(stop)
                return tuple(math.exp(la + i * (lb - la) / (count - 1)) for i in range(count))
            raise ValueError(f"unknown range kind {kind!r}")
        values = tuple(float(p) for p in text.split(","))
        if not values:
            raise ValueError("empty axis")
        return values
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad axis spec {text!r}: {exc}") from exc


def _resolve_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("SOLIDCYL_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise SolidCylError(f"SOLIDCYL_SEED must be an integer; got {env!r}") from exc


def _quadrature_total(cyl: CylinderSpec, src: SourcePoint) -> SolidAngle:
    """Sum the decomposition with the quadrature oracles instead of closed forms."""
    total = 0.0
    err = 0.0
    for term in decompose(cyl, src):
        if term.kind is TermKind.CONSTANT:
            total += term.coefficient * term.constant_value
        elif term.L_eff == 0.0:
            # zero-height lateral strip or in-plane disc seen edge-on (d > r)
            continue
        elif term.kind is TermKind.CYL0:
            total += term.coefficient * quad_cyl0_phi(CanonicalConfig(term.L_eff, cyl.r, src.d), tol=_QUAD_TOL_CYL0)
            err += _QUAD_TOL_CYL0
        else:
            total += term.coefficient * quad_disc(CanonicalConfig(term.L_eff, cyl.r, src.d), tol=_QUAD_TOL_DISC)
            err += _QUAD_TOL_DISC
    return SolidAngle(total, Method.QUADRATURE, err)


def _evaluate(args) -> tuple[SolidAngle, str]:
    cyl = CylinderSpec(args.L, args.r)
    src = SourcePoint(args.d, args.z)
    terms = decompose(cyl, src).describe()
    if args.method == "quadrature":
        return _quadrature_total(cyl, src), terms
    if args.method == "montecarlo":
        est = mc_total(cyl, src, args.samples, _resolve_seed(args.seed))
        return SolidAngle(est.hit_fraction, Method.MONTECARLO, est.std_error), terms
    forced = {"auto": None, "elliptic": Method.ELLIPTIC, "series": Method.SERIES}[args.method]
    return omega_total(cyl, src, method=forced), terms


def _cmd_compute(args) -> int:
    result, terms = _evaluate(args)
    scale = 4.0 * math.pi if args.steradians else 1.0
    print(f"omega = {_fmt(result.value * scale)}")
    print(f"units = {'steradians' if args.steradians else 'fraction-of-4pi'}")
    print(f"method = {result.method.value}")
    print(f"err_estimate = {_fmt(result.err_estimate * scale)}")
    print(f"terms = {terms}")
    return 0


def _table_rows(args):
    for L in sorted(args.L):
        for d in sorted(args.d):
            for z in sorted(args.z):
                if args.quantity == "total":
                    res = omega_total(CylinderSpec(L, 1.0), SourcePoint(d, z))
                elif args.quantity == "cyl0":
                    res = omega_cyl0(CanonicalConfig(L, 1.0, d))
                else:
                    res = omega_circ(CanonicalConfig(L, 1.0, d))
                yield L, 1.0, d, z, res


def _cmd_table(args) -> int:
    scale = 4.0 * math.pi if args.steradians else 1.0
    out = io.StringIO()
    if args.format == "csv":
        out.write("L,r,d,z,omega,method,err_estimate\n")
        for L, r, d, z, res in _table_rows(args):
            row = (_fmt(L), _fmt(r), _fmt(d), _fmt(z), _fmt(res.value * scale), res.method.value, _fmt(res.err_estimate * scale))
            out.write(",".join(row) + "\n")
    else:
        records = [
            {
                "L": L,
                "r": r,
                "d": d,
                "z": z,
                "omega": res.value * scale,
                "method": res.method.value,
                "err_estimate": res.err_estimate * scale,
            }
            for L, r, d, z, res in _table_rows(args)
        ]
        out.write(json.dumps(records, indent=2) + "\n")
    if args.out is None:
        sys.stdout.write(out.getvalue())
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out.getvalue())
    return 0


def _parse_tolerance(text: str) -> tuple[str, float]:
    name, sep, raw = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return name, float(raw)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad tolerance value in {text!r}") from exc


def _cmd_verify(args) -> int:
    overrides = dict(args.tolerance or [])
    results = verify_mod.run_all(points=args.points, seed=_resolve_seed(args.seed), overrides=overrides)
    for res in results:
        print(res.line())
    failed = [res for res in results if not res.passed]
    if failed:
        print(f"{len(failed)} suite(s) FAILED")
        return 1
    print(f"all {len(results)} suites passed")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solidcyl",
        description="Normalized solid angle of a finite right circular cylinder at a point source.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="evaluate one configuration")
    comp.add_argument("--L", type=float, required=True, help="cylinder height")
    comp.add_argument("--r", type=float, required=True, help="cylinder radius")
    comp.add_argument("--d", type=float, required=True, help="source distance from the axis")
    comp.add_argument("--z", type=float, default=0.0, help="source height above the lower base plane (default 0)")
    comp.add_argument(
        "--method",
        choices=["auto", "elliptic", "series", "quadrature", "montecarlo"],
        default="auto",
        help="evaluation route (default auto)",
    )
    comp.add_argument("--steradians", action="store_true", help="print 4*pi times the normalized value")
    comp.add_argument("--samples", type=int, default=1_000_000, help="Monte Carlo rays (default 1e6)")
    comp.add_argument("--seed", type=int, default=None, help="RNG seed (beats SOLIDCYL_SEED; default 0)")
    comp.set_defaults(func=_cmd_compute)

    tab = sub.add_parser("table", help="sweep a grid and emit CSV or JSON")
    tab.add_argument("--L", type=_parse_axis, required=True, help="L/r axis: comma list or start:stop:count:linear|log")
    tab.add_argument("--d", type=_parse_axis, required=True, help="d/r axis: same syntax")
    tab.add_argument("--z", type=_parse_axis, default=(0.0,), help="z/r axis (default 0)")
    tab.add_argument("--quantity", choices=["total", "cyl0", "circ"], default="total")
    tab.add_argument("--format", choices=["csv", "json"], default="csv")
    tab.add_argument("--steradians", action="store_true")
    tab.add_argument("--out", default=None, help="output path (default stdout)")
    tab.set_defaults(func=_cmd_table)

    ver = sub.add_parser("verify", help="run the randomized verification suites")
    ver.add_argument("--points", type=int, default=200, help="configurations per suite (default 200)")
    ver.add_argument("--seed", type=int, default=None, help="RNG seed (beats SOLIDCYL_SEED; default 0)")
    ver.add_argument(
        "--tolerance",
        type=_parse_tolerance,
        action="append",
        metavar="NAME=VALUE",
        help="override a suite tolerance, e.g. --tolerance disc_cross=1e-9",
    )
    ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SolidCylError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
