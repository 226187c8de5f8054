"""Command-line interface.

Exit codes: 0 success, 1 failed verification, 2 usage error, 3 density
constraint violated, 4 optimiser did not converge.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .errors import ConvergenceFailure, DensityMismatch, ThetaFrameError
from .framebounds import (
    GaborConfig,
    closed_form_square_red2,
    fourier_series_F,
    hexagonal_red2_bounds,
    janssen_coefficient,
    report,
)
from .lattice import (
    HEXAGONAL_FORM,
    Lattice2D,
    forms_equivalent,
    from_matrix,
    hexagonal,
    quadratic_form,
    reduce_form,
    square,
)
from .optimize import minimize_lattice, scan_gamma, verify_montgomery
from .oracle import brute_force_F, grid_extrema, inner_product_quadrature, poisson_bc_check
from .theta import cubic_theta, jacobi_theta, lattice_theta

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DENSITY, EXIT_CONVERGENCE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _diag(msg: str):
    if sys.stderr.isatty() and "NO_COLOR" not in os.environ:
        msg = f"\033[33m{msg}\033[0m"
    print(msg, file=sys.stderr)


def _fmt(x) -> str:
    return format(x, ".17g") if isinstance(x, float) else str(x)


def _snap(lat: Lattice2D, n: int, rtol: float, notes: list) -> Lattice2D:
    """Rescale ``lat`` onto volume ``1/(2n)`` when it is within ``rtol``."""
    dev = 2 * n * lat.volume - 1.0
    if abs(dev) <= 1e-12:
        return lat
    if abs(dev) > rtol:
        raise DensityMismatch(
            f"lattice density {lat.density:.17g} differs from 2n={2 * n} "
            f"by more than the relative tolerance {rtol:g}"
        )
    notes.append(f"lattice rescaled onto density {2 * n} (relative deviation {dev:.3g})")
    return lat.scaled(1.0 / math.sqrt(2 * n * lat.volume))


def _lattice_from_args(args, notes) -> Lattice2D:
    given = [x is not None and x is not False for x in (args.square, args.hex, args.params, args.matrix)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --square, --hex, --params, --matrix")
    if args.square:
        return square(args.n)
    if args.hex:
        return hexagonal(args.n)
    if args.params:
        a, b, g = args.params
        if a <= 0 or b <= 0:
            raise UsageError("alpha and beta must be positive")
        lat = Lattice2D.from_params(a, b, g)
    else:
        try:
            lat = from_matrix(*args.matrix)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return _snap(lat, args.n, args.density_rtol, notes)


def _lattice_dict(lat: Lattice2D, tie_rtol: float = 1e-9) -> dict:
    q = reduce_form(quadratic_form(lat), tie_rtol)
    return {"alpha": lat.alpha, "beta": lat.beta, "gamma": lat.gamma,
            "volume": lat.volume, "reduced_form": list(q)}


def cmd_bounds(args) -> tuple[dict, int]:
    if args.n < 1:
        raise UsageError("n must be >= 1")
    if args.grid < 8:
        raise UsageError("--grid must be >= 8")
    notes = []
    lat = _lattice_from_args(args, notes)
    cfg = GaborConfig(lat, args.n)
    rep = report(cfg, args.grid, args.eps)
    results = rep.as_dict()
    results["notes"] = notes + results["notes"]
    results["lattice"] = _lattice_dict(lat)
    params = {"n": args.n, "eps": args.eps, "grid": args.grid}
    return {"params": params, "results": results}, EXIT_OK


def cmd_scan(args) -> tuple[dict, int]:
    if args.samples < 16:
        raise UsageError("--samples must be >= 16")
    if args.n < 1 or args.alpha <= 0:
        raise UsageError("n must be >= 1 and alpha positive")
    beta = args.beta if args.beta is not None else 1.0 / (2 * args.n * args.alpha)
    if beta <= 0:
        raise UsageError("beta must be positive")
    notes = []
    lat = _snap(Lattice2D(args.alpha, 0.0, beta), args.n, args.density_rtol, notes)
    res = scan_gamma(lat.alpha, lat.beta, args.n, args.samples, args.eps)
    results = res.as_dict()
    results.update({"alpha": lat.alpha, "beta": lat.beta, "period": lat.shear_period,
                    "notes": notes})
    params = {"alpha": args.alpha, "beta": args.beta, "n": args.n,
              "samples": args.samples, "eps": args.eps}
    return {"params": params, "results": results, "truncation": {"epsilon": args.eps}}, EXIT_OK


def cmd_minimize(args) -> tuple[dict, int]:
    if args.n < 1:
        raise UsageError("n must be >= 1")
    lat, b_star = minimize_lattice(args.n, args.tol, args.eps)
    q = quadratic_form(lat)
    results = _lattice_dict(lat, 1e-6)
    results.update({
        "B_star": b_star,
        "hex_equivalent": forms_equivalent(q, HEXAGONAL_FORM, 1e-6),
        "equivalence_tolerance": 1e-6,
    })
    params = {"n": args.n, "tol": args.tol, "eps": args.eps}
    return {"params": params, "results": results, "truncation": {"epsilon": args.eps}}, EXIT_OK


def _check(name, residual, tol):
    return {"name": name, "residual": float(residual), "tolerance": tol,
            "passed": bool(residual < tol)}


def _identity_checks():
    checks = []
    for s in (0.5, 1.0, 2.0, 4.0):
        t2, t3, t4 = (jacobi_theta(k, s) for k in (2, 3, 4))
        checks.append(_check(f"jacobi_quartic s={s:g}", abs(t3**4 - t2**4 - t4**4), 1e-12))
        checks.append(_check(f"jacobi_imaginary s={s:g}",
                             abs(jacobi_theta(2, 1 / s) - math.sqrt(s) * t4), 1e-12))
    t_hex = 2 * math.pi / math.sqrt(3)
    for label, t in (("exp(-2pi/sqrt3)", t_hex), ("0.1", -math.log(0.1)), ("0.3", -math.log(0.3))):
        a, b, c = (cubic_theta(w, t) for w in "abc")
        checks.append(_check(f"cubic a^3=b^3+c^3 q={label}", abs(a**3 - b**3 - c**3), 1e-12))
    b, c = cubic_theta("b", t_hex), cubic_theta("c", t_hex)
    checks.append(_check("cubic b=c q=exp(-2pi/sqrt3)", abs(b - c), 1e-12))
    for rho in (0.3, 2.0):
        lhs, s1 = lattice_theta(HEXAGONAL_FORM, rho)
        rhs, s2 = lattice_theta(HEXAGONAL_FORM, 1 / rho)
        tol = s1.certified_tail + s2.certified_tail / rho + 1e-13
        checks.append(_check(f"modular rho={rho:g}", abs(lhs - rhs / rho), max(tol, 1e-12)))
    lo, up = closed_form_square_red2()
    checks.append(_check("square B/A=sqrt2", abs(up / lo - math.sqrt(2)), 1e-13))
    lo, up = hexagonal_red2_bounds()
    checks.append(_check("hexagonal B/A=cbrt2", abs(up / lo - 2 ** (1 / 3)), 1e-12))
    return checks


def _oracle_checks():
    checks = []
    worst = 0.0
    for a, b, g in ((2**-0.5, 2**-0.5, 0.0), (0.5, 1.0, 0.3), (0.8, 0.625, 0.45)):
        for k in range(-2, 3):
            for l in range(-2, 3):
                worst = max(worst, abs(janssen_coefficient(k, l, a, b, g)
                                       - inner_product_quadrature(k, l, a, b, g)))
    checks.append(_check("janssen vs quadrature", worst, 1e-10))
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(1, 3))
        alpha = float(rng.uniform(0.6, 1.6)) / math.sqrt(2 * n)
        lat = Lattice2D.from_params(alpha, 1 / (2 * n * alpha), float(rng.uniform(0, 1)))
        cfg = GaborConfig(lat, n)
        x, w = rng.uniform(0, 1, 2)
        worst = max(worst, abs(fourier_series_F(x, w, cfg) - brute_force_F(x, w, cfg)))
    checks.append(_check("certified F vs brute-force F", worst, 1e-11))
    cfg = GaborConfig(hexagonal(1), 1)
    _, _, _, argmax = grid_extrema(cfg, 48)
    checks.append(_check("argmax at origin (hexagonal)", math.hypot(*argmax), 1e-12))
    pc = poisson_bc_check(1e-12)
    checks.append(_check("poisson b=c", abs(pc.lhs - pc.rhs), 1e-12))
    return checks


def cmd_verify(args) -> tuple[dict, int]:
    params = {"suite": args.suite}
    extra = {}
    if args.suite == "identities":
        checks = _identity_checks()
    elif args.suite == "oracle":
        checks = _oracle_checks()
    elif args.suite == "montgomery":
        rhos = args.rho or [0.5, 1.0, 2.0]
        if args.grid < 10:
            raise UsageError("--grid must be >= 10 for montgomery")
        rep = verify_montgomery(rhos, args.grid)
        params.update({"rho": rhos, "grid": args.grid})
        extra = rep.as_dict()
        checks = [_check(f"montgomery rho={r:g}", max(0.0, -rep.min_margin[r]), 1e-12)
                  for r in rep.rhos]
        checks.append({"name": "violations", "residual": float(len(rep.violations)),
                       "tolerance": 1.0, "passed": not rep.violations})
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown suite {args.suite!r}")
    passed = all(c["passed"] for c in checks)
    results = {"checks": checks, "passed": passed}
    if extra:
        results["montgomery"] = extra
    return {"params": params, "results": results}, EXIT_OK if passed else EXIT_VERIFY


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _diag(f"{self.prog}: error: {message}")
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thetaframe", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt=("json", "csv")):
        sp.add_argument("--eps", type=float, default=1e-15, help="target tail bound")
        sp.add_argument("--format", choices=fmt, default="json")
        sp.add_argument("--density-rtol", type=float, default=1e-3,
                        help="rescale inputs whose density is within this relative "
                             "tolerance of 2n; beyond it exit with code 3")

    b = sub.add_parser("bounds", help="frame bounds for one lattice")
    b.add_argument("--square", action="store_true")
    b.add_argument("--hex", action="store_true")
    b.add_argument("--params", nargs=3, type=float, metavar=("ALPHA", "BETA", "GAMMA"))
    b.add_argument("--matrix", nargs=4, type=float, metavar=("M11", "M12", "M21", "M22"))
    b.add_argument("-n", type=int, default=1, help="redundancy index (density 2n)")
    b.add_argument("--grid", type=int, default=96)
    common(b)
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("scan", help="upper bound over one shear period")
    s.add_argument("-a", "--alpha", type=float, required=True)
    s.add_argument("-b", "--beta", type=float, default=None)
    s.add_argument("-n", type=int, default=1)
    s.add_argument("--samples", type=int, default=64)
    common(s)
    s.set_defaults(func=cmd_scan)

    m = sub.add_parser("minimize", help="lattice with the smallest upper bound")
    m.add_argument("-n", type=int, default=1)
    m.add_argument("--tol", type=float, default=1e-8)
    common(m, fmt=("json",))
    m.set_defaults(func=cmd_minimize)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=["identities", "montgomery", "oracle"])
    v.add_argument("--rho", type=float, action="append")
    v.add_argument("--grid", type=int, default=20)
    common(v, fmt=("json",))
    v.set_defaults(func=cmd_verify)
    return p


def _write_csv(record: dict, out):
    w = csv.writer(out, lineterminator="\n")
    res = record["results"]
    if record["command"] == "scan":
        w.writerow(["gamma", "B"])
        for g, v in zip(res["gamma"], res["B"]):
            w.writerow([_fmt(float(g)), _fmt(float(v))])
        out.write(f"# argmin gamma={_fmt(res['argmin'])} B={_fmt(res['min_value'])}\n")
        return
    w.writerow(["field", "value"])
    for key in ("upper", "lower", "lower_source", "lower_grid", "condition",
                "route_spread", "grid_resolution"):
        w.writerow([key, _fmt(res[key])])
    for key, val in res["routes"].items():
        w.writerow([f"route_{key}", _fmt(val)])
    for key, val in res["route_tails"].items():
        w.writerow([f"tail_{key}", _fmt(val)])
    for i, name in enumerate(("x", "omega")):
        w.writerow([f"argmax_{name}", _fmt(res["argmax"][i])])
        w.writerow([f"argmin_{name}", _fmt(res["argmin"][i])])


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        body, code = args.func(args)
    except UsageError as exc:
        _diag(f"thetaframe: usage error: {exc}")
        return EXIT_USAGE
    except DensityMismatch as exc:
        _diag(f"thetaframe: density constraint violated: {exc}")
        return EXIT_DENSITY
    except ConvergenceFailure as exc:
        _diag(f"thetaframe: {exc}")
        return EXIT_CONVERGENCE
    except ThetaFrameError as exc:
        _diag(f"thetaframe: {exc}")
        return EXIT_USAGE
    record = {"command": args.command, **body, "wall_time": time.perf_counter() - start}
    if args.format == "csv":
        buf = io.StringIO()
        _write_csv(record, buf)
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(json.dumps(record, indent=2) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
