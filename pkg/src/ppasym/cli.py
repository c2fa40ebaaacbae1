"""Command-line front end: JSON/CSV artifacts for every subsystem.

Exit codes: 0 success, 1 domain refusal (wrong region / out-of-range input),
2 numerical failure (series truncation, quadrature, non-convergence).
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from . import asymptotics, circle_method, exact_polynomials, phase_geometry, zeros
from .asymptotics import RegionError
from .special_functions import TruncationError

_COMPLEX_RE = re.compile(
    r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?:([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?$"
)


def parse_complex(text: str) -> complex:
    """Parse the '<decimal>[+|-]<decimal>i' grammar (no spaces); a bare
    decimal is accepted as a real number."""
    m = _COMPLEX_RE.match(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}")
    re_part = float(m.group(1))
    im_part = float(m.group(2)) if m.group(2) else 0.0
    return complex(re_part, im_part)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _default_precision() -> int:
    return int(os.environ.get("PLPOLY_PRECISION_BITS", "256"))


def _emit(payload, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_csv(header: list[str], rows, out: str | None) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(c) if isinstance(c, float) else str(c) for c in row))
    text = "\n".join(lines)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _pmap(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=8))


# ---------------------------------------------------------------------------
# subcommand bodies


def _cmd_coeffs(args) -> int:
    poly = exact_polynomials.plane_partition_polynomial(args.n)
    if args.format == "json":
        _emit(exact_polynomials.to_json_dict(poly), args.out)
    else:
        _emit_csv(["k", "coeff"], enumerate(poly.coeffs), args.out)
    return 0


def _cmd_eval(args) -> int:
    poly = exact_polynomials.plane_partition_polynomial(args.n)
    if args.precision:
        res = exact_polynomials.evaluate(poly, args.x, args.precision)
    else:
        res = exact_polynomials.evaluate_adaptive(poly, args.x)
    from mpmath import nstr

    _emit(
        {
            "n": args.n,
            "x": [_fmt(args.x.real), _fmt(args.x.imag)],
            "value_re": nstr(res.value.real, 25),
            "value_im": nstr(res.value.imag, 25),
            "abs_error_bound": _fmt(res.abs_error_bound),
        },
        args.out,
    )
    return 0


def _cmd_asym(args) -> int:
    x, n = args.x, args.n
    if args.region == "auto":
        kind, value = asymptotics.estimate_auto(x, n)
    elif args.region == "r1":
        kind, value = "r1", asymptotics.estimate_R1(x, n).value
    elif args.region == "r2":
        kind, value = "r2", asymptotics.estimate_R2(x, n).value
    elif args.region == "osc":
        kind, value = "oscillatory", asymptotics.estimate_oscillatory(x.real, n)
    else:
        kind, value = "boundary", asymptotics.estimate_boundary(x, n)
    value = complex(value)
    _emit(
        {
            "n": n,
            "x": [_fmt(x.real), _fmt(x.imag)],
            "region": kind,
            "value": [_fmt(value.real), _fmt(value.imag)],
        },
        args.out,
    )
    return 0


def _cmd_phase_classify(args) -> int:
    label = phase_geometry.classify(args.x, tol=args.tol)
    _emit({"x": [_fmt(args.x.real), _fmt(args.x.imag)], "label": label.label}, args.out)
    return 0


def _cmd_phase_constants(args) -> int:
    xstar = phase_geometry.real_crossing(1e-9)
    theta = phase_geometry.circle_crossing(1e-8)
    _emit(
        {"x_star": _fmt(xstar), "theta_star_over_pi": _fmt(theta / math.pi)}, args.out
    )
    return 0


def _cmd_phase_boundary(args) -> int:
    curve = phase_geometry.trace_boundary(args.points, args.tol)
    _emit_csv(["theta", "re", "im", "residual"], curve.rows(), args.out)
    return 0


def _cmd_zeros_find(args) -> int:
    rs = zeros.roots(args.n, args.precision or _default_precision())
    if args.format == "csv":
        _emit_csv(
            ["re", "im", "residual"],
            [(r.real, r.imag, res) for r, res in zip(rs.roots, rs.residuals)],
            args.out,
        )
    else:
        _emit(
            {
                "n": rs.n,
                "precision_bits": rs.precision_bits,
                "roots": [[_fmt(r.real), _fmt(r.imag)] for r in rs.roots],
                "residuals": [_fmt(r) for r in rs.residuals],
                "converged": all(rs.converged),
            },
            args.out,
        )
    if not all(rs.converged):
        return 2
    return 0


def _cmd_zeros_predict(args) -> int:
    preds = zeros.predicted_interval_zeros(args.n)
    _emit({"n": args.n, "predicted": [_fmt(p) for p in preds]}, args.out)
    return 0


# ---------------------------------------------------------------------------
# verify suites


def _sample_factorization(seed: int, samples: int):
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        k = rng.randint(1, 5)
        h = rng.choice([hh for hh in range(k) if math.gcd(hh, k) == 1] or [0])
        if k == 1:
            h = 0
        n = rng.randint(1, 20)
        rad = 0.9 * math.sqrt(rng.random())
        ang = rng.uniform(0, 2 * math.pi)
        x = rad * cmath.exp(1j * ang)
        w = complex(rng.uniform(0.05, 1.0), rng.uniform(-1.0, 1.0))
        out.append((h, k, n, x, w))
    return out


def _cmd_verify(args) -> int:
    which = args.suite
    if which == "factorization":
        worst = 0.0
        for h, k, n, x, w in _sample_factorization(args.seed, args.samples):
            worst = max(worst, circle_method.factorization_residual(h, k, n, x, w))
        ok = worst < 1e-9
        _emit(
            {
                "suite": "factorization",
                "samples": args.samples,
                "seed": args.seed,
                "max_residual": _fmt(worst),
                "pass": ok,
            },
            args.out,
        )
        return 0 if ok else 2
    if which == "bounds":
        import random

        rng = random.Random(args.seed)
        min_g = min_a = min_b = min_o = math.inf
        for _ in range(args.samples):
            k = rng.randint(2, 8)
            h = rng.choice([hh for hh in range(1, k) if math.gcd(hh, k) == 1])
            n = rng.randint(0, 50)
            x = (0.05 + 0.85 * rng.random()) * cmath.exp(2j * math.pi * rng.random())
            w = complex(rng.uniform(0.05, 1.0), rng.uniform(-1.0, 1.0))
            min_g = min(min_g, circle_method.g_bound_margin(h, k, x, w))
            min_a = min(min_a, circle_method.a_difference_margin(h, k, x, w))
            min_b = min(min_b, circle_method.b_remainder_margin(k, x, w))
            min_o = min(min_o, circle_method.omega_bound_margin(h, k, n, x))
        ok = min(min_g, min_a, min_b, min_o) >= 0.0
        _emit(
            {
                "suite": "bounds",
                "samples": args.samples,
                "seed": args.seed,
                "min_g_margin": _fmt(min_g),
                "min_a_difference_margin": _fmt(min_a),
                "min_b_remainder_margin": _fmt(min_b),
                "min_omega_margin": _fmt(min_o),
                "pass": ok,
            },
            args.out,
        )
        return 0 if ok else 2
    if which == "dominance":
        import random

        rng = random.Random(args.seed)
        min_gap = math.inf
        for _ in range(args.samples):
            x = (0.02 + 0.93 * math.sqrt(rng.random())) * cmath.exp(
                2j * math.pi * rng.random()
            )
            top = max(phase_geometry.re_L(1, x), phase_geometry.re_L(2, x))
            worst = max(phase_geometry.re_L(k, x) for k in range(3, 51))
            min_gap = min(min_gap, top - worst)
        ok = min_gap > 0.0
        _emit(
            {
                "suite": "dominance",
                "samples": args.samples,
                "seed": args.seed,
                "min_gap": _fmt(min_gap),
                "pass": ok,
            },
            args.out,
        )
        return 0 if ok else 2
    if which == "saddle":
        rows = []
        ok = True
        for x in (0.5, -0.4):
            for n in (200, 1600):
                num = asymptotics.saddle_numeric(1, n, x)
                clo = asymptotics.saddle_closed(1, n, x)
                err = abs(num / clo - 1.0)
                bound = 5.0 * float(n) ** (-2.0 / 3.0)
                ok = ok and err <= bound
                rows.append(
                    {"x": _fmt(x), "n": n, "ratio_err": _fmt(err), "bound": _fmt(bound)}
                )
        _emit({"suite": "saddle", "cases": rows, "pass": ok}, args.out)
        return 0 if ok else 2
    # arcsum
    n, x, N = 20, 0.3, 3
    total = asymptotics.arc_sum(n, x, N)
    ref = asymptotics.cauchy_reference(x, n)
    rel = abs(total - ref) / abs(ref)
    ok = rel < 1e-6
    _emit(
        {
            "suite": "arcsum",
            "n": n,
            "x": _fmt(x),
            "farey_order": N,
            "rel_diff": _fmt(rel),
            "pass": ok,
        },
        args.out,
    )
    return 0 if ok else 2


def _grid_point(item):
    x, n = item
    try:
        label = phase_geometry.classify(x).label
    except phase_geometry.DominanceViolation:
        return (x.real, x.imag, "VIOLATION", "")
    try:
        kind, est = asymptotics.estimate_auto(x, n)
    except (RegionError, ValueError):
        return (x.real, x.imag, label, "")
    est = complex(est)
    if est == 0:
        return (x.real, x.imag, label, "")
    poly = exact_polynomials.plane_partition_polynomial(n)
    res = exact_polynomials.evaluate_adaptive(poly, x, rel_target=1e-6)
    rel = abs(complex(res.value) / est - 1.0)
    return (x.real, x.imag, label, _fmt(rel))


def _cmd_grid(args) -> int:
    # warm the coefficient cache once in the parent so workers reuse nothing big
    exact_polynomials.plane_partition_polynomial(args.n)
    pts = []
    res = args.resolution
    for i in range(res):
        for j in range(res):
            x = complex(-0.95 + 1.9 * i / (res - 1), -0.95 + 1.9 * j / (res - 1))
            if 0 < abs(x) <= 0.95:
                pts.append((x, args.n))
    rows = _pmap(_grid_point, pts, args.jobs)
    _emit_csv(["re", "im", "label", "rel_err"], rows, args.out)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ppasym",
        description="Plane partition polynomials: exact coefficients, phase "
        "geometry, and circle-method asymptotics.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    def add_out(sp):
        sp.add_argument("--out", help="write output to this file instead of stdout")

    sp = sub.add_parser(
        "coeffs",
        help="exact coefficients of Q_n (trace-counted plane partitions)",
        description="Exact big-integer coefficients pp_k(n) of Q_n(x), from "
        "the generating function prod_m (1 - x u^m)^(-m).",
    )
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    add_out(sp)
    sp.set_defaults(fn=_cmd_coeffs)

    sp = sub.add_parser(
        "eval",
        help="high-precision evaluation of Q_n(x)",
        description="Horner evaluation of Q_n at x on exact coefficients, "
        "with a rounding-error bound.",
    )
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--x", type=parse_complex, required=True)
    sp.add_argument("--precision", type=int, default=0, help="bits; 0 = adaptive")
    add_out(sp)
    sp.set_defaults(fn=_cmd_eval)

    sp = sub.add_parser(
        "asym",
        help="main-term asymptotic estimate of Q_n(x)",
        description="Main term (1-x)^(1/12) sqrt(L1/(6 pi n^(4/3))) "
        "exp((3/2) n^(2/3) L1) on R(1), the matching L2 form on R(2), the "
        "oscillatory cosine form on (x*, 0), and the two-term sum on the "
        "phase boundary.",
    )
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--x", type=parse_complex, required=True)
    sp.add_argument(
        "--region", choices=["auto", "r1", "r2", "osc", "boundary"], default="auto"
    )
    add_out(sp)
    sp.set_defaults(fn=_cmd_asym)

    sp = sub.add_parser("phase", help="phase classification and boundary")
    psub = sp.add_subparsers(dest="phase_cmd", required=True)
    spc = psub.add_parser(
        "classify",
        help="R1/R2/BOUNDARY label of x",
        description="Compares Re L1(x) and Re L2(x), auditing that no "
        "Re L_k with k >= 3 dominates.",
    )
    spc.add_argument("--x", type=parse_complex, required=True)
    spc.add_argument("--tol", type=float, default=1e-9)
    add_out(spc)
    spc.set_defaults(fn=_cmd_phase_classify)
    spb = psub.add_parser(
        "boundary",
        help="trace the level set Re L1 = Re L2",
        description="Radial bisection of Re L1 = Re L2 along rays; CSV of "
        "theta, re, im, residual.",
    )
    spb.add_argument("--points", type=int, default=64)
    spb.add_argument("--tol", type=float, default=1e-9)
    add_out(spb)
    spb.set_defaults(fn=_cmd_phase_boundary)
    spk = psub.add_parser(
        "constants",
        help="the real and circle boundary points x*, theta*",
        description="x*: the unique real solution of Re L1 = Re L2; theta*: "
        "the angle of the unit-circle crossing.",
    )
    add_out(spk)
    spk.set_defaults(fn=_cmd_phase_constants)

    sp = sub.add_parser("zeros", help="zeros of Q_n and oscillatory predictions")
    zsub = sp.add_subparsers(dest="zeros_cmd", required=True)
    spf = zsub.add_parser(
        "find",
        help="all roots of Q_n by simultaneous iteration",
        description="Aberth-Ehrlich iteration on the exact coefficients at "
        "configurable binary precision (root at 0 deflated exactly).",
    )
    spf.add_argument("--n", type=int, required=True)
    spf.add_argument("--precision", type=int, default=0, help="bits; 0 = default")
    spf.add_argument("--format", choices=["json", "csv"], default="json")
    add_out(spf)
    spf.set_defaults(fn=_cmd_zeros_find)
    spp = zsub.add_parser(
        "predict",
        help="predicted real zeros in (x*, 0)",
        description="Zeros of the oscillatory cosine factor "
        "cos((3 sqrt 3/4) 2^(1/3) n^(2/3) |Li3(x)|^(1/3) + pi/6).",
    )
    spp.add_argument("--n", type=int, required=True)
    add_out(spp)
    spp.set_defaults(fn=_cmd_zeros_predict)

    sp = sub.add_parser(
        "verify",
        help="numeric verification suites",
        description="factorization: P(x, e^(-w+2 pi i h/k)) = omega "
        "e^(2 pi i n h/k) e^Psi e^g residuals; bounds: margin checks of the "
        "g/A/B/omega inequalities; dominance: Re L_k < max(Re L1, Re L2); "
        "saddle: quadrature vs closed saddle form; arcsum: Farey dissection "
        "reassembly vs the Cauchy integral.",
    )
    sp.add_argument(
        "suite", choices=["factorization", "bounds", "dominance", "saddle", "arcsum"]
    )
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--jobs", type=int, default=1)
    add_out(sp)
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser(
        "grid",
        help="disk raster of phase labels and relative asymptotic error",
        description="CSV raster over the disk of the phase label and "
        "|Q_n/estimate - 1| under automatic region routing.",
    )
    sp.add_argument("--n", type=int, default=50)
    sp.add_argument("--resolution", type=int, default=21)
    sp.add_argument("--jobs", type=int, default=1)
    add_out(sp)
    sp.set_defaults(fn=_cmd_grid)

    return p


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # `zeros --n 5` is shorthand for `zeros find --n 5`
    if argv and argv[0] == "zeros" and (len(argv) == 1 or argv[1].startswith("-")):
        argv.insert(1, "find")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except RegionError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except (TruncationError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
