"""Main-term asymptotics of Q_n(x), saddle-point integrals, and quadrature
oracles (Cauchy contour reference and per-arc integrals of the dissection).

The dominant behavior is exp((3/2) n^{2/3} L_m(x)) with m = 1 on R(1) and
m = 2 on R(2); on (x*, 0) the two conjugate saddles combine into an
oscillatory real form, and on the phase boundary both phase terms are kept.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.integrate import quad

from . import circle_method, phase_geometry
from .special_functions import DEFAULT_TOL, ZETA3, L, SeriesTolerance, int_pow, trilog

__all__ = [
    "AsymptoticEstimate",
    "RegionError",
    "estimate_R1",
    "estimate_R2",
    "estimate_oscillatory",
    "estimate_boundary",
    "estimate_auto",
    "saddle_numeric",
    "saddle_closed",
    "cauchy_reference",
    "default_alpha",
    "arc_integral",
    "arc_sum",
    "minor_arc_report",
    "DELTA_MAX",
]

DELTA_MAX = math.pi / (2.0 * ZETA3) ** (1.0 / 3.0)
DEFAULT_DELTA = 0.5 * DELTA_MAX

ERROR_CLASS = "O(n^(-1/3))"


class RegionError(ValueError):
    """x is outside the validity region of the requested estimate."""

    def __init__(self, message: str, suggestion: str | None = None):
        if suggestion:
            message += f"; try {suggestion}"
        super().__init__(message)
        self.suggestion = suggestion


@dataclass(frozen=True)
class AsymptoticEstimate:
    value: complex
    exponent: complex  # (3/2) n^{2/3} L_m(x)
    m: int
    error_class: str = ERROR_CLASS


def _n23(n: int) -> float:
    return float(n) ** (2.0 / 3.0)


def _on_oscillatory_interval(x: complex) -> bool:
    if abs(complex(x).imag) > 1e-14:
        return False
    xr = complex(x).real
    return phase_geometry.real_crossing(1e-9) < xr < 0


def estimate_R1(x: complex, n: int) -> AsymptoticEstimate:
    """(1-x)^{1/12} sqrt(L1/(6 pi n^{4/3})) exp((3/2) n^{2/3} L1(x))."""
    x = complex(x)
    if n < 1:
        raise ValueError("n must be >= 1")
    if x == 0:
        raise RegionError("x = 0 is a degenerate edge of R(1)")
    label = phase_geometry.classify(x).label
    if label == "R2":
        raise RegionError("x lies in R(2)", "estimate_R2")
    if label == "BOUNDARY":
        raise RegionError("x lies on the phase boundary", "estimate_boundary")
    if _on_oscillatory_interval(x):
        raise RegionError(
            "x lies on the oscillatory interval (x*, 0)", "estimate_oscillatory"
        )
    L1 = L(1, x)
    expo = 1.5 * _n23(n) * L1
    pref = (1 - x) ** (1.0 / 12.0) * cmath.sqrt(L1 / (6.0 * math.pi * n ** (4.0 / 3.0)))
    return AsymptoticEstimate(value=pref * cmath.exp(expo), exponent=expo, m=1)


def estimate_R2(x: complex, n: int) -> AsymptoticEstimate:
    """(-1)^n (1-x^2)^{1/24} ((1-x)/(1+x))^{1/8} sqrt(L2/(6 pi n^{4/3}))
    exp((3/2) n^{2/3} L2(x))."""
    x = complex(x)
    if n < 1:
        raise ValueError("n must be >= 1")
    label = phase_geometry.classify(x).label
    if label == "R1":
        raise RegionError("x lies in R(1)", "estimate_R1")
    if label == "BOUNDARY":
        raise RegionError("x lies on the phase boundary", "estimate_boundary")
    L2 = L(2, x)
    expo = 1.5 * _n23(n) * L2
    pref = (
        (-1) ** (n & 1)
        * (1 - x * x) ** (1.0 / 24.0)
        * ((1 - x) / (1 + x)) ** 0.125
        * cmath.sqrt(L2 / (6.0 * math.pi * n ** (4.0 / 3.0)))
    )
    return AsymptoticEstimate(value=pref * cmath.exp(expo), exponent=expo, m=2)


def estimate_oscillatory(x: float, n: int) -> float:
    """The real oscillatory main term on (x*, 0): exponential amplitude in
    |Li3(x)|^{1/3} times cos((3 sqrt 3/4) 2^{1/3} n^{2/3} |Li3(x)|^{1/3} + pi/6)."""
    x = complex(x)
    if n < 1:
        raise ValueError("n must be >= 1")
    if not _on_oscillatory_interval(x):
        raise RegionError("x must lie on the real interval (x*, 0)")
    xr = x.real
    t = abs(trilog(xr)) ** (1.0 / 3.0)
    cbrt2 = 2.0 ** (1.0 / 3.0)
    amp = (
        2.0 ** (7.0 / 6.0)
        * (1.0 - xr) ** (1.0 / 12.0)
        / math.sqrt(6.0 * math.pi * n ** (4.0 / 3.0))
        * abs(trilog(xr)) ** (1.0 / 6.0)
        * math.exp(0.75 * cbrt2 * _n23(n) * t)
    )
    return amp * math.cos(0.75 * math.sqrt(3.0) * cbrt2 * _n23(n) * t + math.pi / 6.0)


def estimate_boundary(x: complex, n: int) -> complex:
    """Two-term estimate on the level set Re L1 = Re L2 (x != x*): the sum of
    the R(1)-form and R(2)-form main terms."""
    x = complex(x)
    if n < 1:
        raise ValueError("n must be >= 1")
    L1, L2 = L(1, x), L(2, x)
    t1 = (
        (1 - x) ** (1.0 / 12.0)
        * cmath.sqrt(L1 / (6.0 * math.pi * n ** (4.0 / 3.0)))
        * cmath.exp(1.5 * _n23(n) * L1)
    )
    if abs(x.imag) < 1e-13 and x.real < 0:
        t1 = t1 + t1.conjugate()  # conjugate m = 1 saddle pair on the real axis
    t2 = (
        (-1) ** (n & 1)
        * (1 - x * x) ** (1.0 / 24.0)
        * ((1 - x) / (1 + x)) ** 0.125
        * cmath.sqrt(L2 / (6.0 * math.pi * n ** (4.0 / 3.0)))
        * cmath.exp(1.5 * _n23(n) * L2)
    )
    return t1 + t2


def estimate_auto(x: complex, n: int):
    """Route x to the right estimate: oscillatory on (x*, 0), two-term on the
    boundary, single phase term otherwise.  Returns (kind, value)."""
    x = complex(x)
    if _on_oscillatory_interval(x):
        return "oscillatory", estimate_oscillatory(x.real, n)
    label = phase_geometry.classify(x).label
    if label == "BOUNDARY":
        return "boundary", estimate_boundary(x, n)
    if label == "R1":
        return "r1", estimate_R1(x, n).value
    return "r2", estimate_R2(x, n).value


# ---------------------------------------------------------------------------
# Saddle-point integrals


def _quad_complex(f, a: float, b: float, points=None, epsabs=1e-13, epsrel=1e-11):
    kw = dict(limit=400, epsabs=epsabs, epsrel=epsrel)
    if points:
        kw["points"] = points
    re, _ = quad(lambda t: f(t).real, a, b, **kw)
    im, _ = quad(lambda t: f(t).imag, a, b, **kw)
    return re + 1j * im


def saddle_numeric(m: int, n: int, x: complex, delta: float | None = None) -> complex:
    """Adaptive quadrature of the rescaled major-arc integral

        (1/(2 pi)) int_{-pi/(m delta)}^{pi/(m delta)}
            exp[n^{2/3} (L_m^3/(2 (Re L_m - iz)^2) + (Re L_m - iz))] dz,

    i.e. n^{1/3} times the arc integral in the offset variable v (the full
    arc contribution carries one more factor n^{-1/3}).  The integrand peaks
    at z = -Im L_m (both of +-Im L_m when x^m < 0)."""
    if m not in (1, 2):
        raise ValueError("m must be 1 or 2")
    if delta is None:
        delta = DEFAULT_DELTA
    if not 0 < delta < DELTA_MAX:
        raise ValueError(f"delta must lie in (0, {DELTA_MAX})")
    Lm = L(m, x)
    if Lm == 0:
        raise ValueError("L_m(x) = 0 is degenerate")
    reL = Lm.real
    scale = _n23(n)
    lim = math.pi / (m * delta)
    peak = 1.5 * reL

    def f(z: float) -> complex:
        d = reL - 1j * z
        return cmath.exp(scale * (Lm**3 / (2.0 * d * d) + d - peak))

    pts = sorted({p for p in (-Lm.imag, Lm.imag) if -lim < p < lim})
    val = _quad_complex(f, -lim, lim, points=pts)
    return val * cmath.exp(scale * peak) / (2.0 * math.pi)


def saddle_closed(m: int, n: int, x: complex) -> complex:
    """Closed saddle-point form: sqrt(L_m/3)/sqrt(2 pi n^{2/3})
    exp((3/2) n^{2/3} L_m); when x^m < 0 the two conjugate saddles add."""
    if m not in (1, 2):
        raise ValueError("m must be 1 or 2")
    x = complex(x)
    Lm = L(m, x)
    if Lm == 0:
        raise ValueError("x = 0 is degenerate")
    term = (
        cmath.sqrt(Lm / 3.0)
        / math.sqrt(2.0 * math.pi * _n23(n))
        * cmath.exp(1.5 * _n23(n) * Lm)
    )
    xm = int_pow(x, m)
    if abs(xm.imag) < 1e-13 and xm.real < 0:
        return term + term.conjugate()
    return term


# ---------------------------------------------------------------------------
# Contour quadrature oracles


def default_alpha(x: complex, n: int, m: int | None = None) -> float:
    """alpha = Re L_m(x) / (2 pi n^{1/3}); m picked by phase when omitted."""
    if m is None:
        m = 2 if phase_geometry.classify(complex(x)).label == "R2" else 1
    return phase_geometry.re_L(m, x) / (2.0 * math.pi * n ** (1.0 / 3.0))


def cauchy_reference(
    x: complex,
    n: int,
    alpha: float | None = None,
    M_points: int | None = None,
    tol: SeriesTolerance = circle_method.SERIES_TOL,
) -> complex:
    """Trapezoid discretization of the Cauchy coefficient integral for Q_n(x)
    on the circle |u| = e^{-2 pi alpha}; exponentially convergent in M."""
    x = complex(x)
    if abs(x) >= 1.0:
        raise ValueError("cauchy_reference requires |x| < 1")
    if alpha is None:
        alpha = default_alpha(x, max(n, 1))
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if M_points is None:
        M_points = max(16 * n, 64)
    if M_points < max(4 * n, 4):
        raise ValueError("M_points must be at least 4n")
    r = math.exp(-2.0 * math.pi * alpha)
    total = 0j
    for j in range(M_points):
        u = r * cmath.exp(2j * math.pi * j / M_points)
        total += cmath.exp(
            circle_method.log_gen_fn(x, u, tol) - 2j * math.pi * j * n / M_points
        )
    return total / M_points * r ** (-n)


def arc_integral(
    arc: circle_method.FareyArc,
    n: int,
    x: complex,
    alpha: float,
    tol: SeriesTolerance = circle_method.SERIES_TOL,
) -> complex:
    """I_{h,k,n}(x): quadrature over the arc's mediant interval of
    exp(Psi + g + 2 pi n (alpha - iv)) in the offset variable v."""
    h, k = arc.h, arc.k
    lo = float(arc.arc_left - Fraction(h, k))
    hi = float(arc.arc_right - Fraction(h, k))
    base = 2.0 * math.pi * n * alpha

    def f(v: float) -> complex:
        w = 2.0 * math.pi * (alpha - 1j * v)
        return cmath.exp(
            circle_method.psi(k, x, w, tol)
            + circle_method.g(h, k, x, w, tol)
            + base
            - 2j * math.pi * n * v
        )

    return _quad_complex(f, lo, hi, epsabs=1e-12 * math.exp(base), epsrel=1e-10)


def arc_sum(
    n: int,
    x: complex,
    N: int,
    alpha: float | None = None,
    tol: SeriesTolerance = circle_method.SERIES_TOL,
) -> complex:
    """Reassemble Q_n(x) as sum over F_N of omega_{h,k,n} I_{h,k,n}; exact up
    to series and quadrature error for any alpha > 0 and any N."""
    if alpha is None:
        alpha = default_alpha(x, n)
    total = 0j
    for arc in circle_method.farey(N):
        total += circle_method.omega(arc.h, arc.k, n, x, tol) * arc_integral(
            arc, n, x, alpha, tol
        )
    return total


def minor_arc_report(
    n: int,
    x: complex,
    N: int,
    alpha: float | None = None,
    m: int = 1,
) -> dict:
    """Per-arc |omega I| magnitudes and the minor/major ratio relative to the
    k = m arc at h = 1 (h = 0 when m = 1)."""
    if alpha is None:
        alpha = default_alpha(x, n, m=m)
    rows = []
    for arc in circle_method.farey(N):
        contrib = circle_method.omega(arc.h, arc.k, n, x) * arc_integral(
            arc, n, x, alpha
        )
        rows.append({"h": arc.h, "k": arc.k, "abs": abs(contrib)})
    major = [r for r in rows if r["k"] == m]
    minor = [r for r in rows if r["k"] != m]
    dominant = max(major, key=lambda r: r["abs"])
    minor_total = sum(r["abs"] for r in minor)
    return {
        "arcs": rows,
        "dominant": dominant,
        "minor_total": minor_total,
        "ratio": minor_total / dominant["abs"],
    }
