"""Decomposition of the generating function P(x, e^{-w + 2 pi i h/k}).

Implements the A/B series, Psi, omega, g, the Farey dissection, and numeric
margin checks for the analytic bounds used to control the minor arcs.  Two
printed-formula corrections are baked in (both forced by the factorization
identity, which the residual test certifies):

  * Psi uses Li3(x^k) / (k^3 w^2);
  * ln omega carries + A_{h,k}(x, 0).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .special_functions import (
    DEFAULT_TOL,
    ZETA3,
    SeriesTolerance,
    TruncationError,
    int_pow,
    trilog,
)

__all__ = [
    "FareyArc",
    "FactorizationParts",
    "farey",
    "log_gen_fn",
    "A_series",
    "B_series",
    "psi",
    "omega",
    "log_omega",
    "g",
    "factorization_parts",
    "factorization_residual",
    "g_bound_margin",
    "a_difference_margin",
    "b_remainder_margin",
    "omega_bound_margin",
    "calibrate_M",
]

SERIES_TOL = SeriesTolerance(abs_tol=1e-14, max_terms=10_000_000)


# ---------------------------------------------------------------------------
# Farey dissection


@dataclass(frozen=True)
class FareyArc:
    """A reduced fraction h/k of F_N with its mediant-bounded arc."""

    h: int
    k: int
    left_neighbor: tuple[int, int]   # h'/k'
    right_neighbor: tuple[int, int]  # h''/k''
    arc_left: Fraction
    arc_right: Fraction

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.h, self.k)


def farey(N: int) -> list[FareyArc]:
    """All reduced h/k with k <= N in [0, 1), in increasing order, with
    mediant arc bounds; neighbors wrap around the circle at 0/1."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    # standard next-term recurrence, starting at 0/1, stopping before 1/1
    fracs = [(0, 1)]
    a, b, c, d = 0, 1, 1, N
    while (c, d) != (1, 1):
        fracs.append((c, d))
        p = (N + b) // d
        a, b, c, d = c, d, p * c - a, p * d - b
    arcs = []
    m = len(fracs)
    for i, (h, k) in enumerate(fracs):
        if i == 0:
            hl, kl = fracs[-1]
            hl -= kl  # wrap: predecessor of 0/1 is the last fraction minus 1
        else:
            hl, kl = fracs[i - 1]
        if i == m - 1:
            hr, kr = fracs[0]
            hr += kr  # wrap: successor of the last fraction is 1/1
        else:
            hr, kr = fracs[i + 1]
        if h * kl - hl * k != 1 or hr * k - h * kr != 1:
            raise AssertionError("Farey neighbor identity violated")
        arcs.append(
            FareyArc(
                h=h,
                k=k,
                left_neighbor=(hl, kl),
                right_neighbor=(hr, kr),
                arc_left=Fraction(h + hl, k + kl),
                arc_right=Fraction(h + hr, k + kr),
            )
        )
    return arcs


# ---------------------------------------------------------------------------
# Series


def log_gen_fn(x: complex, u: complex, tol: SeriesTolerance = SERIES_TOL) -> complex:
    """ln P(x, u) = sum_l (x^l / l) u^l / (1 - u^l)^2 for |x| < 1, |u| < 1."""
    x, u = complex(x), complex(u)
    ax, au = abs(x), abs(u)
    if ax >= 1.0 or au >= 1.0:
        raise ValueError("log_gen_fn requires |x| < 1 and |u| < 1")
    if x == 0 or u == 0:
        return 0j
    total = 0j
    xu = ax * au
    xl, ul = 1 + 0j, 1 + 0j
    for ell in range(1, tol.max_terms + 1):
        xl *= x
        ul *= u
        total += (xl / ell) * ul / (1 - ul) ** 2
        denom = 1.0 - au**ell
        tail = xu ** (ell + 1) / ((ell + 1) * denom * denom * (1.0 - xu))
        if tail <= tol.abs_tol:
            return total
    raise TruncationError(tail, tol.abs_tol, tol.max_terms)


def _roots_of_unity(k: int) -> list[complex]:
    return [cmath.exp(2j * math.pi * m / k) for m in range(k)]


def A_series(
    h: int, k: int, x: complex, w: complex, tol: SeriesTolerance = SERIES_TOL
) -> complex:
    """A_{h,k}(x, w): the l-series over k-nondivisible l; w = 0 uses the
    closed csc^2 form.  Identically zero when k = 1."""
    if k < 1 or gcd(h, k) != 1:
        raise ValueError("need k >= 1 and gcd(h, k) = 1")
    if k == 1:
        return 0j
    x, w = complex(x), complex(w)
    ax = abs(x)
    if ax >= 1.0:
        raise ValueError("A_series requires |x| < 1")
    if w != 0 and w.real <= 0:
        raise ValueError("A_series requires Re w > 0 (or w = 0 exactly)")
    if x == 0:
        return 0j
    roots = _roots_of_unity(k)
    at_zero = w == 0
    total = 0j
    xl = 1 + 0j
    rw = w.real
    q_ratio = ax * math.exp(-rw)
    for ell in range(1, tol.max_terms + 1):
        xl *= x
        if ell % k == 0:
            continue
        if at_zero:
            s = math.sin(math.pi * ((ell * h) % k) / k)
            total += -0.25 * (xl / ell) / (s * s)
        else:
            q = cmath.exp(-ell * w) * roots[(ell * h) % k]
            total += (xl / ell) * q / (1 - q) ** 2
        # tail envelope: csc^2 <= k^2/4 when the angle is exact (Im w = 0),
        # else |1 - q| >= 1 - e^{-l Re w}
        if at_zero or w.imag == 0:
            cap = 0.25 * k * k
        else:
            d = 1.0 - math.exp(-(ell + 1) * rw)
            cap = 1.0 / (d * d) if d > 0 else math.inf
        tail = cap * q_ratio ** (ell + 1) / ((ell + 1) * (1.0 - q_ratio))
        if tail <= tol.abs_tol:
            return total
    raise TruncationError(tail, tol.abs_tol, tol.max_terms)


def B_series(k: int, x: complex, w: complex, tol: SeriesTolerance = SERIES_TOL) -> complex:
    """B_{h,k}(x, w) = sum_l x^{kl}/(kl) e^{-lkw}/(1 - e^{-lkw})^2, Re w > 0."""
    x, w = complex(x), complex(w)
    if abs(x) >= 1.0:
        raise ValueError("B_series requires |x| < 1")
    if x == 0:
        return 0j
    if w.real <= 0:
        raise ValueError("B_series requires Re w > 0")
    xk = int_pow(x, k)
    ratio = abs(xk) * math.exp(-k * w.real)
    xl = 1 + 0j
    total = 0j
    for ell in range(1, tol.max_terms + 1):
        xl *= xk
        q = cmath.exp(-ell * k * w)
        total += xl / (k * ell) * q / (1 - q) ** 2
        d = 1.0 - math.exp(-(ell + 1) * k * w.real)
        tail = ratio ** (ell + 1) / (k * (ell + 1) * d * d * (1.0 - ratio))
        if tail <= tol.abs_tol:
            return total
    raise TruncationError(tail, tol.abs_tol, tol.max_terms)


def psi(k: int, x: complex, w: complex, tol: SeriesTolerance = SERIES_TOL) -> complex:
    """Psi_{h,k}(x, w) = Li3(x^k) / (k^3 w^2)."""
    w = complex(w)
    if w == 0:
        raise ZeroDivisionError("psi is singular at w = 0")
    return trilog(int_pow(complex(x), k), tol) / (k**3 * w * w)


def log_omega(h: int, k: int, n: int, x: complex, tol: SeriesTolerance = SERIES_TOL) -> complex:
    """ln omega_{h,k,n}(x) with the principal logarithm."""
    x = complex(x)
    if abs(x) >= 1.0:
        raise ValueError("log_omega requires |x| < 1")
    if k == 1:
        return cmath.log(1 - x) / 12.0
    if gcd(h, k) != 1:
        raise ValueError("need gcd(h, k) = 1")
    xk = int_pow(x, k)
    return (
        cmath.log(1 - xk) / (12.0 * k)
        + A_series(h, k, x, 0.0, tol)
        - 2j * math.pi * n * h / k
    )


def omega(h: int, k: int, n: int, x: complex, tol: SeriesTolerance = SERIES_TOL) -> complex:
    """omega_{h,k,n}(x) = exp(ln omega); (1-x)^{1/12} when k = 1."""
    return cmath.exp(log_omega(h, k, n, x, tol))


# ---------------------------------------------------------------------------
# The Bernoulli-stabilized bracket e^{-z}/(1-e^{-z})^2 - 1/z^2 + 1/12

_BERNOULLI = {
    4: Fraction(-1, 30),
    6: Fraction(1, 42),
    8: Fraction(-1, 30),
    10: Fraction(5, 66),
    12: Fraction(-691, 2730),
    14: Fraction(7, 6),
    16: Fraction(-3617, 510),
    18: Fraction(43867, 798),
    20: Fraction(-174611, 330),
    22: Fraction(854513, 138),
    24: Fraction(-236364091, 2730),
    26: Fraction(8553103, 6),
    28: Fraction(-23749461029, 870),
    30: Fraction(8615841276005, 14322),
}

# coefficient of z^{2m-2} is -B_{2m} (2m-1) / (2m)!
_BRACKET_TAYLOR = [
    -float(_BERNOULLI[m] * (m - 1)) / math.factorial(m)
    for m in sorted(_BERNOULLI)
]


def _bracket_term(z: complex) -> complex:
    """e^{-z}/(1-e^{-z})^2 - 1/z^2 + 1/12, stable near z = 0 (limit z^2/240)."""
    z = complex(z)
    if abs(z) < 1.0:
        z2 = z * z
        acc = 0j
        for c in reversed(_BRACKET_TAYLOR):
            acc = acc * z2 + c
        return acc * z2
    q = cmath.exp(-z)
    return q / (1 - q) ** 2 - 1.0 / (z * z) + 1.0 / 12.0


def b_remainder_series(
    k: int, x: complex, w: complex, tol: SeriesTolerance = SERIES_TOL
) -> complex:
    """B_{h,k} - Psi_{h,k} - (1/(12k)) Ln(1 - x^k), summed as a single series

        sum_l x^{kl}/(kl) * [e^{-klw}/(1-e^{-klw})^2 - 1/(klw)^2 + 1/12],

    which is finite as w -> 0 (the would-be cancellation is done per term).
    """
    x, w = complex(x), complex(w)
    if abs(x) >= 1.0:
        raise ValueError("requires |x| < 1")
    if x == 0:
        return 0j
    if w.real <= 0:
        raise ValueError("requires Re w > 0")
    xk = int_pow(x, k)
    s = abs(xk)
    m_cal = calibrate_M()
    d = 1.0 - math.exp(-math.pi * w.real / abs(w))
    big_cap = 2.0 / d**3 + 1.0
    ell0 = math.pi / (k * abs(w))  # beyond this |klw| > pi
    total = 0j
    xl = 1 + 0j
    for ell in range(1, tol.max_terms + 1):
        xl *= xk
        total += xl / (k * ell) * _bracket_term(k * ell * w)
        # tail: M|klw|^2 envelope while |klw| <= pi, constant cap beyond;
        # sum_{l>=L} l s^l = s^L (L/(1-s) + s/(1-s)^2)
        lnxt = ell + 1
        small = (
            m_cal
            * k
            * abs(w) ** 2
            * s**lnxt
            * (lnxt / (1.0 - s) + s / (1.0 - s) ** 2)
        )
        lbig = max(lnxt, int(ell0) + 1)
        big = big_cap * s**lbig / (k * lbig * (1.0 - s))
        tail = (small if lnxt <= ell0 else 0.0) + big
        if tail <= tol.abs_tol:
            return total
    raise TruncationError(tail, tol.abs_tol, tol.max_terms)


def g(h: int, k: int, x: complex, w: complex, tol: SeriesTolerance = SERIES_TOL) -> complex:
    """g_{h,k}(x, w); each bracket summed from its own converged series."""
    if k < 1 or gcd(h, k) != 1:
        raise ValueError("need k >= 1 and gcd(h, k) = 1")
    x = complex(x)
    if x == 0:
        return 0j
    rem = b_remainder_series(k, x, w, tol)
    if k == 1:
        return rem
    return (A_series(h, k, x, w, tol) - A_series(h, k, x, 0.0, tol)) + rem


# ---------------------------------------------------------------------------
# Factorization identity


@dataclass(frozen=True)
class FactorizationParts:
    A0: complex
    psi: complex
    log_omega: complex
    g: complex


def factorization_parts(
    h: int, k: int, n: int, x: complex, w: complex, tol: SeriesTolerance = SERIES_TOL
) -> FactorizationParts:
    return FactorizationParts(
        A0=A_series(h, k, x, 0.0, tol) if k >= 2 else 0j,
        psi=psi(k, x, w, tol),
        log_omega=log_omega(h, k, n, x, tol),
        g=g(h, k, x, w, tol),
    )


def factorization_residual(
    h: int, k: int, n: int, x: complex, w: complex, tol: SeriesTolerance = SERIES_TOL
) -> float:
    """| ln P(x, e^{-w+2pi i h/k}) - (ln omega + 2 pi i n h/k + Psi + g) |,
    imaginary part compared modulo 2 pi (independent logs may differ in sheet)."""
    u = cmath.exp(-complex(w) + 2j * math.pi * h / k)
    lhs = log_gen_fn(x, u, tol)
    parts = factorization_parts(h, k, n, x, w, tol)
    rhs = parts.log_omega + 2j * math.pi * n * h / k + parts.psi + parts.g
    diff = lhs - rhs
    im = (diff.imag + math.pi) % (2 * math.pi) - math.pi
    return math.hypot(diff.real, im)


# ---------------------------------------------------------------------------
# Bound margins


@lru_cache(maxsize=1)
def calibrate_M(grid: int = 100) -> float:
    """Numeric stand-in for the existence constant in the B-series remainder
    bound: 1.05 * max over |z| <= pi of |bracket(z)| / |z|^2 on a grid
    (the limit at 0 is 1/240)."""
    best = 1.0 / 240.0
    for i in range(1, grid + 1):
        r = math.pi * i / grid
        for jj in range(grid):
            t = 2 * math.pi * jj / grid
            z = r * cmath.exp(1j * t)
            best = max(best, abs(_bracket_term(z)) / (r * r))
    return 1.05 * best


def _bound_rhs(k: int, x: complex, w: complex, M: float) -> float:
    """Right-hand side of the |g| bound; the A-difference piece drops its
    angle-dependent term when w is real."""
    ax, aw = abs(x), abs(w)
    rw = w.real
    first = 2.0 * aw / (1.0 - ax) * k**3
    if w.imag != 0:
        first += (
            2.0
            * aw
            / (1.0 - ax)
            * ax ** (math.pi / (k * abs(w.imag)))
            / (1.0 - math.exp(-math.pi * rw / (k * abs(w.imag))))
        )
    d = 1.0 - math.exp(-rw * math.pi / aw)
    second = (M * aw**2 * k + (2.0 / d**3 + 1.0) * ax ** (math.pi / aw)) / (1.0 - ax) ** 2
    return first + second


def g_bound_margin(h: int, k: int, x: complex, w: complex, M: float | None = None) -> float:
    """RHS of the g bound minus |g_{h,k}(x, w)|; nonnegative = bound verified."""
    x, w = complex(x), complex(w)
    if not (0 < abs(x) < 1) or w.real <= 0:
        raise ValueError("need 0 < |x| < 1 and Re w > 0")
    if M is None:
        M = calibrate_M()
    return _bound_rhs(k, x, w, M) - abs(g(h, k, x, w))


def a_difference_margin(h: int, k: int, x: complex, w: complex) -> float:
    """Margin of the mean-value bound on |A(x,w) - A(x,0)| for k >= 2."""
    x, w = complex(x), complex(w)
    if k < 2 or w.real <= 0:
        raise ValueError("need k >= 2 and Re w > 0")
    ax, rw = abs(x), w.real
    rhs = 2.0 * abs(w) / (1.0 - ax) * k**3
    if w.imag != 0:
        rhs += (
            2.0
            * abs(w)
            / (1.0 - ax)
            * ax ** (math.pi / (k * abs(w.imag)))
            / (1.0 - math.exp(-math.pi * rw / (k * abs(w.imag))))
        )
    lhs = abs(A_series(h, k, x, w) - A_series(h, k, x, 0.0))
    return rhs - lhs


def b_remainder_margin(k: int, x: complex, w: complex, M: float | None = None) -> float:
    """Margin of the B-series remainder bound with the calibrated M."""
    x, w = complex(x), complex(w)
    if not (0 < abs(x) < 1) or w.real <= 0:
        raise ValueError("need 0 < |x| < 1 and Re w > 0")
    if M is None:
        M = calibrate_M()
    ax, aw = abs(x), abs(w)
    d = 1.0 - math.exp(-w.real * math.pi / aw)
    rhs = (M * aw**2 * k + (2.0 / d**3 + 1.0) * ax ** (math.pi / aw)) / (1.0 - ax) ** 2
    return rhs - abs(b_remainder_series(k, x, w))


def omega_bound_margin(h: int, k: int, n: int, x: complex) -> float:
    """Margin of |omega_{h,k,n}(x)| <= 2^(1/12) exp((k^2/16)(zeta(3) - ln(1-|x|)))."""
    ax = abs(complex(x))
    rhs = 2 ** (1.0 / 12.0) * math.exp(k * k / 16.0 * (ZETA3 - math.log(1.0 - ax)))
    return rhs - abs(omega(h, k, n, x))
