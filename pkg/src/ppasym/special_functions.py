"""Complex trilogarithm and the cube-root phase functions on the closed unit disk.

Everything here is direct power-series summation with a certified truncation
bound; no analytic continuation is attempted (none is needed on |x| <= 1).
All values are machine doubles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ZETA3",
    "SeriesTolerance",
    "TruncationError",
    "trilog",
    "L",
    "principal_cuberoot",
]

ZETA3 = 1.2020569031595943  # zeta(3) = Li3(1)

_CHUNK = 8192


@dataclass(frozen=True)
class SeriesTolerance:
    """Absolute truncation target and a hard cap on the number of terms."""

    abs_tol: float = 1e-12
    max_terms: int = 10_000_000

    def __post_init__(self) -> None:
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


DEFAULT_TOL = SeriesTolerance()


class TruncationError(ArithmeticError):
    """A series failed to reach its tolerance within the term budget."""

    def __init__(self, achieved_bound: float, requested: float, terms: int):
        super().__init__(
            f"series tail bound {achieved_bound:.3e} > requested {requested:.3e} "
            f"after {terms} terms"
        )
        self.achieved_bound = achieved_bound
        self.requested = requested
        self.terms = terms


def _trilog_tail(ax: float, n: int) -> float:
    # tail of sum x^m/m^3 beyond m = n: geometric bound off the circle,
    # integral (p-series) bound 1/(2n^2) on it
    p_tail = 1.0 / (2.0 * n * n)
    if ax < 1.0:
        geo = ax ** (n + 1) / ((n + 1) ** 3 * (1.0 - ax))
        return min(geo, p_tail)
    return p_tail


def trilog(x: complex, tol: SeriesTolerance = DEFAULT_TOL) -> complex:
    """Li3(x) = sum_{m>=1} x^m/m^3 for |x| <= 1, to within tol.abs_tol."""
    x = complex(x)
    ax = abs(x)
    if ax > 1.0 + 1e-12:
        raise ValueError(f"trilog requires |x| <= 1, got |x| = {ax!r}")
    if x == 0:
        return 0j
    total = 0j
    start = 1
    lead = x  # x**start, maintained multiplicatively
    bound = math.inf
    while start <= tol.max_terms:
        stop = min(start + _CHUNK - 1, tol.max_terms)
        offs = np.arange(0, stop - start + 1)
        powers = lead * np.power(x, offs)
        total += complex(np.sum(powers / (offs + start).astype(float) ** 3))
        bound = _trilog_tail(ax, stop)
        if bound <= tol.abs_tol:
            return total
        lead *= x ** (stop - start + 1)
        start = stop + 1
    raise TruncationError(bound, tol.abs_tol, tol.max_terms)


def principal_cuberoot(z: complex) -> complex:
    """The cube root w of z with arg w in (-pi/3, pi/3]."""
    z = complex(z)
    if z == 0:
        return 0j
    return abs(z) ** (1.0 / 3.0) * cmath.exp(1j * cmath.phase(z) / 3.0)


def int_pow(x: complex, k: int) -> complex:
    """x**k by repeated multiplication (exact integer exponent, no log)."""
    if k < 0:
        raise ValueError("negative exponent")
    out = 1 + 0j
    base = complex(x)
    while k:
        if k & 1:
            out *= base
        base *= base
        k >>= 1
    return out


def L(k: int, x: complex, tol: SeriesTolerance = DEFAULT_TOL) -> complex:
    """The k-th phase function (1/k) * (2 Li3(x^k))^(1/3), principal branch."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return principal_cuberoot(2.0 * trilog(int_pow(x, k), tol)) / k
