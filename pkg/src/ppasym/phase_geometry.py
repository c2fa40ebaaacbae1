"""Phase classification of the punctured disk and the level set Re L1 = Re L2.

The disk splits into two phases: R(1), where Re L1 dominates, and R(2),
inside the open left half plane, where Re L2 dominates.  Their common
boundary meets the real axis at x* ~ -0.8250030529 and the unit circle at
e^{+-i theta*} with theta*/pi ~ 0.9517031251.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .special_functions import DEFAULT_TOL, L, SeriesTolerance

__all__ = [
    "PhaseLabel",
    "BoundaryCurve",
    "DominanceViolation",
    "re_L",
    "classify",
    "real_crossing",
    "circle_crossing",
    "trace_boundary",
]

# on the unit circle the 1/(2N^2) tail governs, so keep the target modest
_CIRCLE_TOL = SeriesTolerance(abs_tol=1e-10, max_terms=10_000_000)
_DISK_TOL = SeriesTolerance(abs_tol=1e-13, max_terms=10_000_000)


@dataclass(frozen=True)
class PhaseLabel:
    label: str  # "R1" | "R2" | "BOUNDARY"
    tol: float

    def __str__(self) -> str:
        return self.label


class DominanceViolation(AssertionError):
    """Some Re L_k with k >= 3 reached the max of Re L1, Re L2 (should not
    happen anywhere in the punctured disk)."""


def re_L(k: int, x: complex, tol: SeriesTolerance | None = None) -> float:
    """Re L_k(x) for 0 < |x| <= 1."""
    x = complex(x)
    ax = abs(x)
    if not 0 < ax <= 1.0 + 1e-12:
        raise ValueError("re_L requires 0 < |x| <= 1")
    if tol is None:
        tol = _CIRCLE_TOL if ax > 0.999 else _DISK_TOL
    return L(k, x, tol).real


def classify(x: complex, k_max: int = 50, tol: float = 1e-9) -> PhaseLabel:
    """R1 / R2 / BOUNDARY by comparing Re L1 and Re L2, with a dominance
    audit over 3 <= k <= k_max."""
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    x = complex(x)
    r1, r2 = re_L(1, x), re_L(2, x)
    top = max(r1, r2)
    for k in range(3, k_max + 1):
        if re_L(k, x) >= top:
            raise DominanceViolation(
                f"Re L_{k}({x!r}) reached max(Re L1, Re L2) = {top!r}"
            )
    if r1 > r2 + tol:
        return PhaseLabel("R1", tol)
    if r2 > r1 + tol:
        return PhaseLabel("R2", tol)
    return PhaseLabel("BOUNDARY", tol)


def _bisect(f, a: float, b: float, xtol: float) -> float:
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise ValueError(f"no sign change on [{a}, {b}]: f(a)={fa}, f(b)={fb}")
    while b - a > xtol:
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


@lru_cache(maxsize=None)
def real_crossing(tol: float = 1e-9) -> float:
    """The unique real boundary point x* (negative), to within tol."""
    if tol < 1e-12:
        raise ValueError("tol must be at least 1e-12")

    def f(r: float) -> float:
        return re_L(1, -r) - re_L(2, -r)

    return -_bisect(f, 0.5, 0.99, tol)


@lru_cache(maxsize=None)
def circle_crossing(tol: float = 1e-8) -> float:
    """The boundary angle theta* in (0.9 pi, pi) on the unit circle."""
    if tol < 1e-10:
        raise ValueError("tol must be at least 1e-10")

    def f(theta: float) -> float:
        x = cmath.exp(1j * theta)
        return re_L(1, x) - re_L(2, x)

    return _bisect(f, 0.9 * math.pi, math.pi, tol)


@dataclass
class BoundaryCurve:
    points: list[complex]
    residuals: list[float]
    gaps: list[float] = field(default_factory=list)  # angles with no bracket

    def rows(self) -> list[tuple[float, float, float, float]]:
        """(theta, re, im, residual) rows, CSV-ready."""
        return [
            (cmath.phase(p), p.real, p.imag, r)
            for p, r in zip(self.points, self.residuals)
        ]


def trace_boundary(n_points: int, tol: float = 1e-9) -> BoundaryCurve:
    """Radial bisection of Re L1 = Re L2 along rays theta in (theta*, pi];
    the lower half plane is filled in by conjugation.  Rays without a sign
    change are recorded as gaps rather than raised."""
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    theta_star = circle_crossing(1e-8)
    upper: list[complex] = []
    residuals: list[float] = []
    gaps: list[float] = []
    for i in range(n_points):
        # open at theta*, closed at pi
        theta = math.pi - (math.pi - theta_star) * i / n_points
        def f(r: float) -> float:
            x = r * cmath.exp(1j * theta)
            return re_L(1, x) - re_L(2, x)
        try:
            r = _bisect(f, 0.05, 0.9999, 1e-12)
        except ValueError:
            gaps.append(theta)
            continue
        x = r * cmath.exp(1j * theta)
        upper.append(x)
        residuals.append(abs(f(r)))
    points = list(upper)
    res = list(residuals)
    for x, r in zip(upper, residuals):
        if abs(x.imag) > 1e-15:
            points.append(x.conjugate())
            res.append(r)
    order = sorted(range(len(points)), key=lambda i: cmath.phase(points[i]))
    return BoundaryCurve(
        points=[points[i] for i in order],
        residuals=[res[i] for i in order],
        gaps=gaps,
    )
