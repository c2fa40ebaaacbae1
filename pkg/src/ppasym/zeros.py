"""High-precision zeros of Q_n(x) and matching against the oscillatory
prediction on (x*, 0).

Root finding is simultaneous (Aberth-Ehrlich) iteration at configurable
binary precision, working directly on the exact coefficients after deflating
the root at 0 and normalizing by the largest coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from mpmath import mp, mpc, mpf

from .exact_polynomials import PlanePartitionPolynomial, plane_partition_polynomial
from .phase_geometry import real_crossing
from .special_functions import trilog

__all__ = [
    "RootSet",
    "MatchReport",
    "roots",
    "predicted_interval_zeros",
    "match_zeros",
]

_MAX_ITER = 400


@dataclass(frozen=True)
class RootSet:
    n: int
    roots: tuple[complex, ...]       # includes the exact root at 0 (n >= 1)
    residuals: tuple[float, ...]     # Newton-step size |Q/Q'| per root
    precision_bits: int
    converged: tuple[bool, ...]


def _horner_pair(coeffs, z):
    # value and derivative of sum coeffs[i] z^i (coeffs ascending)
    p = mp.mpc(0)
    dp = mp.mpc(0)
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def roots(n: int, precision_bits: int = 256) -> RootSet:
    """All n roots of Q_n (0 included) by Aberth-Ehrlich iteration."""
    if not 1 <= n <= 400:
        raise ValueError("roots is desk-scale: 1 <= n <= 400")
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    poly = plane_partition_polynomial(n)
    if n == 1:
        return RootSet(1, (0j,), (0.0,), precision_bits, (True,))
    d = n - 1
    step_tol = mpf(2) ** (-(precision_bits // 2))
    with mp.workprec(precision_bits + 32):
        scale = max(poly.coeffs)
        coeffs = [mpf(c) / scale for c in poly.coeffs[1:]]  # deflated, degree d
        # product of the nonzero roots is +-pp_1(n); start on its geometric mean
        radius = mp.power(mpf(poly.coeffs[1]), mpf(1) / d)
        z = [
            radius * mp.expjpi(2 * (j + mpf("0.3")) / d + mpf("0.15") / d)
            for j in range(d)
        ]
        converged = [False] * d
        for _ in range(_MAX_ITER):
            max_step = mpf(0)
            for i in range(d):
                p, dp = _horner_pair(coeffs, z[i])
                s = mp.mpc(0)
                for j in range(d):
                    if j != i:
                        s += 1 / (z[i] - z[j])
                denom = dp - p * s
                if denom == 0:
                    continue
                delta = p / denom
                z[i] -= delta
                if abs(delta) > max_step:
                    max_step = abs(delta)
            if max_step < step_tol:
                converged = [True] * d
                break
        residuals = []
        for zi in z:
            p, dp = _horner_pair(coeffs, zi)
            residuals.append(float(abs(p) / max(abs(dp), mpf("1e-30"))))
        out = sorted(
            zip(z, residuals, converged),
            key=lambda t: (float(t[0].real), float(t[0].imag)),
        )
    return RootSet(
        n=n,
        roots=(0j,) + tuple(complex(t[0]) for t in out),
        residuals=(0.0,) + tuple(t[1] for t in out),
        precision_bits=precision_bits,
        converged=(True,) + tuple(t[2] for t in out),
    )


def predicted_interval_zeros(n: int) -> list[float]:
    """Zeros of the oscillatory main term in (x*, 0): solutions of

        (3 sqrt 3/4) 2^{1/3} n^{2/3} |Li3(x)|^{1/3} + pi/6 = pi/2 + j pi,

    solved by bisection on the monotone map x -> |Li3(x)|."""
    if n < 1:
        raise ValueError("n must be >= 1")
    xstar = real_crossing(1e-9)
    t_max = abs(trilog(xstar))
    c = 0.75 * math.sqrt(3.0) * 2.0 ** (1.0 / 3.0) * float(n) ** (2.0 / 3.0)
    out = []
    j = 0
    while True:
        target = ((math.pi / 2.0 + j * math.pi - math.pi / 6.0) / c) ** 3
        if target >= t_max:
            break
        lo, hi = xstar, 0.0  # |Li3| decreases from t_max to 0 on (x*, 0)
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if abs(trilog(mid)) > target:
                lo = mid
            else:
                hi = mid
        out.append(0.5 * (lo + hi))
        j += 1
    return sorted(out)


@dataclass
class MatchReport:
    pairs: list[tuple[float, float]] = field(default_factory=list)
    distances: list[float] = field(default_factory=list)
    unmatched_actual: list[float] = field(default_factory=list)
    unmatched_predicted: list[float] = field(default_factory=list)

    @property
    def mean_distance(self) -> float:
        return sum(self.distances) / len(self.distances) if self.distances else 0.0

    @property
    def max_distance(self) -> float:
        return max(self.distances) if self.distances else 0.0

    @property
    def cardinality_mismatch(self) -> bool:
        return bool(self.unmatched_actual or self.unmatched_predicted)


def match_zeros(
    actual: RootSet,
    predicted: list[float],
    tol: float = 5e-2,
    eps: float = 1e-3,
    imag_tol: float = 1e-9,
) -> MatchReport:
    """Greedy nearest pairing of the real roots of Q_n inside
    (x* + eps, -eps) with the predicted zeros; mismatches are reported,
    never fatal."""
    xstar = real_crossing(1e-9)
    reals = sorted(
        r.real
        for r in actual.roots
        if abs(r.imag) <= imag_tol and xstar + eps < r.real < -eps
    )
    preds = sorted(p for p in predicted if xstar + eps < p < -eps)
    report = MatchReport()
    remaining_a = list(reals)
    remaining_p = list(preds)
    while remaining_a and remaining_p:
        best = min(
            ((abs(a - p), a, p) for a in remaining_a for p in remaining_p),
            key=lambda t: t[0],
        )
        dist, a, p = best
        if dist > tol:
            break
        report.pairs.append((a, p))
        report.distances.append(dist)
        remaining_a.remove(a)
        remaining_p.remove(p)
    report.unmatched_actual = remaining_a
    report.unmatched_predicted = remaining_p
    return report
