"""Exact plane partition polynomials Q_n(x) and high-precision evaluation.

Coefficient vectors are computed with the logarithmic-derivative recurrence

    n Q_n(x) = sum_{j=1}^{n} a_j(x) Q_{n-j}(x),    a_j(x) = sum_{d | j} (j/d)^2 x^d,

with every polynomial packed into a single big integer (one fixed-width slot
per coefficient) so that polynomial convolution becomes one GMP multiply.
A brute-force enumeration of plane partitions by trace serves as the
independent oracle for small n.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpz
from mpmath import mp, mpc, mpf

__all__ = [
    "PlanePartitionPolynomial",
    "EvalResult",
    "InexactDivisionError",
    "log_derivative_weights",
    "plane_partition_polynomial",
    "enumerate_by_trace",
    "evaluate",
    "evaluate_adaptive",
    "to_json_dict",
]


class InexactDivisionError(RuntimeError):
    """The recurrence produced a non-integer quotient (implementation bug)."""


@dataclass(frozen=True)
class PlanePartitionPolynomial:
    """Q_n(x) = sum_k pp_k(n) x^k with exact big-integer coefficients."""

    n: int
    coeffs: tuple[int, ...]  # c_0 .. c_n

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.n + 1:
            raise ValueError("coefficient vector must have length n+1")
        if self.n >= 1 and (self.coeffs[0] != 0 or self.coeffs[self.n] != 1):
            raise ValueError("Q_n must have zero constant term and be monic")


@dataclass(frozen=True)
class EvalResult:
    value: mpc
    abs_error_bound: float


def _divisors(j: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= j:
        if j % d == 0:
            small.append(d)
            if d != j // d:
                large.append(j // d)
        d += 1
    return small + large[::-1]


def log_derivative_weights(j: int) -> list[tuple[int, int]]:
    """Sparse a_j(x): list of (degree d, weight (j/d)^2) over divisors d of j."""
    if j < 1:
        raise ValueError("j must be a positive integer")
    return [(d, (j // d) ** 2) for d in _divisors(j)]


def _slot_bits(n: int) -> int:
    # pp_k(n) <= PL(n) ~ exp(c n^(2/3)) with c ~ 2.01, i.e. ~2.9 n^(2/3) bits;
    # 3.2 n^(2/3) + 96 leaves room for the n^4-ish convolution headroom
    return int(3.2 * max(n, 1) ** (2.0 / 3.0)) + 96


class _CoefficientTable:
    """Immutable-once-built packed table of Q_0..Q_n, grown on demand."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._bits = _slot_bits(64)
        self._packed: list[mpz] = [mpz(1)]
        # a_j kept sparse as (slot shift, weight) pairs: GMP would otherwise
        # grind through the ~j zero slots of a dense packed a_j on every step
        self._weights: list[list[tuple[int, mpz]]] = [[]]
        self._capacity = 64

    def _rebuild(self, n: int) -> None:
        self._bits = _slot_bits(n)
        self._capacity = n
        self._packed = [mpz(1)]
        self._weights = [[]]

    def _extend(self, n: int) -> None:
        if n > self._capacity:
            # slot width depends on the target n; grow with headroom and rebuild
            self._rebuild(int(n * 1.25) + 16)
        bits = self._bits
        for j in range(len(self._weights), n + 1):
            self._weights.append(
                [(d * bits, mpz(c)) for d, c in log_derivative_weights(j)]
            )
        packed = self._packed
        weights = self._weights
        for m in range(len(packed), n + 1):
            acc = mpz(0)
            for j in range(1, m + 1):
                q = packed[m - j]
                for shift, c in weights[j]:
                    acc += (q * c) << shift
            qm, rem = divmod(acc, mpz(m))
            if rem != 0:
                raise InexactDivisionError(
                    f"recurrence division by {m} left remainder {rem}"
                )
            packed.append(qm)

    def coefficients(self, n: int) -> tuple[int, ...]:
        with self._lock:
            if n >= len(self._packed):
                self._extend(n)
            packed, bits = self._packed[n], self._bits
        mask = (mpz(1) << bits) - 1
        coeffs = tuple(int((packed >> (k * bits)) & mask) for k in range(n + 1))
        if packed >> ((n + 1) * bits) != 0:
            raise InexactDivisionError("coefficient slot overflow")
        return coeffs


_TABLE = _CoefficientTable()


def plane_partition_polynomial(n: int) -> PlanePartitionPolynomial:
    """Exact Q_n(x) via the logarithmic-derivative recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return PlanePartitionPolynomial(n, _TABLE.coefficients(n))


def _dominated_rows(prev: Sequence[int], maxsum: int):
    """Nonempty weakly-decreasing rows r with r[i] <= prev[i], sum <= maxsum."""
    row: list[int] = []

    def rec(i: int, last: int, left: int):
        if row:
            yield tuple(row)
        if i >= len(prev) or left == 0:
            return
        for p in range(min(prev[i], last, left), 0, -1):
            row.append(p)
            yield from rec(i + 1, p, left - p)
            row.pop()

    yield from rec(0, maxsum, maxsum)


def enumerate_by_trace(n: int) -> PlanePartitionPolynomial:
    """Brute-force oracle: generate every plane partition of n, tally traces.

    Rows and columns weakly decrease (the standard convention); the trace is
    the sum of the diagonal entries.
    """
    if not 1 <= n <= 12:
        raise ValueError("enumeration oracle is restricted to 1 <= n <= 12")
    counts = [0] * (n + 1)

    def place(remaining: int, prev: tuple[int, ...], diag: int, trace: int):
        if remaining == 0:
            counts[trace] += 1
            return
        for row in _dominated_rows(prev, remaining):
            d = row[diag] if diag < len(row) else 0
            place(remaining - sum(row), row, diag + 1, trace + d)

    place(n, (n,) * n, 0, 0)
    return PlanePartitionPolynomial(n, tuple(counts))


def evaluate(p: PlanePartitionPolynomial, x: complex, precision_bits: int = 256) -> EvalResult:
    """Horner evaluation of Q_n at x with precision_bits of working precision.

    abs_error_bound is the standard Horner rounding envelope
    (3n+2) * 2^-precision_bits * sum |c_k| |x|^k.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    with mp.workprec(precision_bits):
        z = mpc(x)
        acc = mpc(0)
        for c in reversed(p.coeffs):
            acc = acc * z + c
        ax = abs(z)
        env = mpf(0)
        for c in reversed(p.coeffs):
            env = env * ax + abs(c)
        bound = (3 * p.n + 2) * mpf(2) ** (-precision_bits) * env
        return EvalResult(value=acc, abs_error_bound=float(bound))


def evaluate_adaptive(
    p: PlanePartitionPolynomial,
    x: complex,
    rel_target: float = 1e-8,
    floor: float = 1e-300,
    max_bits: int = 1 << 16,
) -> EvalResult:
    """Double the precision from 256 bits until the rounding envelope is below
    rel_target * max(|value|, floor); needed on (x*, 0) where Q_n cancels
    catastrophically against its coefficient sizes."""
    bits = 256
    while True:
        res = evaluate(p, x, bits)
        if res.abs_error_bound < rel_target * max(abs(complex(res.value)), floor):
            return res
        if bits >= max_bits:
            raise ArithmeticError(
                f"evaluation of Q_{p.n} did not stabilize at {bits} bits"
            )
        bits *= 2


def to_json_dict(p: PlanePartitionPolynomial) -> dict:
    """Coefficients as decimal strings (they exceed 64-bit integers quickly)."""
    return {"n": p.n, "coeffs": [str(c) for c in p.coeffs]}
