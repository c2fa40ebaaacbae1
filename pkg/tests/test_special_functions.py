"""Trilogarithm series, certified tails, and the principal cube root."""

import cmath
import math
import random

import pytest

from ppasym.special_functions import (
    DEFAULT_TOL,
    ZETA3,
    L,
    SeriesTolerance,
    TruncationError,
    int_pow,
    principal_cuberoot,
    trilog,
)

# frozen reference values (computed once at 50-digit working precision)
TRILOG_ORACLE = {
    -1.0: -0.9015426773696957,
    0.5: 0.5372131936080402,
    0.3: 0.3124001778928926,
    -0.5: -0.4725978446588969,
    -0.9: -0.8186382015443639,
    -0.4: -0.3820371029393100,
    0.9: 1.0496589501864399,
    0.81: 0.9240829945683042,
    0.25: 0.2584613957965733,
}


def test_frozen_values():
    for x, want in TRILOG_ORACLE.items():
        got = trilog(x)
        assert abs(got - want) < 1e-12, (x, got, want)
        assert abs(got.imag) < 1e-12


def test_zeta3_at_argument_one_limit():
    # Li3(x) -> zeta(3) as x -> 1-; check a point close to 1
    assert abs(trilog(0.999999) - ZETA3) < 1e-4
    assert abs(ZETA3 - 1.2020569031595943) < 1e-15


def test_series_tail_bound_is_honest():
    rng = random.Random(20240811)
    loose = SeriesTolerance(abs_tol=1e-6, max_terms=10**7)
    for _ in range(200):
        r = 0.95 * math.sqrt(rng.random())
        x = r * cmath.exp(2j * math.pi * rng.random())
        coarse = trilog(x, loose)
        fine = trilog(x)
        assert abs(coarse - fine) < 1e-6


def test_truncation_error_reports_partial_state():
    tight = SeriesTolerance(abs_tol=1e-30, max_terms=50)
    with pytest.raises(TruncationError) as exc:
        trilog(0.99, tight)
    err = exc.value
    assert err.terms <= 50
    assert err.achieved_bound > err.requested


def test_principal_cuberoot_branch():
    # principal branch: argument of the result lies in (-pi/3, pi/3]
    rng = random.Random(11)
    for _ in range(500):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if z == 0:
            continue
        w = principal_cuberoot(z)
        assert abs(w**3 - z) < 1e-12 * abs(z)
        assert -math.pi / 3 < cmath.phase(w) <= math.pi / 3 + 1e-15
    # negative real axis resolves upward
    w = principal_cuberoot(-8.0)
    assert abs(w - 2.0 * cmath.exp(1j * math.pi / 3)) < 1e-12


def test_L_definition():
    # L_k(x) = (1/k) (2 Li3(x^k))^{1/3}, principal root
    for k in (1, 2, 3):
        for x in (0.5, -0.5, 0.3 + 0.4j):
            want = principal_cuberoot(2.0 * trilog(int_pow(x, k))) / k
            assert abs(L(k, x) - want) < 1e-14
    assert abs(L(1, 0.5) - 1.02421757055495) < 1e-12  # frozen spot check


def test_L_at_one_is_partition_constant_shape():
    # L1(x) -> (2 zeta(3))^{1/3} as x -> 1-
    assert abs(L(1, 0.999999) - (2 * ZETA3) ** (1 / 3)) < 1e-4


def test_int_pow_matches_builtin():
    rng = random.Random(5)
    for _ in range(200):
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        k = rng.randint(0, 12)
        assert abs(int_pow(z, k) - z**k) <= 1e-13 * max(1.0, abs(z) ** k)


def test_trilog_conjugation_symmetry():
    rng = random.Random(99)
    for _ in range(100):
        z = (
            0.9
            * math.sqrt(rng.random())
            * cmath.exp(2j * math.pi * rng.random())
        )
        a = trilog(z)
        b = trilog(z.conjugate())
        assert abs(a.conjugate() - b) < 1e-13


def test_default_tolerance_frozen():
    assert DEFAULT_TOL.abs_tol == 1e-12
