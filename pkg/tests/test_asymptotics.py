"""Main-term estimates, saddle integrals, and the quadrature oracles."""

import cmath
import math
import random

import pytest

from ppasym import asymptotics as asym
from ppasym.asymptotics import (
    DELTA_MAX,
    RegionError,
    arc_sum,
    cauchy_reference,
    default_alpha,
    estimate_R1,
    estimate_R2,
    estimate_auto,
    estimate_boundary,
    estimate_oscillatory,
    minor_arc_report,
    saddle_closed,
    saddle_numeric,
)
from ppasym.exact_polynomials import evaluate_adaptive, plane_partition_polynomial
from ppasym.phase_geometry import real_crossing
from ppasym.special_functions import L, ZETA3


def _exact(n, x):
    return complex(evaluate_adaptive(plane_partition_polynomial(n), x).value)


def test_region_refusals_carry_suggestions():
    with pytest.raises(RegionError) as exc:
        estimate_R1(-0.9, 100)
    assert "estimate_R2" in str(exc.value)
    with pytest.raises(RegionError) as exc:
        estimate_R2(0.5, 100)
    assert "estimate_R1" in str(exc.value)
    with pytest.raises(RegionError):
        estimate_R1(-0.5, 100)  # oscillatory interval
    with pytest.raises(RegionError):
        estimate_oscillatory(0.5, 100)


def test_estimate_R1_accuracy_moderate_n():
    for n, cap in ((50, 0.05), (125, 0.02)):
        rel = abs(_exact(n, 0.5) / estimate_R1(0.5, n).value - 1.0)
        assert rel < cap


def test_estimate_R1_exponent_field():
    est = estimate_R1(0.5, 64)
    assert abs(est.exponent - 1.5 * 64 ** (2.0 / 3.0) * L(1, 0.5)) < 1e-12
    assert est.m == 1
    assert est.error_class == "O(n^(-1/3))"


def test_estimate_R2_sign_alternation():
    a = estimate_R2(-0.9, 101).value
    b = estimate_R2(-0.9, 102).value
    assert a.real < 0 < b.real


def test_oscillatory_estimate_tracks_exact():
    # amplitude envelope and sign at a few sample points, n = 60
    n = 60
    for x in (-0.3, -0.55, -0.7):
        est = estimate_oscillatory(x, n)
        ex = _exact(n, x).real
        assert abs(est - ex) < 0.5 * abs(ex) + 0.5 * abs(est)


def test_boundary_sum_beats_single_terms():
    # on the level set both phase terms matter: the two-term form beats
    # either single term, and at x* it stays within 50% of exact
    from ppasym.phase_geometry import trace_boundary
    from ppasym.special_functions import L as _L

    n = 200
    xs = real_crossing(1e-9)
    ex = _exact(n, xs)
    two = estimate_boundary(xs, n)
    assert abs(ex / two - 1.0) < 0.5
    curve = trace_boundary(8, 1e-8)
    x = min(curve.points, key=lambda p: abs(p - (-0.7 + 0.35j)))
    ex = _exact(n, x)
    two = estimate_boundary(x, n)
    t1 = (1 - x) ** (1 / 12.0) * cmath.sqrt(
        _L(1, x) / (6 * math.pi * n ** (4 / 3))
    ) * cmath.exp(1.5 * n ** (2 / 3) * _L(1, x))
    t2 = two - t1
    err_two = abs(ex - two)
    assert err_two <= abs(ex - t1) and err_two <= abs(ex - t2)


def test_estimate_auto_routing():
    assert estimate_auto(0.5, 40)[0] == "r1"
    assert estimate_auto(-0.9, 40)[0] == "r2"
    assert estimate_auto(-0.5, 40)[0] == "oscillatory"
    assert estimate_auto(real_crossing(1e-9), 40)[0] == "boundary"


def test_saddle_ratio_moderate_n():
    for x in (0.5, -0.4):
        err = abs(saddle_numeric(1, 200, x) / saddle_closed(1, 200, x) - 1.0)
        assert err <= 5.0 * 200 ** (-2.0 / 3.0)


def test_saddle_closed_structure():
    assert saddle_closed(1, 100, 0.5).imag == pytest.approx(0.0, abs=1e-12)
    assert saddle_closed(1, 100, 0.5).real > 0
    # conjugate-pair branch at x < 0: value is 2 Re(single term) hence real
    v = saddle_closed(1, 100, -0.4)
    assert abs(v.imag) < 1e-12
    # m = 2 log-magnitude follows the L2 exponent
    lm = math.log(abs(saddle_closed(2, 400, -0.9)))
    want = 1.5 * 400 ** (2.0 / 3.0) * L(2, -0.9).real
    assert abs(lm - want) < 0.1 * abs(want)


def test_saddle_integrand_peak_location():
    # scan the integrand of the saddle integral; peak should sit at -Im L1
    x = 0.3 + 0.4j
    L1 = L(1, x)
    n = 200
    zs = [(-2.0 + 4.0 * i / 2000) for i in range(2001)]

    def mag(z):
        d = L1.real - 1j * z
        return (n ** (2.0 / 3.0) * (L1**3 / (2 * d * d) + d)).real

    best = max(zs, key=mag)
    assert abs(best - (-L1.imag)) < 5e-3


def test_saddle_delta_guard():
    with pytest.raises(ValueError):
        saddle_numeric(1, 100, 0.5, delta=DELTA_MAX * 1.01)
    with pytest.raises(ValueError):
        saddle_numeric(3, 100, 0.5)


def test_basic_saddle_inequality():
    # Re(L^3/(a - iv)^2) <= (Re L)^3 / a^2 for |arg L| <= pi/3, a > 0
    rng = random.Random(4096)
    for _ in range(10_000):
        mag = 0.1 + 2.0 * rng.random()
        arg = (rng.random() * 2.0 - 1.0) * math.pi / 3.0
        Lv = mag * cmath.exp(1j * arg)
        a = 0.05 + 2.0 * rng.random()
        v = (rng.random() * 2.0 - 1.0) * 3.0
        lhs = (Lv**3 / (a - 1j * v) ** 2).real
        rhs = Lv.real**3 / a**2
        assert lhs <= rhs + 1e-12


def test_cauchy_reference_matches_exact():
    for n, x in ((20, 0.3), (30, -0.5 + 0.2j)):
        ref = cauchy_reference(x, n, M_points=16 * n)
        assert abs(ref / _exact(n, x) - 1.0) < 1e-8


def test_cauchy_reference_alpha_independent():
    n, x = 25, 0.4
    a = default_alpha(x, n)
    v1 = cauchy_reference(x, n, alpha=a / 2, M_points=32 * n)
    v2 = cauchy_reference(x, n, alpha=2 * a, M_points=32 * n)
    assert abs(v1 / v2 - 1.0) < 1e-8


def test_cauchy_reference_guards():
    with pytest.raises(ValueError):
        cauchy_reference(1.2, 10)
    with pytest.raises(ValueError):
        cauchy_reference(0.5, 10, alpha=-0.1)
    with pytest.raises(ValueError):
        cauchy_reference(0.5, 10, M_points=10)


def test_arc_sum_reconstruction():
    n, x = 20, 0.3
    ref = cauchy_reference(x, n)
    for N in (1, 2, 3):
        tot = arc_sum(n, x, N)
        assert abs(tot - ref) / abs(ref) < 1e-8


def test_minor_arcs_subdominant():
    rep = minor_arc_report(100, 0.5, 5)
    assert rep["ratio"] < 1e-3
    assert rep["dominant"]["k"] == 1


def test_delta_max_value():
    assert abs(DELTA_MAX - math.pi / (2.0 * ZETA3) ** (1.0 / 3.0)) < 1e-15
