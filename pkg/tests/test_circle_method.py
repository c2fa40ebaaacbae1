"""Farey dissection, the A/B/Psi/omega/g factorization, and bound margins."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from ppasym.circle_method import (
    A_series,
    B_series,
    a_difference_margin,
    b_remainder_margin,
    calibrate_M,
    factorization_residual,
    farey,
    g,
    g_bound_margin,
    log_gen_fn,
    log_omega,
    omega,
    omega_bound_margin,
    psi,
)
from ppasym.special_functions import trilog


def _farey_fractions(N):
    return [Fraction(a.h, a.k) for a in farey(N)]


def test_farey_enumeration():
    assert [(a.h, a.k) for a in farey(1)] == [(0, 1)]
    assert [(a.h, a.k) for a in farey(3)] == [(0, 1), (1, 3), (1, 2), (2, 3)]
    assert [(a.h, a.k) for a in farey(5)] == [
        (0, 1), (1, 5), (1, 4), (1, 3), (2, 5), (1, 2), (3, 5), (2, 3), (3, 4), (4, 5),
    ]


def test_farey_neighbor_identity():
    for N in range(1, 12):
        arcs = farey(N)
        fr = _farey_fractions(N)
        assert fr == sorted(set(fr))
        for arc in arcs:
            hl, kl = arc.left_neighbor
            hr, kr = arc.right_neighbor
            assert arc.h * kl - hl * arc.k == 1
            assert hr * arc.k - arc.h * kr == 1
            # mediant bracketing: every arc contains its own fraction
            assert arc.arc_left <= Fraction(arc.h, arc.k) <= arc.arc_right


def test_farey_arcs_tile_the_circle():
    for N in (4, 7, 10):
        arcs = farey(N)
        total = sum(arc.arc_right - arc.arc_left for arc in arcs)
        assert total == 1


def test_A_series_closed_form_at_w0():
    # A_{1,2}(x, 0) reduces to -(1/8) ln((1+x)/(1-x)) ... frozen at x = 0.5
    got = A_series(1, 2, 0.5, 0j)
    assert abs(got - (-(1.0 / 8.0) * math.log(3.0))) < 1e-12


def test_A_series_k1_vanishes():
    assert A_series(0, 1, 0.37, 0.2 + 0.1j) == 0


def test_omega_half_arc_closed_form():
    # omega_{1,2,n}(x) = (-1)^n (1-x^2)^{1/24} ((1-x)/(1+x))^{1/8}
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(0, 9)
        x = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.4, 0.4))
        want = (
            (-1.0) ** (n & 1)
            * (1 - x * x) ** (1.0 / 24.0)
            * ((1 - x) / (1 + x)) ** 0.125
        )
        got = omega(1, 2, n, x)
        assert abs(got - want) < 1e-10 * max(1.0, abs(want))


def test_omega_main_arc():
    # omega_{0,1,n}(x) = (1-x)^{1/12}
    for x in (0.5, -0.3, 0.2 + 0.4j):
        assert abs(omega(0, 1, 3, x) - (1 - x) ** (1.0 / 12.0)) < 1e-12


def test_psi_scaling():
    x, w = 0.4 + 0.2j, 0.3 - 0.1j
    for k in (1, 2, 3):
        want = trilog(x**k) / (k**3 * w * w)
        assert abs(psi(k, x, w) - want) < 1e-12 * abs(want)


def test_factorization_identity_seeded():
    rng = random.Random(271828)
    worst = 0.0
    for _ in range(60):
        k = rng.randint(1, 5)
        hs = [h for h in range(k) if math.gcd(h, k) == 1] or [0]
        h = rng.choice(hs)
        n = rng.randint(1, 20)
        x = 0.9 * math.sqrt(rng.random()) * cmath.exp(2j * math.pi * rng.random())
        w = complex(rng.uniform(0.05, 1.0), rng.uniform(-1.0, 1.0))
        worst = max(worst, factorization_residual(h, k, n, x, w))
    assert worst < 1e-9


def test_g_small_w_stability():
    # g is finite and continuous as w -> 0 despite Psi ~ 1/w^2 cancellation
    x = 0.4
    vals = [g(0, 1, x, complex(s, 0.0)) for s in (1e-2, 1e-4, 1e-6)]
    assert abs(vals[1] - vals[2]) < 1e-6
    assert all(abs(v) < 10 for v in vals)


def test_g_vanishes_at_x_zero():
    assert g(1, 3, 0.0, 0.2 + 0.1j) == 0


def test_log_gen_fn_product_check():
    # ln P(x,u) = -sum_m m ln(1 - x u^m) against a direct truncated product
    x, u = 0.3, 0.4 + 0.1j
    direct = -sum(m * cmath.log(1 - x * u**m) for m in range(1, 200))
    assert abs(log_gen_fn(x, u) - direct) < 1e-12


def test_calibrated_M_exceeds_taylor_seed():
    M = calibrate_M()
    assert M > 1.0 / 240.0
    assert M < 1.0  # sanity ceiling


@pytest.mark.parametrize("seed", [3, 17])
def test_bound_margins_sampled(seed):
    rng = random.Random(seed)
    for _ in range(40):
        k = rng.randint(2, 8)
        h = rng.choice([hh for hh in range(1, k) if math.gcd(hh, k) == 1])
        n = rng.randint(0, 50)
        x = (0.05 + 0.85 * rng.random()) * cmath.exp(2j * math.pi * rng.random())
        w = complex(rng.uniform(0.05, 1.0), rng.uniform(-1.0, 1.0))
        assert g_bound_margin(h, k, x, w) >= 0
        assert a_difference_margin(h, k, x, w) >= 0
        assert b_remainder_margin(k, x, w) >= 0
        assert omega_bound_margin(h, k, n, x) >= 0


def test_log_omega_consistency():
    # omega = exp(log_omega) on scattered inputs
    rng = random.Random(12)
    for _ in range(20):
        k = rng.randint(1, 5)
        hs = [h for h in range(k) if math.gcd(h, k) == 1] or [0]
        h = rng.choice(hs)
        n = rng.randint(0, 6)
        x = 0.7 * cmath.exp(2j * math.pi * rng.random()) * math.sqrt(rng.random())
        assert abs(cmath.exp(log_omega(h, k, n, x)) - omega(h, k, n, x)) < 1e-10


def test_B_series_vanishes_at_x_zero():
    assert B_series(2, 0.0, 0.3 + 0.1j) == 0
