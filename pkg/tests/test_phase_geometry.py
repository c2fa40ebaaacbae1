"""Phase classification, the two boundary constants, and boundary tracing."""

import cmath
import math
import random

import pytest

from ppasym.phase_geometry import (
    DominanceViolation,
    circle_crossing,
    classify,
    re_L,
    real_crossing,
    trace_boundary,
)

# frozen ten-digit constants
X_STAR = -0.8250030529
THETA_STAR_OVER_PI = 0.9517031251


def test_real_crossing_frozen():
    assert abs(real_crossing(1e-9) - X_STAR) < 2e-9


def test_circle_crossing_frozen():
    assert abs(circle_crossing(1e-8) / math.pi - THETA_STAR_OVER_PI) < 2e-8


def test_known_labels():
    assert classify(0.5).label == "R1"
    assert classify(-0.5).label == "R1"
    assert classify(-0.9).label == "R2"
    assert classify(-0.95).label == "R2"
    assert classify(0.3 + 0.4j).label == "R1"


def test_boundary_label_near_x_star():
    xs = real_crossing(1e-9)
    assert classify(xs, tol=1e-6).label == "BOUNDARY"
    assert classify(xs - 1e-3).label == "R2"
    assert classify(xs + 1e-3).label == "R1"


def test_classification_conjugation_symmetric():
    rng = random.Random(42)
    for _ in range(100):
        x = 0.95 * math.sqrt(rng.random()) * cmath.exp(2j * math.pi * rng.random())
        if x == 0:
            continue
        assert classify(x).label == classify(x.conjugate()).label


def test_dominance_holds_on_samples():
    rng = random.Random(1234)
    for _ in range(200):
        x = (0.02 + 0.9 * math.sqrt(rng.random())) * cmath.exp(
            2j * math.pi * rng.random()
        )
        classify(x, k_max=50)  # raises DominanceViolation on failure


def test_re_L_ordering_far_from_boundary():
    assert re_L(1, 0.5) > re_L(2, 0.5)
    assert re_L(2, -0.9) > re_L(1, -0.9)
    # higher k fall off roughly like 1/k
    vals = [re_L(k, 0.5) for k in range(1, 10)]
    assert all(vals[i] > vals[i + 1] for i in range(len(vals) - 1))


@pytest.fixture(scope="module")
def traced_curve():
    return trace_boundary(24, 1e-8)


def test_trace_boundary_residuals_and_symmetry(traced_curve):
    curve = traced_curve
    assert len(curve.points) >= 24
    for p, r in zip(curve.points, curve.residuals):
        assert abs(re_L(1, p) - re_L(2, p)) < 1e-6
        assert r < 1e-6
    pts = set()
    for p in curve.points:
        pts.add((round(p.real, 9), round(p.imag, 9)))
    for p in curve.points:
        assert (round(p.real, 9), round(-p.imag, 9)) in pts  # conjugate pair


def test_trace_boundary_ends(traced_curve):
    # the traced curve approaches x* on the real axis
    curve = traced_curve
    xs = real_crossing(1e-9)
    nearest = min(abs(p - xs) for p in curve.points)
    assert nearest < 0.05


def test_tolerance_guards():
    with pytest.raises(ValueError):
        real_crossing(1e-15)
    with pytest.raises(ValueError):
        circle_crossing(1e-13)
