"""Plane partition polynomials: exact coefficients, phase geometry of the
trilogarithm cube-root functions, and circle-method asymptotics with
quadrature and enumeration oracles."""

from .special_functions import (
    SeriesTolerance,
    TruncationError,
    trilog,
    L,
    principal_cuberoot,
)
from .exact_polynomials import (
    PlanePartitionPolynomial,
    plane_partition_polynomial,
    enumerate_by_trace,
    evaluate,
    evaluate_adaptive,
)
from .phase_geometry import classify, real_crossing, circle_crossing, trace_boundary
from .asymptotics import (
    estimate_R1,
    estimate_R2,
    estimate_oscillatory,
    estimate_boundary,
    saddle_numeric,
    saddle_closed,
    cauchy_reference,
)
from .zeros import roots, predicted_interval_zeros, match_zeros

__version__ = "0.1.0"
