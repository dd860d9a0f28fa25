"""Pairs of rational right triangles with sides ``p^2 +- q^2`` built from congruent number curves."""

from .arith import (
    Rational,
    as_rational,
    factorize,
    format_rational,
    is_perfect_square,
    isqrt,
    make_rational,
    min_root_multiple,
    parse_rational,
    sqrt_exact,
    squarefree_part,
)
from .curve import CongruentCurve, CurvePoint, add, double, multiply, negate, tangent_image
from .oracle import brute_force_system, cross_check
from .solutions import (
    classify,
    enumerate_pairs,
    fibonacci_witness,
    is_fibonacci,
    make_pair,
    triangle_from_point,
)
from .systems import (
    SolutionRecord,
    SystemTag,
    record_from_unknowns,
    scale_factor,
    theorem1,
    theorem2,
    theorem3,
    theorem4,
    theorem5_check,
    verify_record,
)
