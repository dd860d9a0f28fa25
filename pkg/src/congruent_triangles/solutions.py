"""Classifying curve solutions and picking pairs ``(x, z)`` with ``xz`` square."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .arith import (
    as_rational,
    format_rational,
    is_perfect_square,
    same_square_class,
    sqrt_exact,
    squarefree_part,
)
from .curve import CongruentCurve, CurvePoint, add, double, is_nontrivial, two_torsion
from .errors import (
    EqualSolutions,
    InsufficientPairs,
    NegativeInput,
    NotFibonacci,
    NotOnCurve,
    ProductNotSquare,
    TrivialSolution,
)

DEFAULT_MULTIPLE_BOUND = 12


@dataclass(frozen=True)
class SolutionClass:
    x: Fraction
    is_square: bool
    sf: int
    fibonacci: bool

    def to_json(self):
        return {
            "x": format_rational(self.x),
            "is_square": self.is_square,
            "sf": str(self.sf),
            "fibonacci": self.fibonacci,
        }


@dataclass(frozen=True)
class FibonacciWitness:
    """``x = (L/K)**2`` in lowest terms; ``M = K/2`` when ``K`` is even.

    The evenness of ``K`` and ``gcd(L, N) == 1`` are checked rather than
    assumed; failures land in ``violations``.
    """

    L: int
    K: int
    M: int | None
    violations: tuple[str, ...] = field(default=())

    @property
    def holds(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class RationalTriangle:
    a: Fraction
    b: Fraction
    c: Fraction

    @property
    def area(self) -> Fraction:
        return self.a * self.b / 2

    def is_right(self) -> bool:
        return self.a * self.a + self.b * self.b == self.c * self.c


@dataclass(frozen=True)
class PairSelection:
    curve: CongruentCurve
    x: Fraction
    z: Fraction
    sqrt_xz: Fraction

    @property
    def n(self) -> int:
        return self.curve.n

    def to_json(self):
        return {
            "n": str(self.curve.n),
            "x": format_rational(self.x),
            "z": format_rational(self.z),
            "sqrt_xz": format_rational(self.sqrt_xz),
        }


def _require_solution(curve: CongruentCurve, x: Fraction) -> Fraction:
    rhs = curve.rhs(x)
    if not is_perfect_square(rhs):
        raise NotOnCurve(f"x = {format_rational(x)} is not an x-coordinate on {curve}")
    return rhs


def is_fibonacci(curve: CongruentCurve, x) -> bool:
    x = as_rational(x)
    n = curve.n
    return is_perfect_square(x) and is_perfect_square(x + n) and is_perfect_square(x - n)


def classify(curve: CongruentCurve, x) -> SolutionClass:
    x = as_rational(x)
    _require_solution(curve, x)
    # x = 0 is the only solution without a squarefree part
    sf = squarefree_part(x).sf if x else 0
    return SolutionClass(x, is_perfect_square(x), sf, is_fibonacci(curve, x))


def fibonacci_witness(curve: CongruentCurve, x) -> FibonacciWitness:
    x = as_rational(x)
    _require_solution(curve, x)
    if x == 0 or not is_fibonacci(curve, x):
        raise NotFibonacci(f"x = {format_rational(x)} fails the Fibonacci conditions on {curve}")
    root = sqrt_exact(x)
    L, K = root.numerator, root.denominator
    violations = []
    if K % 2:
        violations.append(f"K = {K} is odd")
    if math.gcd(L, curve.n) != 1:
        violations.append(f"gcd(L, N) = {math.gcd(L, curve.n)}")
    return FibonacciWitness(L, K, K // 2 if K % 2 == 0 else None, tuple(violations))


def triangle_from_point(curve: CongruentCurve, x) -> RationalTriangle:
    x = as_rational(x)
    if not is_fibonacci(curve, x) or x == 0:
        raise NotFibonacci(f"x = {format_rational(x)} fails the Fibonacci conditions on {curve}")
    plus = sqrt_exact(x + curve.n)
    minus = sqrt_exact(x - curve.n)
    return RationalTriangle(plus - minus, plus + minus, 2 * sqrt_exact(x))


def make_pair(curve: CongruentCurve, x, z) -> PairSelection:
    x, z = as_rational(x), as_rational(z)
    for value in (x, z):
        if _require_solution(curve, value) == 0:
            raise TrivialSolution(f"x = {format_rational(value)} is a two-torsion point (y = 0)")
        if value < 0:
            raise NegativeInput(f"negative x-coordinate {format_rational(value)} is not supported")
    if x == z:
        raise EqualSolutions(f"x and z are both {format_rational(x)}")
    if not is_perfect_square(x * z):
        raise ProductNotSquare(f"{format_rational(x)} * {format_rational(z)} is not a square")
    return PairSelection(curve, x, z, sqrt_exact(x * z))


def xi_zeta(pair: PairSelection) -> tuple[Fraction, Fraction]:
    ratio = pair.z / pair.x
    if not is_perfect_square(ratio):
        raise ProductNotSquare(f"z/x = {format_rational(ratio)} is not a square")
    return pair.sqrt_xz / pair.curve.n, sqrt_exact(ratio)


def candidate_points(seed: CurvePoint, bound: int = DEFAULT_MULTIPLE_BOUND) -> Iterator[tuple[tuple[int, int], CurvePoint]]:
    """Yield ``((multiple, torsion_tag), point)`` for ``m*seed + T``, ``T`` in E[2] or O."""
    torsion = (seed.curve.identity(),) + two_torsion(seed.curve)
    multiple = seed.curve.identity()
    for m in range(1, bound + 1):
        multiple = add(multiple, seed) if m != 2 else double(seed)
        for tag, t in enumerate(torsion):
            yield (m, tag), add(multiple, t)


def iter_pairs(curve: CongruentCurve, seed: CurvePoint, bound: int = DEFAULT_MULTIPLE_BOUND) -> Iterator[PairSelection]:
    """Lazily yield pairs from same-square-class buckets of generated x-coordinates.

    Pairs come out ordered by the later member's (multiple, torsion) index,
    then the earlier member's.
    """
    if seed.curve != curve or not is_nontrivial(seed):
        raise ValueError("seed must be a nontrivial point on the given curve")
    seen: set[Fraction] = set()
    buckets: list[list[Fraction]] = []
    for _, point in candidate_points(seed, bound):
        if not is_nontrivial(point) or point.x <= 0 or point.x in seen:
            continue
        x = point.x
        seen.add(x)
        for bucket in buckets:
            if same_square_class(bucket[0], x):
                for earlier in bucket:
                    yield PairSelection(curve, earlier, x, sqrt_exact(earlier * x))
                bucket.append(x)
                break
        else:
            buckets.append([x])


def enumerate_pairs(curve: CongruentCurve, seed: CurvePoint, count: int, bound: int = DEFAULT_MULTIPLE_BOUND) -> list[PairSelection]:
    if count <= 0:
        return []
    pairs = []
    for pair in iter_pairs(curve, seed, bound):
        pairs.append(pair)
        if len(pairs) == count:
            return pairs
    raise InsufficientPairs(f"only {len(pairs)} pairs within {bound} multiples of {seed}")
