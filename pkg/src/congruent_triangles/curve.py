"""Congruent number curves ``y^2 = x^3 - n^2 x`` and their rational points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import as_rational, format_rational, parse_rational, sqrt_exact, squarefree_part
from .errors import CurveMismatch, NotASquare, NotOnCurve


@dataclass(frozen=True)
class CongruentCurve:
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"curve parameter must be a positive integer, got {self.n!r}")
        if squarefree_part(self.n).sf != self.n:
            raise ValueError(f"curve parameter {self.n} is not squarefree")

    def rhs(self, x) -> Fraction:
        x = as_rational(x)
        return x * x * x - self.n * self.n * x

    def contains(self, x, y) -> bool:
        y = as_rational(y)
        return y * y == self.rhs(x)

    def point(self, x, y=None) -> "CurvePoint":
        """Affine point; with ``y`` omitted the nonnegative root is used."""
        x = as_rational(x)
        if y is None:
            try:
                y = sqrt_exact(self.rhs(x))
            except NotASquare:
                raise NotOnCurve(f"no rational point with x = {format_rational(x)} on {self}") from None
        return CurvePoint(self, x, as_rational(y))

    def identity(self) -> "CurvePoint":
        return CurvePoint(self, None, None)

    def __str__(self):
        return f"C_{self.n}: y^2 = x^3 - {self.n * self.n}x"


@dataclass(frozen=True)
class CurvePoint:
    """Affine point on ``curve``, or the identity when ``x is None``."""

    curve: CongruentCurve
    x: Fraction | None
    y: Fraction | None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("identity needs both coordinates None")
        if self.x is not None and not self.curve.contains(self.x, self.y):
            raise NotOnCurve(
                f"({format_rational(self.x)}, {format_rational(self.y)}) is not on {self.curve}"
            )

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def __neg__(self):
        return negate(self)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, negate(other))

    def __rmul__(self, k):
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return multiply(k, self)

    def __str__(self):
        if self.is_identity:
            return "O"
        return f"({format_rational(self.x)}, {format_rational(self.y)})"

    def to_json(self):
        if self.is_identity:
            return "O"
        return {"x": format_rational(self.x), "y": format_rational(self.y)}

    @classmethod
    def from_json(cls, curve: CongruentCurve, data) -> "CurvePoint":
        if data == "O":
            return curve.identity()
        return cls(curve, parse_rational(data["x"]), parse_rational(data["y"]))


def contains(curve: CongruentCurve, x, y) -> bool:
    return curve.contains(x, y)


def is_nontrivial(p: CurvePoint) -> bool:
    return not p.is_identity and p.y != 0


def two_torsion(curve: CongruentCurve) -> tuple[CurvePoint, CurvePoint, CurvePoint]:
    zero = Fraction(0)
    return tuple(curve.point(Fraction(x), zero) for x in (0, curve.n, -curve.n))


def negate(p: CurvePoint) -> CurvePoint:
    if p.is_identity:
        return p
    return CurvePoint(p.curve, p.x, -p.y)


def double(p: CurvePoint) -> CurvePoint:
    if p.is_identity or p.y == 0:
        return p.curve.identity()
    n2 = p.curve.n * p.curve.n
    slope = (3 * p.x * p.x - n2) / (2 * p.y)
    x3 = slope * slope - 2 * p.x
    return CurvePoint(p.curve, x3, slope * (p.x - x3) - p.y)


def add(p: CurvePoint, q: CurvePoint) -> CurvePoint:
    if p.curve != q.curve:
        raise CurveMismatch(f"cannot add a point on {p.curve} to one on {q.curve}")
    if p.is_identity:
        return q
    if q.is_identity:
        return p
    if p.x == q.x:
        if p.y == q.y:
            return double(p)
        return p.curve.identity()
    slope = (q.y - p.y) / (q.x - p.x)
    x3 = slope * slope - p.x - q.x
    return CurvePoint(p.curve, x3, slope * (p.x - x3) - p.y)


def multiply(k: int, p: CurvePoint) -> CurvePoint:
    if isinstance(k, bool) or not isinstance(k, int):
        raise TypeError(f"multiplier must be an integer, got {k!r}")
    if k < 0:
        return multiply(-k, negate(p))
    result = p.curve.identity()
    addend = p
    while k:
        if k & 1:
            result = add(result, addend)
        k >>= 1
        if k:
            addend = double(addend)
    return result


def tangent_image(p: CurvePoint) -> tuple[Fraction, Fraction]:
    """Closed-form second intersection of the tangent at a nontrivial point.

    x' = ((x^2 + n^2) / 2y)^2,  y' = (x^2 + n^2)(x^4 + n^4 - 6 x^2 n^2) / 8y^3
    """
    if not is_nontrivial(p):
        raise ValueError("tangent formula needs a point with y != 0")
    x, y, n2 = p.x, p.y, p.curve.n * p.curve.n
    s = x * x + n2
    return (s / (2 * y)) ** 2, s * (x**4 + n2 * n2 - 6 * x * x * n2) / (8 * y**3)
