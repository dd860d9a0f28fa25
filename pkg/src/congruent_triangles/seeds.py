"""Known rational points used as generators and as the published examples."""

from fractions import Fraction

from .curve import CongruentCurve, CurvePoint

# x-coordinates; y is recovered as the nonnegative square root of x^3 - N^2 x
SEED_X = {
    5: (Fraction(-4), Fraction(25, 4), Fraction(41, 12) ** 2, Fraction(12005, 961), Fraction(45)),
    6: (Fraction(18), Fraction(19602, 2209), Fraction(25, 4), Fraction(1201, 140) ** 2),
    7: (Fraction(25),),
    34: (Fraction(162), Fraction(2178, 49), Fraction(833, 16), Fraction(153, 4)),
}

# (-4, 6) is the usual generator for N = 5; keep its sign explicit
_EXPLICIT_Y = {(5, Fraction(-4)): Fraction(6)}


def seed_points(n: int) -> list[CurvePoint]:
    curve = CongruentCurve(n)
    return [curve.point(x, _EXPLICIT_Y.get((n, x))) for x in SEED_X[n]]


def seed_point(n: int) -> CurvePoint:
    return seed_points(n)[0]
