"""Integer solutions of the four triangle-pair systems built from curve pairs.

Every constructor follows the same recipe: evaluate the parametric family at
``(N, x, z)`` with ``k = 1``, pick the smallest scale factor ``k`` that turns
the squared unknowns into integer squares and every side into an integer,
then read off the unknowns and the two triangles.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .arith import (
    as_rational,
    format_rational,
    isqrt,
    is_perfect_square,
    min_root_multiple,
    parse_rational,
    same_square_class,
    sqrt_exact,
    squarefree_part,
)
from .curve import CongruentCurve
from .errors import (
    CongruentError,
    DegenerateOutput,
    IncompatibleSquarefreeParts,
    InvalidScaleFactor,
    ZeroInput,
)
from .solutions import PairSelection, make_pair, xi_zeta


class SystemTag(str, enum.Enum):
    LEGS_HYP = "legs-hyp"  # common leg a, hypotenuses p^2 +- q^2
    HYP_LEGS = "hyp-legs"  # common hypotenuse c, legs p^2 +- q^2
    LEGS_LEGS = "legs-legs"  # common leg a, other legs p^2 +- q^2
    DOUBLE = "double"  # common leg a, hypotenuses p^2 +- q^2, legs r^2 +- s^2

    @property
    def symbols(self) -> tuple[str, ...]:
        return _SYMBOLS[self]

    @property
    def free_symbol(self) -> str:
        return "c" if self is SystemTag.HYP_LEGS else "a"


_SYMBOLS = {
    SystemTag.LEGS_HYP: ("a", "p", "q"),
    SystemTag.HYP_LEGS: ("c", "p", "q"),
    SystemTag.LEGS_LEGS: ("a", "p", "q"),
    SystemTag.DOUBLE: ("p", "q", "a", "r", "s"),
}

SIDE_NAMES = ("a1", "b1", "c1", "a2", "b2", "c2")


def _family(tag: SystemTag, n: int, x: Fraction, z: Fraction, root: Fraction):
    """Squared unknowns and signed triangle sides per unit of ``k``."""
    xz, n2 = x * z, n * n
    if tag is SystemTag.HYP_LEGS:
        squares = {"p": xz * (x + n) * (z + n), "q": xz * (x - n) * (z - n)}
        hyp = root * (x + z) * (xz + n2)
        sides = {
            "a1": 2 * xz * (xz + n2),
            "b1": root * (x - z) * (xz + n2),
            "c1": hyp,
            "a2": 2 * n * xz * (x + z),
            "b2": root * (x + z) * (xz - n2),
            "c2": hyp,
        }
        return squares, sides
    if tag is SystemTag.LEGS_LEGS:
        squares = {"p": (x + n) * (z - n), "q": (x - n) * (z + n)}
    else:
        squares = {"p": (x + n) * (z + n), "q": (x - n) * (z - n)}
        if tag is SystemTag.DOUBLE:
            squares.update(r=(x + n) * (z - n), s=(x - n) * (z + n))
    leg = 4 * n * root
    sides = {
        "a1": leg,
        "b1": 2 * (xz - n2),
        "c1": 2 * (xz + n2),
        "a2": leg,
        # p^2 - q^2 (legs-legs) and r^2 - s^2 (double) both equal 2N(z - x)
        "b2": 2 * n * (x - z) if tag is SystemTag.LEGS_HYP else 2 * n * (z - x),
        "c2": 2 * n * (x + z),
    }
    return squares, sides


def scale_factor(square_targets, integer_targets=(), hints=(), budget=None) -> Fraction:
    """Smallest positive ``k`` with every ``k*t`` an integer square and ``k*u`` an integer.

    Any such ``k`` lies in the square class of the targets, i.e. has the form
    ``t0 * rho**2``; the admissible ``rho`` form the rational multiples of
    one generator, so the minimum is explicit and no search is needed.
    Only the last step, the integrality of the linear targets, factors a
    denominator; ``hints`` and ``budget`` go to :func:`min_root_multiple`.
    """
    squares = [as_rational(t) for t in square_targets]
    integers = [as_rational(u) for u in integer_targets if u != 0]
    if any(t == 0 for t in squares):
        raise ZeroInput("square targets must be nonzero")
    if not squares:
        if not integers:
            return Fraction(1)
        return Fraction(
            math.lcm(*(u.denominator for u in integers)),
            math.gcd(*(u.numerator for u in integers)),
        )
    base = squares[0]
    for t in squares:
        if t < 0:
            raise IncompatibleSquarefreeParts(
                f"target {format_rational(t)} is negative; no positive k makes it a square"
            )
        if not same_square_class(base, t):
            raise IncompatibleSquarefreeParts(
                f"{format_rational(base)} and {format_rational(t)} have different squarefree parts"
            )
    # k * t = (rho * w)^2 with w = sqrt(base * t)
    roots = [sqrt_exact(base * t) for t in squares]
    rho = Fraction(math.lcm(*(w.denominator for w in roots)), math.gcd(*(w.numerator for w in roots)))
    k = base * rho * rho
    if integers:
        k *= min_root_multiple(math.lcm(*((k * u).denominator for u in integers)), budget, hints) ** 2
    return k


@dataclass(frozen=True)
class SolutionRecord:
    tag: SystemTag
    n: int
    x: Fraction
    z: Fraction
    k: Fraction
    unknowns: Mapping[str, int]
    triangle1: tuple[int, int, int]
    triangle2: tuple[int, int, int]

    def __getitem__(self, symbol):
        return self.unknowns[symbol]

    def values(self) -> tuple[int, ...]:
        """Unknowns in the tag's canonical order, e.g. ``(a, p, q)``."""
        return tuple(self.unknowns[s] for s in self.tag.symbols)

    @property
    def orientation(self) -> dict[str, int]:
        """Sign of each raw side formula; ``-1`` marks a side stored as its absolute value."""
        root = sqrt_exact(self.x * self.z)
        _, sides = _family(self.tag, self.n, self.x, self.z, root)
        return {name: (1 if value > 0 else -1) for name, value in sides.items()}

    def scaled(self, m: int) -> "SolutionRecord":
        """The record for ``k * m**2``: linear unknowns times ``m``, sides times ``m**2``."""
        return construct(self.tag, make_pair(CongruentCurve(self.n), self.x, self.z), self.k * m * m)

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "n": str(self.n),
            "x": format_rational(self.x),
            "z": format_rational(self.z),
            "k": format_rational(self.k),
            "unknowns": {s: str(self.unknowns[s]) for s in self.tag.symbols},
            "triangle1": [str(v) for v in self.triangle1],
            "triangle2": [str(v) for v in self.triangle2],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SolutionRecord":
        tag = SystemTag(data["tag"])
        return cls(
            tag=tag,
            n=int(data["n"]),
            x=parse_rational(data["x"]),
            z=parse_rational(data["z"]),
            k=parse_rational(data["k"]),
            unknowns={s: int(data["unknowns"][s]) for s in tag.symbols},
            triangle1=tuple(int(v) for v in data["triangle1"]),
            triangle2=tuple(int(v) for v in data["triangle2"]),
        )


def _factor_hints(pair: PairSelection) -> list[int]:
    """Integers sharing factors with the denominators ``scale_factor`` must factor.

    The square classes of ``x``, ``x +- N`` (and likewise for ``z``) only
    involve primes of ``2N``; stripping those leaves a perfect square whose
    root exposes the large primes.
    """
    n, x, z = pair.curve.n, pair.x, pair.z
    small = [p for p in (2, *squarefree_part(n).sf_primes) if p > 1]
    hints = []
    for q in (x, z, x + n, x - n, z + n, z - n, pair.sqrt_xz, x + z, x - z, x * z + n * n, x * z - n * n):
        for part in (abs(q.numerator), q.denominator):
            for p in small:
                while part % p == 0:
                    part //= p
            root, exact = isqrt(part)
            hints.append(root if exact else part)
    return [h for h in hints if h > 1]


def _integer(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise InvalidScaleFactor(f"{what} = {format_rational(value)} is not an integer")
    return value.numerator


def construct(tag: SystemTag, pair: PairSelection, k=None, budget=None) -> SolutionRecord:
    """Build the record for ``tag``; ``k`` defaults to the minimal scale factor.

    ``budget`` caps the rho iterations spent on that minimum.
    """
    tag = SystemTag(tag)
    n = pair.curve.n
    squares, sides = _family(tag, n, pair.x, pair.z, pair.sqrt_xz)
    if any(v == 0 for v in sides.values()):
        raise DegenerateOutput(f"{tag.value}: a side vanishes for x = {format_rational(pair.x)}, z = {format_rational(pair.z)}")
    if k is None:
        k = scale_factor(squares.values(), sides.values(), _factor_hints(pair), budget)
    else:
        k = as_rational(k)
        if k <= 0:
            raise InvalidScaleFactor("k must be positive")
        for name, t in squares.items():
            if not (k * t >= 0 and is_perfect_square(k * t) and (k * t).denominator == 1):
                raise InvalidScaleFactor(f"k * {name}^2 = {format_rational(k * t)} is not an integer square")
    roots = {name: _integer(sqrt_exact(k * t), name) for name, t in squares.items()}
    scaled = {name: abs(_integer(k * v, name)) for name, v in sides.items()}
    if roots["p"] == roots["q"] or ("r" in roots and roots["r"] == roots["s"]):
        raise DegenerateOutput(f"{tag.value}: repeated unknowns {roots}")
    free = {"c": scaled["c1"]} if tag is SystemTag.HYP_LEGS else {"a": scaled["a1"]}
    unknowns = {**roots, **free}
    return SolutionRecord(
        tag=tag,
        n=n,
        x=pair.x,
        z=pair.z,
        k=k,
        unknowns={s: unknowns[s] for s in tag.symbols},
        triangle1=(scaled["a1"], scaled["b1"], scaled["c1"]),
        triangle2=(scaled["a2"], scaled["b2"], scaled["c2"]),
    )


def theorem1(pair: PairSelection, k=None) -> SolutionRecord:
    """Common leg ``a``, hypotenuses ``p^2 + q^2`` and ``p^2 - q^2``."""
    return construct(SystemTag.LEGS_HYP, pair, k)


def theorem2(pair: PairSelection, k=None) -> SolutionRecord:
    """Common hypotenuse ``c``, legs ``p^2 + q^2`` and ``p^2 - q^2``."""
    return construct(SystemTag.HYP_LEGS, pair, k)


def theorem3(pair: PairSelection, k=None) -> SolutionRecord:
    """Common leg ``a``, other legs ``p^2 + q^2`` and ``p^2 - q^2``."""
    return construct(SystemTag.LEGS_LEGS, pair, k)


def theorem4(pair: PairSelection, k=None) -> SolutionRecord:
    """``theorem1`` and ``theorem3`` at once: hypotenuses ``p^2 +- q^2``, legs ``r^2 +- s^2``.

    Needs all four products ``(x +- N)(z +- N)`` in one square class, which
    holds whenever ``x`` and ``z`` both satisfy the Fibonacci conditions.
    """
    return construct(SystemTag.DOUBLE, pair, k)


THEOREMS = {
    SystemTag.LEGS_HYP: theorem1,
    SystemTag.HYP_LEGS: theorem2,
    SystemTag.LEGS_LEGS: theorem3,
    SystemTag.DOUBLE: theorem4,
}


def theorem5_check(p: int, q: int, a: int, r: int, s: int) -> bool:
    """``p^4 + q^4 - a^2 == r^4 + s^4``; see :func:`products_match` for ``pq == rs``."""
    return p**4 + q**4 - a * a == r**4 + s**4


def products_match(p: int, q: int, r: int, s: int) -> bool:
    return p * q == r * s


def _is_square_int(n: int) -> bool:
    return n >= 0 and isqrt(n)[1]


def satisfies_system(tag: SystemTag, unknowns: Mapping[str, int]) -> bool:
    """Defining equations plus nontriviality, checked on integers alone."""
    tag = SystemTag(tag)
    try:
        vals = {s: unknowns[s] for s in tag.symbols}
    except KeyError:
        return False
    if any(not isinstance(v, int) or v <= 0 for v in vals.values()):
        return False
    p2, q2 = vals["p"] ** 2, vals["q"] ** 2
    if p2 == q2:
        return False
    plus, minus = p2 + q2, p2 - q2
    if tag is SystemTag.LEGS_HYP:
        a2 = vals["a"] ** 2
        d1, d2 = plus * plus - a2, minus * minus - a2
        return d1 > 0 and d2 > 0 and _is_square_int(d1) and _is_square_int(d2)
    if tag is SystemTag.HYP_LEGS:
        c2 = vals["c"] ** 2
        d1, d2 = c2 - plus * plus, c2 - minus * minus
        return d1 > 0 and d2 > 0 and _is_square_int(d1) and _is_square_int(d2)
    if tag is SystemTag.LEGS_LEGS:
        a2 = vals["a"] ** 2
        return _is_square_int(a2 + plus * plus) and _is_square_int(a2 + minus * minus)
    r2, s2, a2 = vals["r"] ** 2, vals["s"] ** 2, vals["a"] ** 2
    if r2 == s2:
        return False
    return plus * plus - a2 == (r2 + s2) ** 2 and minus * minus - a2 == (r2 - s2) ** 2


def _tag_shape_holds(rec: SolutionRecord) -> bool:
    (a1, b1, c1), (a2, b2, c2) = rec.triangle1, rec.triangle2
    u = rec.unknowns
    plus, minus = u["p"] ** 2 + u["q"] ** 2, abs(u["p"] ** 2 - u["q"] ** 2)
    if rec.tag is SystemTag.LEGS_HYP:
        return a1 == a2 == u["a"] and c1 == plus and c2 == minus
    if rec.tag is SystemTag.HYP_LEGS:
        return c1 == c2 == u["c"] and a1 == plus and a2 == minus
    if rec.tag is SystemTag.LEGS_LEGS:
        return a1 == a2 == u["a"] and b1 == plus and b2 == minus
    rs_plus, rs_minus = u["r"] ** 2 + u["s"] ** 2, abs(u["r"] ** 2 - u["s"] ** 2)
    return a1 == a2 == u["a"] and c1 == plus and c2 == minus and b1 == rs_plus and b2 == rs_minus


def verify_record(rec: SolutionRecord) -> bool:
    """Re-derive everything from ``(tag, n, x, z, k)`` and check it all."""
    try:
        rebuilt = construct(rec.tag, make_pair(CongruentCurve(rec.n), rec.x, rec.z), rec.k)
    except (CongruentError, ValueError, TypeError):
        return False
    if dict(rebuilt.unknowns) != dict(rec.unknowns):
        return False
    if rebuilt.triangle1 != tuple(rec.triangle1) or rebuilt.triangle2 != tuple(rec.triangle2):
        return False
    for a, b, c in (rec.triangle1, rec.triangle2):
        if min(a, b, c) <= 0 or a * a + b * b != c * c:
            return False
    return _tag_shape_holds(rec) and satisfies_system(rec.tag, rec.unknowns)


def parametrization_identities(rec: SolutionRecord) -> list[tuple[str, Fraction, Fraction]]:
    """Scale-free ratio identities linking the record to ``xi, zeta``.

    Returns ``(name, lhs, rhs)`` triples that must agree exactly. The
    hyp-legs identities pair ``p^2 + q^2`` with ``zeta`` and the legs-legs
    ones use ``1/xi, 1/zeta``; those are the arrangements that agree with
    the constructed integers.
    """
    xi, zeta = xi_zeta(make_pair(CongruentCurve(rec.n), rec.x, rec.z))
    u = rec.unknowns
    p2, q2 = Fraction(u["p"] ** 2), Fraction(u["q"] ** 2)
    out = []

    def hyperbola_plus(prefix, a, r2, s2):
        out.append((f"{prefix}(p2+q2)/a", (r2 + s2) / a, (1 + xi * xi) / (2 * xi)))
        out.append((f"{prefix}(p2-q2)/a", (r2 - s2) / a, (1 + zeta * zeta) / (2 * zeta)))
        out.append((f"{prefix}p2", r2, a * (xi + zeta) * (1 + xi * zeta) / (4 * xi * zeta)))
        out.append((f"{prefix}q2", s2, a * (zeta - xi) * (1 - xi * zeta) / (4 * xi * zeta)))

    def hyperbola_minus(prefix, a, r2, s2):
        ixi, izeta = 1 / xi, 1 / zeta
        out.append((f"{prefix}(p2+q2)/a", (r2 + s2) / a, (1 - ixi * ixi) / (2 * ixi)))
        out.append((f"{prefix}(p2-q2)/a", (r2 - s2) / a, (1 - izeta * izeta) / (2 * izeta)))
        out.append((f"{prefix}p2", r2, a * (ixi + izeta) * (1 - ixi * izeta) / (4 * ixi * izeta)))
        out.append((f"{prefix}q2", s2, a * (izeta - ixi) * (1 + ixi * izeta) / (4 * ixi * izeta)))

    if rec.tag is SystemTag.LEGS_HYP:
        hyperbola_plus("", Fraction(u["a"]), p2, q2)
    elif rec.tag is SystemTag.LEGS_LEGS:
        hyperbola_minus("", Fraction(u["a"]), p2, q2)
    elif rec.tag is SystemTag.DOUBLE:
        a = Fraction(u["a"])
        hyperbola_plus("", a, p2, q2)
        hyperbola_minus("rs:", a, Fraction(u["r"] ** 2), Fraction(u["s"] ** 2))
    else:
        c = Fraction(u["c"])
        denom = (1 + xi * xi) * (1 + zeta * zeta)
        out.append(("(p2+q2)/c", (p2 + q2) / c, 2 * zeta / (1 + zeta * zeta)))
        out.append(("(p2-q2)/c", (p2 - q2) / c, 2 * xi / (1 + xi * xi)))
        out.append(("p2", p2, c * (xi + zeta) * (1 + xi * zeta) / denom))
        out.append(("q2", q2, c * (zeta - xi) * (1 - xi * zeta) / denom))
    return out


def _root_or_none(n: int) -> int | None:
    if n < 0:
        return None
    root, exact = isqrt(n)
    return root if exact else None


def _triangles_from_unknowns(tag: SystemTag, u: Mapping[str, int]):
    p2, q2 = u["p"] ** 2, u["q"] ** 2
    plus, minus = p2 + q2, abs(p2 - q2)
    if tag is SystemTag.HYP_LEGS:
        c = u["c"]
        return (plus, _root_or_none(c * c - plus * plus), c), (minus, _root_or_none(c * c - minus * minus), c)
    a = u["a"]
    if tag is SystemTag.LEGS_LEGS:
        return (a, plus, _root_or_none(a * a + plus * plus)), (a, minus, _root_or_none(a * a + minus * minus))
    return (a, _root_or_none(plus * plus - a * a), plus), (a, _root_or_none(minus * minus - a * a), minus)


def normalized_unknowns(tag: SystemTag, values: Mapping[str, int]) -> dict[str, int]:
    out = dict(values)
    if out["p"] < out["q"]:
        out["p"], out["q"] = out["q"], out["p"]
    if tag is SystemTag.DOUBLE and out["r"] < out["s"]:
        out["r"], out["s"] = out["s"], out["r"]
    return out


def record_from_unknowns(tag: SystemTag, unknowns: Mapping[str, int]) -> SolutionRecord | None:
    """Recover ``(N, x, z, k)`` for an integer solution, or ``None`` if it lies outside the family.

    The two triangles determine ``xi`` and ``zeta`` up to inversion; each
    of the four choices fixes ``x/N`` and ``z/N``, and ``N`` is then the
    squarefree part of ``u^3 - u`` for ``u = x/N``. A record reproducing the
    unknowns in their given order is preferred over its x/z mirror.
    """
    tag = SystemTag(tag)
    if not satisfies_system(tag, unknowns):
        return None
    t1, t2 = _triangles_from_unknowns(tag, unknowns)
    if tag is SystemTag.HYP_LEGS:
        (a1, b1, c), (a2, b2, _) = t1, t2
        xis = {Fraction(c + b2, a2), Fraction(c - b2, a2)}
        zetas = {Fraction(c + b1, a1), Fraction(c - b1, a1)}
    else:
        (a, b1, c1), (_, b2, c2) = t1, t2
        xis = {Fraction(c1 + b1, a), Fraction(c1 - b1, a)}
        zetas = {Fraction(c2 + b2, a), Fraction(c2 - b2, a)}
    target = normalized_unknowns(tag, unknowns)
    free = tag.free_symbol
    fallback = None
    for xi in sorted(xis):
        for zeta in sorted(zetas):
            if xi <= 0 or zeta <= 0:
                continue
            ratio, product = xi / zeta, xi * zeta
            cubic = ratio**3 - ratio
            if cubic <= 0:
                continue
            try:
                n = squarefree_part(cubic).sf
                pair = make_pair(CongruentCurve(n), n * ratio, n * product)
                base = construct(tag, pair)
            except (CongruentError, ValueError):
                continue
            # the free side scales with k, i.e. by m^2
            mult = Fraction(unknowns[free], base.unknowns[free])
            if mult.denominator != 1 or not is_perfect_square(mult):
                continue
            m = sqrt_exact(mult).numerator
            rec = base if m == 1 else base.scaled(m)
            if dict(rec.unknowns) == dict(unknowns):
                return rec
            if fallback is None and normalized_unknowns(tag, rec.unknowns) == target:
                # mirror solution: x and z swapped, which swaps p/q or r/s
                fallback = rec
    return fallback
