"""Exact integer and rational helpers.

Rationals are plain :class:`fractions.Fraction` values, which already keep
lowest terms with a positive denominator. Nothing here touches floats.
"""

from __future__ import annotations

import math
import random
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational as _RationalABC

from .errors import (
    FactorizationLimitExceeded,
    NegativeInput,
    NotASquare,
    ZeroDenominator,
    ZeroInput,
)

Rational = Fraction

TRIAL_DIVISION_LIMIT = 10**6
DEFAULT_RHO_BUDGET = 200_000

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def _as_int(value, name):
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    return int(value)


def make_rational(numerator, denominator=1) -> Fraction:
    numerator = _as_int(numerator, "numerator")
    denominator = _as_int(denominator, "denominator")
    if denominator == 0:
        raise ZeroDenominator(f"{numerator}/0")
    return Fraction(numerator, denominator)


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and "a/b" strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num, den = m.group(1), m.group(2)
    return make_rational(int(num), int(den) if den is not None else 1)


def format_rational(q) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def isqrt(n) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), exact)``."""
    n = _as_int(n, "n")
    if n < 0:
        raise NegativeInput(f"isqrt of negative integer {n}")
    root = math.isqrt(n)
    return root, root * root == n


def is_perfect_square(q) -> bool:
    q = as_rational(q)
    if q < 0:
        return False
    return isqrt(q.numerator)[1] and isqrt(q.denominator)[1]


def sqrt_exact(q) -> Fraction:
    q = as_rational(q)
    if q < 0:
        raise NotASquare(f"{format_rational(q)} is negative")
    num, num_ok = isqrt(q.numerator)
    den, den_ok = isqrt(q.denominator)
    if not (num_ok and den_ok):
        raise NotASquare(f"{format_rational(q)} is not the square of a rational")
    return Fraction(num, den)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    limit = TRIAL_DIVISION_LIMIT
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i in range(limit + 1) if sieve[i])


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, overwhelmingly likely above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_split(n: int, rng: random.Random, budget: int) -> tuple[int | None, int]:
    """One Pollard-Brent run; returns (factor or None, iterations used)."""
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        used += r
        r *= 2
        if used > budget:
            return None, used
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return (g if g != n else None), used


def integer_root(n: int, k: int) -> tuple[int, bool]:
    """``(floor(n ** (1/k)), exact)`` by integer Newton iteration."""
    if n < 2 or k == 1:
        return n, True
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x, x**k == n


def _perfect_power(n: int) -> tuple[int, int] | None:
    """``(root, k)`` with ``root**k == n``, trying the largest ``k >= 2`` first.

    Only meant for ``n`` free of primes below 10**6, so roots stay above it.
    """
    for k in range(n.bit_length() // 19, 1, -1):
        root, exact = integer_root(n, k)
        if exact:
            return root, k
    return None


def factorize(n, budget: int | None = None, hints=()) -> list[int]:
    """Prime factors of ``n`` with multiplicity, ascending.

    Trial division by primes below 10**6, then Pollard-Brent rho with a
    total iteration budget shared across all cofactors. ``hints`` are
    integers likely to share factors with ``n``; composite cofactors are
    split by gcd against them before rho is tried.
    """
    n = _as_int(n, "n")
    if n < 1:
        raise NegativeInput(f"factorize expects a positive integer, got {n}")
    budget = DEFAULT_RHO_BUDGET if budget is None else budget
    factors: list[int] = []
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            factors.append(p)
            n //= p
    if n == 1:
        return factors
    rng = random.Random(n)
    remaining = budget
    stack = [n]
    while stack:
        m = stack.pop()
        if m < TRIAL_DIVISION_LIMIT**2 or is_probable_prime(m):
            factors.append(m)
            continue
        power = _perfect_power(m)
        if power is not None:
            # rho cannot split a prime power
            stack.extend([power[0]] * power[1])
            continue
        split = next((g for g in (math.gcd(m, h) for h in hints) if 1 < g < m), None)
        if split is not None:
            stack.extend((split, m // split))
            continue
        while True:
            if remaining <= 0:
                raise FactorizationLimitExceeded(
                    f"rho budget of {budget} iterations exhausted on {m}"
                )
            d, used = _brent_split(m, rng, remaining)
            remaining -= used
            if d is not None:
                stack.extend((d, m // d))
                break
    factors.sort()
    return factors


def factor_exponents(n, budget: int | None = None, hints=()) -> dict[int, int]:
    return dict(Counter(factorize(n, budget, hints)))


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``value == sf * root**2`` with ``|sf|`` squarefree."""

    sf: int
    root: Fraction

    @property
    def value(self) -> Fraction:
        return self.sf * self.root * self.root

    @property
    def sf_primes(self) -> list[int]:
        return factorize(abs(self.sf)) if abs(self.sf) > 1 else []


def squarefree_part(q, budget: int | None = None) -> SquarefreeDecomposition:
    q = as_rational(q)
    if q == 0:
        raise ZeroInput("zero has no squarefree part")
    sign = -1 if q < 0 else 1
    # n/d == n*d / d**2, and n, d are coprime so their kernels multiply
    sf = sign * squarefree_kernel(abs(q.numerator), budget) * squarefree_kernel(q.denominator, budget)
    return SquarefreeDecomposition(sf, sqrt_exact(q / sf))


def same_square_class(a, b) -> bool:
    """True when ``a * b`` is a nonzero rational square (no factoring needed)."""
    a, b = as_rational(a), as_rational(b)
    return a != 0 and b != 0 and is_perfect_square(a * b)


def _coprime_base(values: list[int]) -> list[int]:
    base = [v for v in values if v > 1]
    changed = True
    while changed:
        changed = False
        for i in range(len(base)):
            for j in range(i + 1, len(base)):
                g = math.gcd(base[i], base[j])
                if g > 1:
                    a, b = base[i] // g, base[j] // g
                    base = [v for t, v in enumerate(base) if t not in (i, j)]
                    base.extend(v for v in (g, a, b) if v > 1)
                    changed = True
                    break
            if changed:
                break
    return sorted(set(base))


class _Rho:
    """Pollard-Brent splitter sharing one iteration budget."""

    def __init__(self, seed, budget=None):
        self.budget = DEFAULT_RHO_BUDGET if budget is None else budget
        self.remaining = self.budget
        self.rng = random.Random(seed)

    def split(self, c: int) -> int:
        while self.remaining > 0:
            d, used = _brent_split(c, self.rng, self.remaining)
            self.remaining -= used
            if d is not None:
                return d
        raise FactorizationLimitExceeded(f"rho budget of {self.budget} iterations exhausted on {c}")


def _split_base(c: int, rho: _Rho) -> list[tuple[int, int]]:
    # one nontrivial split refined to coprime pieces with their exponents in c
    d = rho.split(c)
    out = []
    for b in _coprime_base([d, c // d]):
        e = 0
        while c % b == 0:
            c //= b
            e += 1
        out.append((b, e))
    return out


def _root_ceiling_power(c: int, e: int, rho: _Rho) -> int:
    """Smallest ``m`` with ``c**e | m**2`` for ``c`` free of primes below 10**6."""
    if c == 1:
        return 1
    if is_probable_prime(c):
        return c ** ((e + 1) // 2)
    power = _perfect_power(c)
    if power is not None:
        return _root_ceiling_power(power[0], e * power[1], rho)
    if c < TRIAL_DIVISION_LIMIT**3:
        # two distinct primes above the trial-division limit
        return c ** ((e + 1) // 2)
    m = 1
    for b, f in _split_base(c, rho):
        m *= _root_ceiling_power(b, f * e, rho)
    return m


def _large_kernel(c: int, rho: _Rho) -> int:
    """Squarefree part of ``c``, which has no prime factor below 10**6."""
    if c == 1 or is_probable_prime(c):
        return c
    power = _perfect_power(c)
    if power is not None:
        root, k = power
        return _large_kernel(root, rho) if k % 2 else 1
    if c < TRIAL_DIVISION_LIMIT**3:
        return c
    out = 1
    for b, f in _split_base(c, rho):
        if f % 2:
            out *= _large_kernel(b, rho)
    return out


def squarefree_kernel(n: int, budget: int | None = None) -> int:
    """Squarefree ``s`` with ``n == s * r**2``; factors only what it must."""
    n = _as_int(n, "n")
    if n < 1:
        raise NegativeInput(f"expected a positive integer, got {n}")
    s = 1
    for p in _small_primes():
        if p * p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            s *= p
    if n < TRIAL_DIVISION_LIMIT**2:
        return s * n
    return s * _large_kernel(n, _Rho(n, budget))


def min_root_multiple(b: int, budget: int | None = None, hints=()) -> int:
    """Smallest positive ``m`` with ``b | m**2``.

    Needs the square part of ``b``, but not always a full factorization:
    after trial division the cofactor is split against ``hints`` into a
    coprime base, and base elements whose shape is forced (prime, perfect
    power, or a product of two large primes) are never factored.
    """
    b = _as_int(b, "b")
    if b < 1:
        raise NegativeInput(f"expected a positive integer, got {b}")
    m = 1
    for p in _small_primes():
        if p * p > b:
            break
        e = 0
        while b % p == 0:
            b //= p
            e += 1
        if e:
            m *= p ** ((e + 1) // 2)
    if b == 1:
        return m
    if b < TRIAL_DIVISION_LIMIT**2:
        return m * b
    base = _coprime_base([b] + [math.gcd(b, h) for h in hints])
    rho = _Rho(b, budget)
    for c in base:
        e = 0
        while b % c == 0:
            b //= c
            e += 1
        m *= _root_ceiling_power(c, e, rho)
    assert b == 1
    return m
