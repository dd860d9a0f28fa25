"""Brute-force search for the triangle-pair systems, independent of the curve.

Every system pins the difference of two squared sides to ``(2pq)^2``:
hypotenuses minus legs for common-leg systems, leg differences for the
common-hypotenuse one. So for each ``p > q`` the candidates are the
factorizations ``(2pq)^2 = d * e`` with ``d < e`` of equal parity. Each
candidate is then finished off with one exact square test. For the double
system the same identity forces ``pq = rs``, so ``(r, s)`` ranges over
the divisor pairs of ``pq``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .arith import isqrt
from .errors import InvalidIdentity
from .systems import SolutionRecord, SystemTag, normalized_unknowns

Hit = tuple[int, ...]


@dataclass(frozen=True)
class BiquadraticIdentity:
    """``u^4 + v^4 == e^4 + f^4 + g^4``."""

    left: tuple[int, int]
    right: tuple[int, int, int]


DICKSON_IDENTITIES = (
    BiquadraticIdentity((7, 28), (3, 20, 26)),
    BiquadraticIdentity((51, 76), (5, 42, 78)),
    BiquadraticIdentity((37, 38), (25, 26, 42)),
)


class QuarticSolution(NamedTuple):
    p: int
    q: int
    a: int
    r: int
    s: int
    pq_equals_rs: bool


def verify_biquadratic(identity: BiquadraticIdentity) -> bool:
    u, v = identity.left
    e, f, g = identity.right
    return u**4 + v**4 == e**4 + f**4 + g**4


def biquadratic_to_quartic(identity: BiquadraticIdentity) -> QuarticSolution:
    """Move ``g^4`` to the left: ``u^4 + v^4 - (g^2)^2 = e^4 + f^4``."""
    if not verify_biquadratic(identity):
        raise InvalidIdentity(f"{identity} does not balance")
    u, v = identity.left
    e, f, g = identity.right
    return QuarticSolution(u, v, g * g, e, f, u * v == e * f)


@dataclass
class SearchReport:
    tag: SystemTag
    bound_pq: int
    bound_side: int
    hits: list[Hit]
    raw: list[Hit]
    elapsed: float

    @property
    def bound(self) -> tuple[int, int]:
        return self.bound_pq, self.bound_side

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "symbols": list(self.tag.symbols),
            "bound_pq": self.bound_pq,
            "bound_side": self.bound_side,
            "hits": [[str(v) for v in h] for h in self.hits],
            "raw": [[str(v) for v in h] for h in self.raw],
            "elapsed": round(self.elapsed, 6),
        }


def _spf_table(limit: int) -> list[int]:
    spf = list(range(limit + 1))
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def _exponents(n: int, spf: list[int], into: dict[int, int], weight: int = 1) -> None:
    while n > 1:
        p = spf[n]
        n //= p
        into[p] = into.get(p, 0) + weight


def _divisors(exponents: dict[int, int]) -> list[int]:
    divs = [1]
    for p, e in exponents.items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return divs


def _square_root(n: int) -> int | None:
    if n <= 0:
        return None
    root, exact = isqrt(n)
    return root if exact else None


def primitive(tag: SystemTag, hit: Hit) -> Hit:
    """Divide by the largest ``t`` with ``t`` | every linear unknown and ``t^2`` | the free side."""
    tag = SystemTag(tag)
    values = dict(zip(tag.symbols, hit))
    free = tag.free_symbol
    g = 0
    for s in tag.symbols:
        if s != free:
            g = math.gcd(g, values[s])
    for t in range(g, 0, -1):
        if g % t == 0 and values[free] % (t * t) == 0:
            break
    return tuple(v // (t * t) if s == free else v // t for s, v in zip(tag.symbols, hit))


def _search_pair(tag: SystemTag, p: int, q: int, bound_pq: int, bound_side: int, spf) -> Iterable[Hit]:
    p2, q2 = p * p, q * q
    plus, minus = p2 + q2, p2 - q2
    if tag is SystemTag.DOUBLE:
        exps: dict[int, int] = {}
        _exponents(p, spf, exps)
        _exponents(q, spf, exps)
        pq = p * q
        for s in sorted(_divisors(exps)):
            r = pq // s
            if s >= r:
                break
            if r > bound_pq:
                continue
            rs_plus, rs_minus = r * r + s * s, r * r - s * s
            a = _square_root(plus * plus - rs_plus * rs_plus)
            if a is not None and a <= bound_side and minus * minus - a * a == rs_minus * rs_minus:
                yield (p, q, a, r, s)
        return
    exps = {2: 2}
    _exponents(p, spf, exps, 2)
    _exponents(q, spf, exps, 2)
    big = 4 * p2 * q2
    for d in sorted(_divisors(exps)):
        e = big // d
        if d >= e:
            break
        if (d - e) % 2:
            continue
        hi, lo = (e + d) // 2, (e - d) // 2
        if tag is SystemTag.LEGS_HYP:
            # hi, lo are the other legs b1, b2
            a = _square_root(plus * plus - hi * hi)
            if a is not None and a <= bound_side:
                yield (a, p, q)
        elif tag is SystemTag.HYP_LEGS:
            # b2 = hi, b1 = lo
            c = _square_root(plus * plus + lo * lo)
            if c is not None and c <= bound_side:
                yield (c, p, q)
        else:
            # hi, lo are the hypotenuses c1, c2
            a = _square_root(hi * hi - plus * plus)
            if a is not None and a <= bound_side and lo * lo - minus * minus == a * a:
                yield (a, p, q)


def brute_force_system(tag: SystemTag, bound_pq: int, bound_side: int) -> SearchReport:
    """All nontrivial solutions with ``q < p <= bound_pq``, free side ``<= bound_side``.

    Raw hits are normalised to ``p > q`` (and ``r > s``); ``hits`` holds
    their distinct primitive forms. Both lists are sorted.
    """
    tag = SystemTag(tag)
    if bound_pq < 1 or bound_side < 1:
        raise ValueError("bounds must be positive")
    start = time.perf_counter()
    spf = _spf_table(max(bound_pq, 2))
    raw = []
    for p in range(2, bound_pq + 1):
        for q in range(1, p):
            raw.extend(_search_pair(tag, p, q, bound_pq, bound_side, spf))
    raw.sort()
    hits = sorted({primitive(tag, h) for h in raw})
    return SearchReport(tag, bound_pq, bound_side, hits, raw, time.perf_counter() - start)


def brute_force_naive(tag: SystemTag, bound_pq: int, bound_side: int) -> list[Hit]:
    """Direct scan over every unknown (the double system solves for ``a``); tiny bounds only."""
    tag = SystemTag(tag)
    out = set()

    def sq(n):
        return n > 0 and isqrt(n)[1]

    for p in range(1, bound_pq + 1):
        for q in range(1, bound_pq + 1):
            if p == q:
                continue
            plus, minus = p * p + q * q, p * p - q * q
            if tag is SystemTag.DOUBLE:
                for r in range(1, bound_pq + 1):
                    for s in range(1, bound_pq + 1):
                        if r == s:
                            continue
                        a2 = plus**2 - (r * r + s * s) ** 2
                        if sq(a2) and isqrt(a2)[0] <= bound_side and minus**2 - a2 == (r * r - s * s) ** 2:
                            out.add((max(p, q), min(p, q), isqrt(a2)[0], max(r, s), min(r, s)))
                continue
            for side in range(1, bound_side + 1):
                s2 = side * side
                if tag is SystemTag.LEGS_HYP:
                    ok = sq(plus**2 - s2) and sq(minus**2 - s2)
                elif tag is SystemTag.HYP_LEGS:
                    ok = sq(s2 - plus**2) and sq(s2 - minus**2)
                else:
                    ok = sq(s2 + plus**2) and sq(s2 + minus**2)
                if ok:
                    out.add((side, max(p, q), min(p, q)))
    return sorted(out)


@dataclass
class CrossCheckReport:
    matched: list[SolutionRecord] = field(default_factory=list)
    misses: list[SolutionRecord] = field(default_factory=list)
    out_of_range: list[SolutionRecord] = field(default_factory=list)
    unmatched_hits: dict[SystemTag, list[Hit]] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return not self.misses

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "matched": len(self.matched),
            "misses": [r.to_json() for r in self.misses],
            "out_of_range": len(self.out_of_range),
            "unmatched_hits": {
                t.value: [[str(v) for v in h] for h in hs] for t, hs in self.unmatched_hits.items()
            },
        }


def _in_bounds(rec: SolutionRecord, bound_pq: int, bound_side: int) -> bool:
    free = rec.tag.free_symbol
    return all(
        v <= (bound_side if s == free else bound_pq) for s, v in rec.unknowns.items()
    )


def cross_check(records: Iterable[SolutionRecord], bound_pq: int, bound_side: int, reports=None) -> CrossCheckReport:
    """Every in-bounds record must appear among the oracle's raw hits."""
    records = list(records)
    reports = dict(reports or {})
    result = CrossCheckReport()
    produced: dict[SystemTag, set[Hit]] = {}
    for rec in records:
        if not _in_bounds(rec, bound_pq, bound_side):
            result.out_of_range.append(rec)
            continue
        if rec.tag not in reports:
            reports[rec.tag] = brute_force_system(rec.tag, bound_pq, bound_side)
        norm = normalized_unknowns(rec.tag, rec.unknowns)
        hit = tuple(norm[s] for s in rec.tag.symbols)
        produced.setdefault(rec.tag, set()).add(primitive(rec.tag, hit))
        if hit in set(reports[rec.tag].raw):
            result.matched.append(rec)
        else:
            result.misses.append(rec)
    for tag, report in reports.items():
        result.unmatched_hits[tag] = [h for h in report.hits if h not in produced.get(tag, set())]
    return result
