"""Exact real-root machinery: Sturm chains, isolation, sign decisions.

Everything here runs over :class:`fractions.Fraction`; no rounding happens.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .intervals import RationalInterval
from .poly import UniPoly, poly_gcd, squarefree_decomposition, squarefree_part


def cauchy_bound(p: UniPoly) -> Fraction:
    """``1 + max_k |c_k / c_n|``: every complex root has modulus at most this."""
    if p.is_zero():
        raise ValueError("zero polynomial has no root bound")
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def sturm_chain(f0: UniPoly, f1: UniPoly) -> list[UniPoly]:
    """Generalized Sturm chain ``f0, f1, -rem(f0, f1), ...`` (stops before zero)."""
    chain = [f0, f1]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    return chain[:-1]


def _variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def variations_at(chain: Sequence[UniPoly], x) -> int:
    """Sign variations of the chain at ``x`` (a rational, or ``'+inf'`` / ``'-inf'``)."""
    if x == "+inf":
        return _variations([p.sign_at_infinity(True) for p in chain])
    if x == "-inf":
        return _variations([p.sign_at_infinity(False) for p in chain])
    return _variations([_sign(p(x)) for p in chain])


def cauchy_index(num: UniPoly, den: UniPoly, a="-inf", b="+inf") -> int:
    """Cauchy index of ``num/den`` over ``(a, b)``: jumps -inf->+inf count +1."""
    if den.is_zero():
        raise ValueError("denominator is zero")
    if num.is_zero():
        return 0
    chain = sturm_chain(den, num)
    return variations_at(chain, a) - variations_at(chain, b)


class SturmCounter:
    """Counts distinct real roots of a polynomial in half-open intervals."""

    def __init__(self, p: UniPoly):
        if p.is_zero():
            raise ValueError("zero polynomial has no isolated roots")
        self.poly = squarefree_part(p)
        self.chain = sturm_chain(self.poly, self.poly.derivative())

    def variations(self, x: Fraction) -> int:
        return variations_at(self.chain, x)

    def count(self, a: Fraction, b: Fraction) -> int:
        """Number of distinct roots in ``(a, b]``."""
        return self.variations(a) - self.variations(b)

    def count_open(self, a: Fraction, b: Fraction) -> int:
        return self.count(a, b) - (1 if self.poly(b) == 0 else 0)


def isolate_real_roots(
    p: UniPoly,
    domain: RationalInterval,
    max_width: Optional[Fraction] = None,
) -> list[RationalInterval]:
    """Disjoint isolating intervals for the distinct real roots of ``p`` in ``domain``.

    A returned interval either is a point ``[r, r]`` (an exact rational root)
    or has non-root rational endpoints and contains exactly one root in its
    interior.  Output is sorted left to right.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    sc = SturmCounter(p)
    q = sc.poly
    lo, hi = domain.lo, domain.hi
    out: list[RationalInterval] = []
    if q.degree <= 0:
        return out
    if q(lo) == 0:
        out.append(RationalInterval(lo, lo))
    if lo == hi:
        return out

    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = sc.count_open(a, b)
        if n == 0:
            continue
        if n == 1 and q(a) != 0 and q(b) != 0:
            out.append(RationalInterval(a, b))
            continue
        m = (a + b) / 2
        if q(m) == 0:
            out.append(RationalInterval(m, m))
        stack.append((a, m))
        stack.append((m, b))
    if q(hi) == 0:
        out.append(RationalInterval(hi, hi))
    out.sort(key=lambda iv: iv.lo)
    out = _expose_rational_roots(q, out)
    if max_width is not None:
        out = [refine_root(q, iv, max_width) for iv in out]
    return out


_MAX_DENOMINATOR_BITS = 64


def _expose_rational_roots(q: UniPoly, roots: list[RationalInterval]) -> list[RationalInterval]:
    """Replace isolating intervals around rational roots by the exact point.

    A rational root ``r/s`` of the integer-cleared ``q`` has ``s | lc``.  Two
    fractions with denominators at most ``N`` are ``>= 1/N^2`` apart, so once
    an interval is narrower than that, the closest such fraction to its
    midpoint is the only candidate.
    """
    den = 1
    for c in q.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    n = abs(q.lc * den).numerator
    if n.bit_length() > _MAX_DENOMINATOR_BITS:
        return roots
    out = []
    for iv in roots:
        if not iv.is_point():
            narrow = refine_root(q, iv, Fraction(1, 2 * n * n))
            if narrow.is_point():
                iv = narrow
            else:
                cand = narrow.mid.limit_denominator(n)
                if narrow.lo < cand < narrow.hi and q(cand) == 0:
                    iv = RationalInterval(cand, cand)
        out.append(iv)
    return out


def refine_root(p: UniPoly, iv: RationalInterval, max_width: Fraction) -> RationalInterval:
    """Bisect an isolating interval of squarefree ``p`` down to ``max_width``."""
    a, b = iv.lo, iv.hi
    if a == b:
        return iv
    sa = _sign(p(a))
    while b - a > max_width:
        m = (a + b) / 2
        sm = _sign(p(m))
        if sm == 0:
            return RationalInterval(m, m)
        if sm == sa:
            a = m
        else:
            b = m
    return RationalInterval(a, b)


def isolate_with_multiplicity(
    p: UniPoly, domain: RationalInterval
) -> list[tuple[RationalInterval, int]]:
    """Isolating intervals paired with root multiplicities (via Yun's decomposition)."""
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    out = []
    for f, k in squarefree_decomposition(p):
        out.extend((iv, k) for iv in isolate_real_roots(f, domain))
    out.sort(key=lambda t: t[0].lo)
    return out


def count_real_roots(
    p: UniPoly, a="-inf", b="+inf", multiplicity: bool = False
) -> int:
    """Real roots of ``p`` in ``(a, b]`` (endpoints may be ``'-inf'``/``'+inf'``)."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if not multiplicity:
        if p.degree <= 0:
            return 0
        sc = SturmCounter(p)
        return variations_at(sc.chain, a) - variations_at(sc.chain, b)
    return sum(k * count_real_roots(f, a, b) for f, k in squarefree_decomposition(p))


class Sign(str, enum.Enum):
    STRICTLY_POSITIVE = "strictly_positive"
    STRICTLY_NEGATIVE = "strictly_negative"
    HAS_ZERO = "has_zero"
    MIXED = "mixed"


def sign_on_interval(p: UniPoly, domain: RationalInterval) -> Sign:
    """Exact sign classification of ``p`` over the closed interval ``domain``.

    ``HAS_ZERO`` means ``p`` vanishes somewhere but never takes both strict
    signs; ``MIXED`` means it does take both.
    """
    if p.is_zero():
        return Sign.HAS_ZERO
    if p.degree == 0:
        return Sign.STRICTLY_POSITIVE if p.lc > 0 else Sign.STRICTLY_NEGATIVE
    roots = isolate_real_roots(p, domain)
    samples = _cell_samples(domain, roots)
    signs = {_sign(p(x)) for x in samples}
    if not roots:
        (s,) = signs
        return Sign.STRICTLY_POSITIVE if s > 0 else Sign.STRICTLY_NEGATIVE
    if 1 in signs and -1 in signs:
        return Sign.MIXED
    return Sign.HAS_ZERO


def _cell_samples(domain: RationalInterval, roots: Sequence[RationalInterval]) -> list[Fraction]:
    """Rational points hitting every open cell of ``domain`` minus the roots."""
    marks = [domain.lo]
    for iv in roots:
        marks.extend((iv.lo, iv.hi))
    marks.append(domain.hi)
    pts = list(marks)
    pts.extend((a + b) / 2 for a, b in zip(marks, marks[1:]) if a != b)
    return pts


def nonnegative_on(p: UniPoly, domain: RationalInterval) -> bool:
    """Exact test of ``p(x) >= 0`` for every ``x`` in ``domain``."""
    if p.is_zero():
        return True
    if p.degree == 0:
        return p.lc > 0
    roots = isolate_real_roots(p, domain)
    return all(p(x) >= 0 for x in _cell_samples(domain, roots))


def abs_max_bound(p: UniPoly, domain: RationalInterval, resolution: Fraction = Fraction(1, 10**6)) -> Fraction:
    """Rational upper bound on ``max |p|`` over ``domain`` (exact when extrema sit at rational points)."""
    best = max(abs(p(domain.lo)), abs(p(domain.hi)))
    if p.degree <= 1:
        return best
    width = max(domain.width * resolution, Fraction(1, 10**12))
    for iv in isolate_real_roots(p.derivative(), domain, max_width=width):
        enc = p.eval_interval(iv)
        best = max(best, abs(enc.lo), abs(enc.hi))
    return best


@dataclass(frozen=True)
class NonpositiveWitness:
    """A point of ``{x in domain : p_i(x) <= 0 for all i}``.

    ``point`` is set when the point is rational; otherwise ``interval``
    isolates a single algebraic point of the set (a root of ``defining``).
    """

    point: Optional[Fraction]
    interval: Optional[RationalInterval] = None
    defining: Optional[UniPoly] = None

    @property
    def is_rational(self) -> bool:
        return self.point is not None


def find_common_nonpositive(
    polys: Sequence[UniPoly], domain: RationalInterval
) -> Optional[NonpositiveWitness]:
    """Decide exactly whether all ``polys`` are simultaneously ``<= 0`` somewhere in ``domain``.

    Returns ``None`` when the set is empty, else a witness (rational whenever
    the set contains an open cell or a rational root).
    """
    polys = list(polys)
    if any(p.is_zero() for p in polys):
        rest = [p for p in polys if not p.is_zero()]
        if not rest:
            return NonpositiveWitness(domain.lo)
        polys = rest

    def ok(x):
        return all(p(x) <= 0 for p in polys)

    nonconst = [p for p in polys if p.degree > 0]
    if not nonconst:
        return NonpositiveWitness(domain.lo) if ok(domain.lo) else None

    f = squarefree_part(_product(nonconst))
    roots = isolate_real_roots(f, domain)
    # Rational roots first, then a rational point of every open cell.
    for iv in roots:
        if iv.is_point() and ok(iv.lo):
            return NonpositiveWitness(iv.lo)
    for x in _cell_samples(domain, roots):
        if ok(x):
            return NonpositiveWitness(x)
    # Then the algebraic roots of the product themselves.
    for iv in roots:
        if iv.is_point():
            continue
        good = True
        for p in nonconst:
            g = poly_gcd(p, f)
            shared = g.degree > 0 and SturmCounter(g).count_open(iv.lo, iv.hi) == 1
            if not shared and p(iv.lo) > 0:
                good = False
                break
        if good:
            return NonpositiveWitness(None, iv, f)
    return None


def _product(polys: Sequence[UniPoly]) -> UniPoly:
    acc = UniPoly([1], polys[0].var)
    for p in polys:
        acc = acc * p
    return acc
