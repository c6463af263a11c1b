"""Half-plane root counting, Kharitonov's test and q-instability certificates."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import (
    RationalInterval,
    UniPoly,
    cauchy_index,
    count_real_roots,
    find_common_nonpositive,
    isolate_real_roots,
    poly_gcd,
    refine_root,
    sign_on_interval,
    Sign,
    squarefree_part,
)
from .family import IntervalFamily, IntervalPoly, corners, instantiate


class Verdict(str, enum.Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class RootCount:
    n_neg: int
    n_imag: int
    n_pos: int

    @property
    def degree(self) -> int:
        return self.n_neg + self.n_imag + self.n_pos

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_neg, self.n_imag, self.n_pos)

    def is_hurwitz(self) -> bool:
        return self.n_imag == 0 and self.n_pos == 0


def _trailing_zeros(p: UniPoly) -> int:
    k = 0
    while p.coeffs[k] == 0:
        k += 1
    return k


def _symmetric_part_count(h: UniPoly) -> RootCount:
    """Counts for ``h`` whose root multiset is invariant under ``l -> -l``."""
    s = _trailing_zeros(h)
    even = UniPoly(h.coeffs[s:], "l")
    # even(l) = E(l^2); negative roots of E are imaginary pairs of h
    E = UniPoly(even.coeffs[::2], "m")
    neg = count_real_roots(E, "-inf", Fraction(0), multiplicity=True) if E.degree > 0 else 0
    n_imag = s + 2 * neg
    rest = h.degree - n_imag
    return RootCount(rest // 2, n_imag, rest // 2)


def _asymmetric_part_count(p: UniPoly) -> RootCount:
    """Counts for ``p`` with no imaginary roots, via the Cauchy index of ``p(i w)``."""
    m = p.degree
    if m <= 0:
        return RootCount(0, 0, 0)
    U, V = p.imaginary_axis_parts()
    # total argument change of p(i w) over the real line, in units of pi
    if m % 2 == 0:
        delta = -cauchy_index(V, U)
    else:
        delta = cauchy_index(U, V)
    n_neg = (m + delta) // 2
    return RootCount(n_neg, 0, m - n_neg)


def root_count(p: UniPoly) -> RootCount:
    """Exact numbers of roots with Re < 0, Re = 0, Re > 0 (with multiplicity).

    ``p`` is split as ``h * r`` with ``h = gcd(p(l), p(-l))``.  ``h`` carries
    every imaginary root and every pair ``{z, -z}``; ``r`` is counted by the
    Routh-Hurwitz index (Euclidean chain of the real and imaginary parts of
    ``p(i w)``), which never meets a singular row.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no root count")
    if p.degree == 0:
        return RootCount(0, 0, 0)
    fast = _regular_routh_count(p)
    if fast is not None:
        return fast
    h = poly_gcd(p, p.reflect())
    r = p.exact_div(h)
    a = _symmetric_part_count(h) if h.degree > 0 else RootCount(0, 0, 0)
    b = _asymmetric_part_count(r)
    return RootCount(a.n_neg + b.n_neg, a.n_imag + b.n_imag, a.n_pos + b.n_pos)


def _regular_routh_count(p: UniPoly) -> Optional[RootCount]:
    """Counts from the first Routh column, or None when a zero pivot appears."""
    n = p.degree
    cs = list(reversed(p.coeffs))
    prev, cur = cs[0::2], cs[1::2]
    col = [prev[0]]
    for _ in range(n):
        if not cur or cur[0] == 0:
            return None
        col.append(cur[0])
        nxt = [(cur[0] * prev[j + 1] - prev[0] * (cur[j + 1] if j + 1 < len(cur) else 0)) / cur[0]
               for j in range(len(prev) - 1)]
        prev, cur = cur, nxt
    changes = sum(1 for a, b in zip(col, col[1:]) if (a > 0) != (b > 0))
    return RootCount(n - changes, 0, changes)


def routh_table(p: UniPoly) -> list[list[Fraction]]:
    """Classical Routh array (rows until the first zero pivot or the end).

    Only used for display and cross-checks; :func:`root_count` is the
    authoritative counter.
    """
    cs = list(reversed(p.coeffs))
    rows = [cs[0::2], cs[1::2]]
    width = len(rows[0])
    rows = [r + [Fraction(0)] * (width - len(r)) for r in rows]
    while len(rows) < p.degree + 1:
        prev, cur = rows[-2], rows[-1]
        if cur[0] == 0:
            break
        nxt = [(cur[0] * prev[j + 1] - prev[0] * cur[j + 1]) / cur[0] for j in range(width - 1)]
        rows.append(nxt + [Fraction(0)])
    return rows


def kharitonov_hurwitz(sp: IntervalPoly) -> bool:
    """Hurwitz stability of every member, by the four Kharitonov corners."""
    n = sp.degree
    return all(root_count(k).as_tuple() == (n, 0, 0) for k in corners(sp).kharitonov())


def kharitonov_report(sp: IntervalPoly) -> dict:
    out = {}
    for name, k in zip(("g1+h1", "g1+h2", "g2+h1", "g2+h2"), corners(sp).kharitonov()):
        rc = root_count(k)
        out[name] = {"polynomial": k.pretty("l"), "root_count": list(rc.as_tuple())}
    return out


def cone_polynomials(sp: IntervalPoly) -> tuple[UniPoly, UniPoly]:
    """``u1(w) = Re g1(iw) Re g2(iw)`` and ``u2(w) = Im h1(iw) Im h2(iw)``."""
    cs = corners(sp)
    re1, _ = cs.g1.imaginary_axis_parts()
    re2, _ = cs.g2.imaginary_axis_parts()
    _, im1 = cs.h1.imaginary_axis_parts()
    _, im2 = cs.h2.imaginary_axis_parts()
    return re1 * re2, im1 * im2


def member_root_bound(sp: IntervalPoly) -> Fraction:
    """Strict bound on the modulus of every root of every (monic) member."""
    m = max((max(abs(iv.lo), abs(iv.hi)) for iv in sp.intervals[:-1]), default=Fraction(0))
    return 1 + m


def member_vanishing_at(sp: IntervalPoly, omega: Fraction) -> Optional[UniPoly]:
    """A member ``P`` with ``P(i omega) = 0``, if the rectangle at ``omega`` contains the origin."""
    cs = corners(sp)
    x1 = cs.g1.imaginary_axis_parts()[0](omega)
    x2 = cs.g2.imaginary_axis_parts()[0](omega)
    y1 = cs.h1.imaginary_axis_parts()[1](omega)
    y2 = cs.h2.imaginary_axis_parts()[1](omega)
    if not (x1 <= 0 <= x2 and y1 <= 0 <= y2):
        return None
    s = x1 / (x1 - x2) if x1 != x2 else Fraction(0)
    t = y1 / (y1 - y2) if y1 != y2 else Fraction(0)
    p = cs.g1 * (1 - s) + cs.g2 * s + cs.h1 * (1 - t) + cs.h2 * t
    U, V = p.imaginary_axis_parts()
    assert U(omega) == 0 and V(omega) == 0 and sp.contains(p)
    return p


@dataclass
class QInstability:
    """Outcome of the Zero-Exclusion cone test at one fixed interval polynomial."""

    verdict: Verdict
    q: Optional[int]
    representative: UniPoly
    representative_count: RootCount
    search_bound: Fraction
    exclusion_evidence: list[tuple[RationalInterval, str]] = field(default_factory=list)
    witness_omega: Optional[Fraction] = None
    witness_member: Optional[UniPoly] = None
    unresolved: Optional[RationalInterval] = None


def q_unstable_certify(sp: IntervalPoly, representative: UniPoly) -> QInstability:
    """Certify that every member has the representative's right-half-plane count.

    Certified when the representative is hyperbolic and
    ``{w >= 0 : u1(w) <= 0, u2(w) <= 0}`` is empty.  Refuted when a rational
    ``w`` in that set is found (then an explicit member with root ``i w`` is
    attached).  Inconclusive otherwise.
    """
    if not sp.contains(representative):
        raise ValueError("representative is not a member of the interval polynomial")
    rc = root_count(representative)
    if rc.n_imag > 0:
        raise ValueError("representative must have no imaginary roots")
    u1, u2 = cone_polynomials(sp)
    bound = member_root_bound(sp)
    domain = RationalInterval(Fraction(0), bound)
    hit = find_common_nonpositive([u1, u2], domain)
    if hit is None:
        return QInstability(
            Verdict.CERTIFIED, rc.n_pos, representative, rc, bound,
            exclusion_evidence=_exclusion_evidence(u1, u2, domain),
        )
    if hit.is_rational:
        member = member_vanishing_at(sp, hit.point)
        return QInstability(
            Verdict.REFUTED, None, representative, rc, bound,
            witness_omega=hit.point, witness_member=member,
        )
    return QInstability(Verdict.INCONCLUSIVE, None, representative, rc, bound, unresolved=hit.interval)


def _exclusion_evidence(u1: UniPoly, u2: UniPoly, domain: RationalInterval) -> list[tuple[RationalInterval, str]]:
    """Cover ``domain`` by closed cells, each with a factor certified strictly positive on it.

    Roots of ``u1 u2`` get their own small cells (the factor that does not
    vanish there is positive on them); the root-free gaps in between follow.
    """
    factors = [(name, p) for name, p in (("W1", u1), ("W2", u2)) if not p.is_zero()]

    def positive(cell):
        for name, p in factors:
            if sign_on_interval(p, cell) is Sign.STRICTLY_POSITIVE:
                return name
        return None

    prod = UniPoly([1])
    for _, p in factors:
        prod = prod * p
    f = squarefree_part(prod) if prod.degree > 0 else prod
    roots = isolate_real_roots(f, domain) if prod.degree > 0 else []
    ends = [domain.lo] + [x for iv in roots for x in (iv.lo, iv.hi)] + [domain.hi]
    root_cells = []
    for k, iv in enumerate(roots):
        room_lo = ends[2 * k + 1] - ends[2 * k]
        room_hi = ends[2 * k + 3] - ends[2 * k + 2]
        pad_lo, pad_hi = room_lo / 4, room_hi / 4
        for _ in range(200):
            cell = RationalInterval(iv.lo - pad_lo, iv.hi + pad_hi)
            name = positive(cell)
            if name is not None:
                break
            iv = refine_root(f, iv, iv.width / 2) if iv.width else iv
            pad_lo, pad_hi = pad_lo / 2, pad_hi / 2
        else:
            raise AssertionError(f"no positive factor near the root in {iv}; emptiness decision is inconsistent")
        root_cells.append((cell, name))
    out = []
    cursor = domain.lo
    for cell, name in root_cells + [(RationalInterval(domain.hi, domain.hi), None)]:
        if cursor < cell.lo:
            gap = RationalInterval(cursor, cell.lo)
            gap_name = positive(gap)
            if gap_name is None:
                raise AssertionError(f"no positive factor on {gap}; emptiness decision is inconsistent")
            out.append((gap, gap_name))
        if name is not None:
            out.append((cell, name))
            cursor = cell.hi
    return out


@dataclass
class ConditionResult:
    verdict: Verdict
    witness: Optional[dict] = None
    evidence: Optional[dict] = None


def check_R2(fam: IntervalFamily) -> ConditionResult:
    """``0 not in [a_0(alpha), b_0(alpha)]`` for every alpha in range."""
    a0, b0 = fam.coeffs[0].lo, fam.coeffs[0].hi
    hit = find_common_nonpositive([a0, -b0], fam.alpha_range)
    if hit is None:
        sa = sign_on_interval(a0, fam.alpha_range)
        side = "a0 > 0" if sa is Sign.STRICTLY_POSITIVE else "b0 < 0"
        return ConditionResult(Verdict.CERTIFIED, evidence={"holds": side})
    if hit.is_rational:
        return ConditionResult(Verdict.REFUTED, witness={"alpha": hit.point})
    return ConditionResult(Verdict.REFUTED, witness={"alpha_interval": hit.interval})


@dataclass
class EndpointResult:
    q1: Optional[int]
    q2: Optional[int]
    certified: bool
    minus: QInstability
    plus: QInstability


def check_R3_R4(fam: IntervalFamily, rep_minus: UniPoly, rep_plus: UniPoly) -> EndpointResult:
    lo, hi = fam.alpha_range.lo, fam.alpha_range.hi
    m = q_unstable_certify(instantiate(fam, lo), rep_minus)
    p = q_unstable_certify(instantiate(fam, hi), rep_plus)
    ok = m.verdict is Verdict.CERTIFIED and p.verdict is Verdict.CERTIFIED and m.q != p.q
    return EndpointResult(m.q, p.q, ok, m, p)
