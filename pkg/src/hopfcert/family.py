"""Alpha-parameterized monic interval polynomial families.

A family assigns to every alpha in ``[alpha_minus, alpha_plus]`` the monic
interval polynomial ``J_0(a) + J_1(a) l + ... + J_{n-1}(a) l^{n-1} + l^n``
with ``J_k(a) = [lo_k(a), hi_k(a)]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (
    BivariatePoly,
    RationalInterval,
    UniPoly,
    abs_max_bound,
    nonnegative_on,
    to_rational,
)


@dataclass(frozen=True)
class CoeffInterval:
    lo: UniPoly
    hi: UniPoly

    @classmethod
    def point(cls, p: UniPoly) -> "CoeffInterval":
        return cls(p, p)

    @classmethod
    def centered(cls, center: UniPoly, half_width) -> "CoeffInterval":
        eps = to_rational(half_width)
        return cls(center - eps, center + eps)

    def at(self, alpha) -> RationalInterval:
        return RationalInterval(self.lo(alpha), self.hi(alpha))


@dataclass(frozen=True)
class IntervalPoly:
    """A fixed interval polynomial; ``intervals[k]`` is the degree-k coefficient."""

    intervals: tuple[RationalInterval, ...]

    @classmethod
    def monic(cls, lower: Sequence[RationalInterval]) -> "IntervalPoly":
        return cls(tuple(lower) + (RationalInterval.point(1),))

    @classmethod
    def from_poly(cls, p: UniPoly) -> "IntervalPoly":
        return cls(tuple(RationalInterval.point(c) for c in p.coeffs))

    @property
    def degree(self) -> int:
        return len(self.intervals) - 1

    def is_monic(self) -> bool:
        top = self.intervals[-1]
        return top.lo == top.hi == 1

    def contains(self, p: UniPoly) -> bool:
        if p.degree != self.degree:
            return False
        return all(p.coeff(k) in iv for k, iv in enumerate(self.intervals))

    def lower_poly(self) -> UniPoly:
        return UniPoly([iv.lo for iv in self.intervals], "l")

    def upper_poly(self) -> UniPoly:
        return UniPoly([iv.hi for iv in self.intervals], "l")


@dataclass(frozen=True)
class CornerSet:
    g1: UniPoly
    g2: UniPoly
    h1: UniPoly
    h2: UniPoly

    def kharitonov(self) -> tuple[UniPoly, UniPoly, UniPoly, UniPoly]:
        return (self.g1 + self.h1, self.g1 + self.h2, self.g2 + self.h1, self.g2 + self.h2)


# For each corner and each residue of the degree mod 4: take the lower (0) or
# upper (1) endpoint.  Residues outside the corner's parity are unused.
_CORNER_PICK = {
    "g1": {0: 0, 2: 1},
    "g2": {0: 1, 2: 0},
    "h1": {1: 0, 3: 1},
    "h2": {1: 1, 3: 0},
}


def _pick(k: int, corner: str):
    return _CORNER_PICK[corner].get(k % 4)


def corners(sp: IntervalPoly) -> CornerSet:
    """Kharitonov corner polynomials of a fixed interval polynomial."""
    polys = {}
    for name in ("g1", "g2", "h1", "h2"):
        cs = []
        for k, iv in enumerate(sp.intervals):
            which = _pick(k, name)
            cs.append(0 if which is None else (iv.lo, iv.hi)[which])
        polys[name] = UniPoly(cs, "l")
    return CornerSet(**polys)


@dataclass(frozen=True)
class SignPair:
    """``W1 = Re g1(i b) Re g2(i b)`` and ``W2 = Im h1(i b) Im h2(i b)`` as exact (alpha, beta) polynomials.

    The factors are kept as well; they give much tighter box enclosures than
    the expanded products.
    """

    W1: BivariatePoly
    W2: BivariatePoly
    re_g1: BivariatePoly
    re_g2: BivariatePoly
    im_h1: BivariatePoly
    im_h2: BivariatePoly


@dataclass(frozen=True)
class IntervalFamily:
    degree: int
    coeffs: tuple[CoeffInterval, ...]
    alpha_range: RationalInterval

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if len(self.coeffs) != self.degree:
            raise ValueError(
                f"expected {self.degree} coefficient intervals (degrees 0..{self.degree - 1}), "
                f"got {len(self.coeffs)}"
            )
        for k, c in enumerate(self.coeffs):
            if not nonnegative_on(c.hi - c.lo, self.alpha_range):
                raise ValueError(f"coefficient {k}: lower endpoint exceeds upper endpoint on the alpha range")

    @classmethod
    def build(cls, coeffs: Sequence[CoeffInterval], alpha_range) -> "IntervalFamily":
        if not isinstance(alpha_range, RationalInterval):
            alpha_range = RationalInterval(*alpha_range)
        return cls(len(coeffs), tuple(coeffs), alpha_range)

    def endpoint_polys(self, k: int) -> tuple[UniPoly, UniPoly]:
        if k == self.degree:
            one = UniPoly([1], "a")
            return one, one
        c = self.coeffs[k]
        return c.lo, c.hi

    def with_alpha_range(self, alpha_range: RationalInterval) -> "IntervalFamily":
        return IntervalFamily(self.degree, self.coeffs, alpha_range)


def instantiate(fam: IntervalFamily, alpha) -> IntervalPoly:
    """The fixed monic interval polynomial ``Q(alpha)``."""
    alpha = to_rational(alpha)
    if alpha not in fam.alpha_range:
        raise ValueError(f"alpha = {alpha} lies outside the family's alpha range {fam.alpha_range}")
    return IntervalPoly.monic([c.at(alpha) for c in fam.coeffs])


def _symbolic_part(fam: IntervalFamily, corner: str) -> BivariatePoly:
    """``Re g(i beta)`` (for g-corners) or ``Im h(i beta)`` (for h-corners) in (alpha, beta)."""
    cols = [UniPoly([], "a")] * (fam.degree + 1)
    for k in range(fam.degree + 1):
        which = _pick(k, corner)
        if which is None:
            continue
        endpoint = fam.endpoint_polys(k)[which]
        # i^k = (-1)^(k/2) for even k and i (-1)^((k-1)/2) for odd k
        sign = -1 if (k // 2) % 2 else 1
        cols[k] = endpoint * sign
    return BivariatePoly(cols)


def sign_pair(fam: IntervalFamily) -> SignPair:
    re_g1 = _symbolic_part(fam, "g1")
    re_g2 = _symbolic_part(fam, "g2")
    im_h1 = _symbolic_part(fam, "h1")
    im_h2 = _symbolic_part(fam, "h2")
    return SignPair(re_g1 * re_g2, im_h1 * im_h2, re_g1, re_g2, im_h1, im_h2)


def beta_bound(fam: IntervalFamily) -> Fraction:
    """Cauchy-type bound B: every root of every member, for every alpha in range, has modulus < B."""
    m = Fraction(0)
    for c in fam.coeffs:
        m = max(m, abs_max_bound(c.lo, fam.alpha_range), abs_max_bound(c.hi, fam.alpha_range))
    # monic: |root| < 1 + max_k |c_k| (strict Cauchy bound)
    return 1 + m
