"""Exact bivariate polynomials in (alpha, beta) and their box enclosures."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .intervals import Box2, RationalInterval
from .numbers import RationalLike, to_rational
from .poly import UniPoly

_ZERO = Fraction(0)


class BivariatePoly:
    """``sum_j c_j(alpha) beta^j`` with each ``c_j`` a :class:`UniPoly` in alpha."""

    __slots__ = ("beta_coeffs",)

    def __init__(self, beta_coeffs: Iterable[UniPoly] = ()):
        cs = [c.with_var("a") for c in beta_coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "beta_coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("BivariatePoly is immutable")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[RationalLike]]) -> "BivariatePoly":
        """``matrix[i][j]`` is the coefficient of ``alpha^i beta^j``."""
        width = max((len(row) for row in matrix), default=0)
        cols = []
        for j in range(width):
            cols.append(UniPoly([row[j] if j < len(row) else 0 for row in matrix], "a"))
        return cls(cols)

    @classmethod
    def from_alpha(cls, p: UniPoly) -> "BivariatePoly":
        return cls([p])

    @classmethod
    def beta(cls) -> "BivariatePoly":
        return cls([UniPoly([]), UniPoly([1])])

    # -- shape --------------------------------------------------------
    @property
    def beta_degree(self) -> int:
        return len(self.beta_coeffs) - 1

    @property
    def alpha_degree(self) -> int:
        return max((c.degree for c in self.beta_coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.beta_coeffs

    def coefficient(self, i: int, j: int) -> Fraction:
        if j >= len(self.beta_coeffs):
            return _ZERO
        return self.beta_coeffs[j].coeff(i)

    def matrix(self) -> list[list[Fraction]]:
        rows = self.alpha_degree + 1
        cols = self.beta_degree + 1
        return [[self.coefficient(i, j) for j in range(cols)] for i in range(rows)]

    def __eq__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self.beta_coeffs == other.beta_coeffs

    def __hash__(self):
        return hash(self.beta_coeffs)

    def __repr__(self):
        return f"BivariatePoly({[c.pretty('a') for c in self.beta_coeffs]})"

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        n = max(len(self.beta_coeffs), len(other.beta_coeffs))
        zero = UniPoly([])
        return BivariatePoly(
            (self.beta_coeffs[j] if j < len(self.beta_coeffs) else zero)
            + (other.beta_coeffs[j] if j < len(other.beta_coeffs) else zero)
            for j in range(n)
        )

    def __neg__(self):
        return BivariatePoly(-c for c in self.beta_coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BivariatePoly):
            c = to_rational(other)
            return BivariatePoly(c * a for a in self.beta_coeffs)
        if self.is_zero() or other.is_zero():
            return BivariatePoly()
        out = [UniPoly([])] * (len(self.beta_coeffs) + len(other.beta_coeffs) - 1)
        for i, a in enumerate(self.beta_coeffs):
            for j, b in enumerate(other.beta_coeffs):
                out[i + j] = out[i + j] + a * b
        return BivariatePoly(out)

    __rmul__ = __mul__

    # -- evaluation ---------------------------------------------------
    def __call__(self, alpha, beta):
        acc = _ZERO
        for c in reversed(self.beta_coeffs):
            acc = acc * beta + c(alpha)
        return acc

    def at_alpha(self, alpha) -> UniPoly:
        """Univariate polynomial in beta at fixed alpha."""
        return UniPoly([c(alpha) for c in self.beta_coeffs], "b")

    def scale_beta(self, j: RationalLike) -> "BivariatePoly":
        """``(alpha, beta) -> p(alpha, j*beta)``."""
        j = to_rational(j)
        out, f = [], Fraction(1)
        for c in self.beta_coeffs:
            out.append(c * f)
            f *= j
        return BivariatePoly(out)

    def on_segment(self, p0, p1) -> UniPoly:
        """Restriction to ``t -> p0 + t (p1 - p0)`` as a polynomial in ``t``."""
        a0, b0 = (to_rational(v) for v in p0)
        a1, b1 = (to_rational(v) for v in p1)
        alpha_t = UniPoly([a0, a1 - a0], "t")
        beta_t = UniPoly([b0, b1 - b0], "t")
        acc = UniPoly([], "t")
        for c in reversed(self.beta_coeffs):
            acc = acc * beta_t + c.compose(alpha_t)
        return acc

    def is_even_in_beta(self) -> bool:
        return all(c.is_zero() for c in self.beta_coeffs[1::2])

    def eval_float(self, alpha: float, beta: float) -> float:
        acc = 0.0
        for c in reversed(self.beta_coeffs):
            ca = 0.0
            for x in reversed(c.coeffs):
                ca = ca * alpha + float(x)
            acc = acc * beta + ca
        return acc


def box_range(p: BivariatePoly, box: Box2) -> RationalInterval:
    """Sound enclosure of ``{p(alpha, beta) : (alpha, beta) in box}``.

    Interval Horner in alpha for each beta-coefficient, then interval Horner in beta.
    """
    if p.is_zero():
        return RationalInterval(_ZERO, _ZERO)
    coeffs = [c.eval_interval(box.alpha) for c in p.beta_coeffs]
    lo, hi = coeffs[-1].lo, coeffs[-1].hi
    a, b = box.beta.lo, box.beta.hi
    for c in reversed(coeffs[:-1]):
        p1, p2, p3, p4 = lo * a, lo * b, hi * a, hi * b
        lo = min(p1, p2, p3, p4) + c.lo
        hi = max(p1, p2, p3, p4) + c.hi
    return RationalInterval(lo, hi)
