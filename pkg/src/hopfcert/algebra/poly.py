"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .intervals import RationalInterval
from .numbers import RationalLike, format_rational, to_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


class UniPoly:
    """Immutable polynomial ``c[0] + c[1] x + ... + c[n] x^n`` over the rationals.

    ``var`` is a display tag only (``a``, ``b``, ``w``, ``l``, ``t``, ...);
    equality and arithmetic ignore it.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[RationalLike] = (), var: str = "x"):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c: RationalLike, var: str = "x") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1, var: str = "x") -> "UniPoly":
        return cls([0] * k + [c], var)

    @classmethod
    def x(cls, var: str = "x") -> "UniPoly":
        return cls([0, 1], var)

    # -- basic queries ------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly(self.coeffs, var)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[format_rational(c) for c in self.coeffs]}, var={self.var!r})"

    def __str__(self):
        return self.pretty()

    def pretty(self, var: str | None = None) -> str:
        """Human-readable form in the problem-file expression language."""
        v = var or self.var
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = format_rational(abs(c))
            if k == 0:
                body = mag
            else:
                mono = v if k == 1 else f"{v}^{k}"
                body = mono if abs(c) == 1 else f"{mag}*{mono}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms)

    # -- evaluation ---------------------------------------------------
    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_interval(self, iv: RationalInterval) -> RationalInterval:
        """Interval Horner enclosure of ``{p(x) : x in iv}``."""
        if not self.coeffs:
            return RationalInterval(_ZERO, _ZERO)
        lo = hi = self.coeffs[-1]
        a, b = iv.lo, iv.hi
        for c in reversed(self.coeffs[:-1]):
            p1, p2, p3, p4 = lo * a, lo * b, hi * a, hi * b
            lo = min(p1, p2, p3, p4) + c
            hi = max(p1, p2, p3, p4) + c
        return RationalInterval(lo, hi)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly([self.coeff(k) + o.coeff(k) for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = to_rational(other)
            return UniPoly([c * a for a in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.var)
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = UniPoly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lc
        quo = [_ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quo, self.var), UniPoly(rem[:dq] if dq > 0 else [], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    # -- transforms ---------------------------------------------------
    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """``self(inner(x))``; the result takes the variable tag of ``inner``."""
        acc = UniPoly([], inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def scale(self, c: RationalLike) -> "UniPoly":
        """``x -> p(c x)``."""
        c = to_rational(c)
        out, f = [], _ONE
        for a in self.coeffs:
            out.append(a * f)
            f *= c
        return UniPoly(out, self.var)

    def reflect(self) -> "UniPoly":
        """``x -> p(-x)``."""
        return self.scale(-1)

    def sign_at_infinity(self, positive: bool = True) -> int:
        if self.is_zero():
            return 0
        s = 1 if self.lc > 0 else -1
        if not positive and self.degree % 2:
            s = -s
        return s

    def imaginary_axis_parts(self, var: str = "w") -> tuple["UniPoly", "UniPoly"]:
        """Real polynomials ``(U, V)`` with ``p(i w) = U(w) + i V(w)``."""
        re = [_ZERO] * len(self.coeffs)
        im = [_ZERO] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            sign = -1 if (k // 2) % 2 else 1
            if k % 2 == 0:
                re[k] = sign * c
            else:
                im[k] = sign * c
        return UniPoly(re, var), UniPoly(im, var)


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic greatest common divisor (zero if both are zero)."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return p.monic()
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: ``p = lc * prod f_k^k`` with pairwise coprime squarefree ``f_k``.

    Returns the nonconstant factors with their multiplicities.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree decomposition")
    if p.degree == 0:
        return []
    out = []
    a = poly_gcd(p, p.derivative())
    b = p.exact_div(a)
    c = p.derivative().exact_div(a)
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        f = poly_gcd(b, d)
        if f.degree > 0:
            out.append((f.with_var(p.var), k))
        b = b.exact_div(f)
        c = d.exact_div(f)
        d = c - b.derivative()
        k += 1
    return out


def product(polys: Sequence[UniPoly], var: str = "x") -> UniPoly:
    acc = UniPoly([1], var)
    for p in polys:
        acc = acc * p
    return acc
