"""Closed rational intervals and boxes in the (alpha, beta) plane."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numbers import RationalLike, format_rational, to_rational


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", to_rational(self.lo))
        object.__setattr__(self, "hi", to_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: RationalLike) -> "RationalInterval":
        x = to_rational(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "RationalInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "RationalInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def hull(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def split(self) -> tuple["RationalInterval", "RationalInterval"]:
        m = self.mid
        return RationalInterval(self.lo, m), RationalInterval(m, self.hi)

    def __add__(self, other):
        if isinstance(other, RationalInterval):
            return RationalInterval(self.lo + other.lo, self.hi + other.hi)
        c = to_rational(other)
        return RationalInterval(self.lo + c, self.hi + c)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        if isinstance(other, RationalInterval):
            return RationalInterval(self.lo - other.hi, self.hi - other.lo)
        return self + (-to_rational(other))

    def __mul__(self, other):
        if isinstance(other, RationalInterval):
            p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
            return RationalInterval(min(p), max(p))
        c = to_rational(other)
        if c >= 0:
            return RationalInterval(c * self.lo, c * self.hi)
        return RationalInterval(c * self.hi, c * self.lo)

    __rmul__ = __mul__

    def __str__(self):
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"


@dataclass(frozen=True)
class Box2:
    """Axis-aligned box ``alpha x beta`` restricted to ``beta >= 0``."""

    alpha: RationalInterval
    beta: RationalInterval

    def __post_init__(self):
        if self.beta.lo < 0:
            raise ValueError("boxes live in the closed upper half plane beta >= 0")

    def split(self) -> list["Box2"]:
        a0, a1 = self.alpha.split()
        b0, b1 = self.beta.split()
        return [Box2(a0, b0), Box2(a1, b0), Box2(a0, b1), Box2(a1, b1)]

    def center(self) -> tuple[Fraction, Fraction]:
        return self.alpha.mid, self.beta.mid

    def corners(self) -> list[tuple[Fraction, Fraction]]:
        return [
            (self.alpha.lo, self.beta.lo),
            (self.alpha.hi, self.beta.lo),
            (self.alpha.hi, self.beta.hi),
            (self.alpha.lo, self.beta.hi),
        ]

    def hull(self, other: "Box2") -> "Box2":
        return Box2(self.alpha.hull(other.alpha), self.beta.hull(other.beta))
