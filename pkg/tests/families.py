"""Worked example families shared by the test modules."""

from fractions import Fraction as F

from hopfcert.algebra import UniPoly
from hopfcert.degree import SelectorPath
from hopfcert.family import CoeffInterval, IntervalFamily
from hopfcert.regions import PolygonDisk


def a(*cs):
    return UniPoly(list(cs), "a")


def ex1(eps=F(7, 25), alpha=(F(-2, 5), F(4, 5))):
    return IntervalFamily.build(
        [
            CoeffInterval.point(a(4, 0, -4)),
            CoeffInterval.centered(a(0, 4, -3, 1), eps),
            CoeffInterval.centered(a(5, -3, 0, 1), eps),
            CoeffInterval.point(a(0, 1, 1)),
        ],
        alpha,
    )


def ex2(eps=F(7, 10), alpha=(F(-1, 2), F(6, 5))):
    return IntervalFamily.build(
        [
            CoeffInterval.centered(a(81, 27, 2), eps),
            CoeffInterval.centered(a(0, 9, 11, 1), eps),
            CoeffInterval.point(a(18, 3, 0, 1)),
            CoeffInterval.centered(a(0, 1, 1), eps),
        ],
        alpha,
    )


def ex3(hi=F(9, 100), eps=1):
    return IntervalFamily.build(
        [
            CoeffInterval.centered(a(36), eps),
            CoeffInterval.centered(a(36, 36), eps),
            CoeffInterval.centered(a(47, 36), eps),
            CoeffInterval.centered(a(37, 11), eps),
            CoeffInterval.centered(a(11, 1), eps),
        ],
        (F(-1, 10), hi),
    )


def po1(alpha=(F(-2, 5), F(4, 5))):
    return SelectorPath.from_factors([[a(1, 1), a(0, 1), a(1)], [a(4, -4), a(0, 0, 1), a(1)]], alpha)


def po2(alpha=(F(-1, 2), F(6, 5))):
    return SelectorPath.from_factors([[a(9, 1), a(0, 1), a(1)], [a(9, 2), a(0, 0, 1), a(1)]], alpha)


def po3(hi=F(9, 100)):
    return SelectorPath.from_factors([[a(2), a(1)], [a(3), a(1)], [a(6), a(1)], [a(1), a(0, 1), a(1)]], (F(-1, 10), hi))


# A quadrangle containing fR of the first example whose boundary misses every fS_j.
D1 = PolygonDisk(((F(-7, 20), F(9, 10)), (F(18, 25), F(1, 2)), (F(18, 25), F(12, 5)), (F(-7, 20), F(12, 5))))
