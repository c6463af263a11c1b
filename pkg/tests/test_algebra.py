import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopfcert.algebra import (
    BivariatePoly,
    Box2,
    RationalInterval,
    Sign,
    UniPoly,
    box_range,
    cauchy_bound,
    count_real_roots,
    find_common_nonpositive,
    format_rational,
    isolate_real_roots,
    isolate_with_multiplicity,
    poly_gcd,
    sign_on_interval,
    squarefree_decomposition,
    to_rational,
)
from hopfcert.family import sign_pair

from families import ex1, ex2


def iv(a, b):
    return RationalInterval(to_rational(a), to_rational(b))


# -- rationals ----------------------------------------------------------

def test_decimal_literals_are_exact():
    assert to_rational("0.28") == F(7, 25)
    assert to_rational("-2/5") == F(-2, 5)
    assert format_rational(F(7, 25)) == "7/25"
    assert format_rational(F(4)) == "4"


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_rational(0.28)


def test_interval_invariant():
    with pytest.raises(ValueError):
        RationalInterval(F(1), F(0))
    with pytest.raises(ValueError):
        Box2(iv(0, 1), iv(-1, 1))


# -- polynomials --------------------------------------------------------

def test_poly_normalizes_and_divides():
    p = UniPoly([1, 2, 0, 0])
    assert p.degree == 1 and p.coeffs == (1, 2)
    assert UniPoly([]).degree == -1
    q, r = divmod(UniPoly([-1, 0, 1]), UniPoly([1, 1]))
    assert q == UniPoly([-1, 1]) and r.is_zero()


def test_gcd_and_yun():
    p = UniPoly([1, 0, 1]) ** 2 * UniPoly([-2, 1])
    assert poly_gcd(p, p.derivative()) == UniPoly([1, 0, 1])
    dec = dict((k, f) for f, k in squarefree_decomposition(p))
    assert dec[2] == UniPoly([1, 0, 1]) and dec[1] == UniPoly([-2, 1])


# -- root isolation -----------------------------------------------------

def test_isolate_perfect_square_roots():
    roots = isolate_real_roots(UniPoly([-4, 0, 1]), iv(0, 10))
    assert roots == [RationalInterval(F(2), F(2))]


def test_isolate_no_real_roots():
    assert isolate_real_roots(UniPoly([1, 0, 1]), iv(-10, 10)) == []


def test_isolate_zero_polynomial_errors():
    with pytest.raises(ValueError, match="zero polynomial has no isolated roots"):
        isolate_real_roots(UniPoly([]), iv(0, 1))


def test_isolate_W1_slice_first_example():
    W1 = sign_pair(ex1()).W1
    p = W1.at_alpha(F(-2, 5))
    # J0(-0.4) = 3.36 and J2(-0.4) = 6.136 +- 0.28
    f1 = UniPoly(["3.36", 0, "-6.416", 0, 1])
    f2 = UniPoly(["3.36", 0, "-5.856", 0, 1])
    assert p == f1 * f2
    roots = isolate_real_roots(p, iv(0, 10))
    assert len(roots) == 4
    numeric = sorted(r.real for r in np.roots([float(c) for c in reversed(p.coeffs)]) if abs(r.imag) < 1e-9 and r.real > 0)
    for r, x in zip(roots, numeric):
        assert r.lo <= x <= r.hi


def test_isolation_intervals_are_disjoint_and_exclusive():
    p = UniPoly([0, -2, 0, 1]) * UniPoly([-1, 3])  # roots 0, ±sqrt 2, 1/3
    roots = isolate_real_roots(p, iv(-5, 5))
    assert len(roots) == 4
    for r in roots:
        if not r.is_point():
            assert p(r.lo) != 0 and p(r.hi) != 0
    for a, b in zip(roots, roots[1:]):
        assert a.hi <= b.lo
        if a.hi == b.lo:
            assert p(a.hi) != 0 and not a.is_point() and not b.is_point()


def test_isolation_matches_numeric_solver_on_random_squarefree():
    rng = random.Random(7)
    checked = 0
    while checked < 1000:
        n = rng.randint(1, 8)
        cs = [rng.randint(-6, 6) for _ in range(n)] + [rng.choice([1, 2, -1, 3])]
        p = UniPoly(cs)
        if p.degree < 1 or poly_gcd(p, p.derivative()).degree > 0:
            continue
        B = cauchy_bound(p)
        ours = len(isolate_real_roots(p, RationalInterval(-B, B)))
        eig = np.roots([float(c) for c in reversed(p.coeffs)])
        # Sturm-based count is the tie-breaker only where float roots are ambiguous
        numeric = sum(1 for z in eig if abs(z.imag) < 1e-7)
        if any(1e-7 <= abs(z.imag) < 1e-4 for z in eig):
            continue
        assert ours == numeric, p
        checked += 1


def test_multiplicity_reported():
    p = UniPoly([-1, 1]) ** 3 * UniPoly([2, 1])
    out = isolate_with_multiplicity(p, iv(-5, 5))
    assert [(r.lo, k) for r, k in out] == [(F(-2), 1), (F(1), 3)]
    assert count_real_roots(p, "-inf", "+inf", multiplicity=True) == 4


# -- signs ----------------------------------------------------------------

def test_sign_on_interval_examples():
    assert sign_on_interval(UniPoly([1, 0, 1], "a"), iv(-1, 1)) is Sign.STRICTLY_POSITIVE
    assert sign_on_interval(UniPoly([4, 0, -4], "a"), iv("-0.4", "0.8")) is Sign.STRICTLY_POSITIVE
    assert sign_on_interval(UniPoly([0, 1], "a"), iv(-1, 1)) is Sign.MIXED
    assert sign_on_interval(UniPoly([0, 0, 1], "a"), iv(-1, 1)) is Sign.HAS_ZERO
    assert sign_on_interval(UniPoly([-1, 0, -1]), iv(0, 3)) is Sign.STRICTLY_NEGATIVE


def test_find_common_nonpositive():
    # x^2 - 1 <= 0 and x - 1/2 <= 0 on [0, 3] -> nonempty
    hit = find_common_nonpositive([UniPoly([-1, 0, 1]), UniPoly([F(-1, 2), 1])], iv(0, 3))
    assert hit is not None and hit.is_rational
    # touching at a single algebraic point: x^2 - 2 <= 0 and 2 - x^2 <= 0 only at sqrt 2
    hit = find_common_nonpositive([UniPoly([-2, 0, 1]), UniPoly([2, 0, -1])], iv(0, 3))
    assert hit is not None and not hit.is_rational and hit.interval.lo ** 2 < 2 < hit.interval.hi ** 2
    assert find_common_nonpositive([UniPoly([1, 0, 1])], iv(-3, 3)) is None


# -- bounds and enclosures ------------------------------------------------

def test_cauchy_bound_examples():
    assert cauchy_bound(UniPoly([-4, 0, 1])) == 5
    assert cauchy_bound(UniPoly([4, 0, 5, 0, 1])) == 6
    assert cauchy_bound(UniPoly([0, 0, 0, 1])) == 1
    with pytest.raises(ValueError):
        cauchy_bound(UniPoly([]))


def test_box_range_examples():
    ab = BivariatePoly.from_matrix([[0, 0], [0, 1]])
    r = box_range(ab, Box2(iv(0, 1), iv(0, 1)))
    assert r.lo <= 0 and r.hi >= 1
    p = BivariatePoly.from_matrix([[0, 0, -1], [0], [1]])
    assert box_range(p, Box2(iv(2, 3), iv(0, 1))) == iv(3, 9)
    # W1 is not sign-definite on this box: it is negative at an exact interior
    # point, so a sound enclosure must straddle zero there
    W1 = sign_pair(ex2()).W1
    box = Box2(iv("1.1", "1.2"), iv(0, 5))
    enc = box_range(W1, box)
    value = W1(F(587, 500), F(1349, 500))
    assert value < 0 and enc.lo <= value <= enc.hi


small = st.fractions(min_value=-3, max_value=3, max_denominator=8)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.lists(st.integers(-5, 5), min_size=1, max_size=4), min_size=1, max_size=4),
    small, small, small, small,
)
def test_box_range_encloses_samples(matrix, a0, a1, b0, b1):
    p = BivariatePoly.from_matrix(matrix)
    alo, ahi = sorted((a0, a1))
    blo, bhi = sorted((abs(b0), abs(b1)))
    box = Box2(RationalInterval(alo, ahi), RationalInterval(blo, bhi))
    enc = box_range(p, box)
    rng = random.Random(hash((alo, ahi, blo, bhi)))
    for _ in range(10_000 // 60 + 1):
        x = alo + (ahi - alo) * F(rng.randint(0, 1000), 1000)
        y = blo + (bhi - blo) * F(rng.randint(0, 1000), 1000)
        assert enc.lo <= p(x, y) <= enc.hi
    # children enclosures stay inside the parent's
    for child in box.split():
        c = box_range(p, child)
        assert enc.lo <= c.lo and c.hi <= enc.hi


def test_box_range_enclosure_dense_sampling_fixed_boxes():
    rng = random.Random(3)
    for _ in range(5):
        p = BivariatePoly.from_matrix([[rng.randint(-4, 4) for _ in range(4)] for _ in range(4)])
        box = Box2(iv(F(rng.randint(-10, 0), 5), F(rng.randint(1, 10), 5)), iv(0, F(rng.randint(1, 10), 5)))
        enc = box_range(p, box)
        for _ in range(10_000):
            x = box.alpha.lo + box.alpha.width * F(rng.randint(0, 997), 997)
            y = box.beta.lo + box.beta.width * F(rng.randint(0, 991), 991)
            assert enc.lo <= p(x, y) <= enc.hi
