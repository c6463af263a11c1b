import random
from fractions import Fraction as F

import pytest

from hopfcert.algebra import RationalInterval, Sign, UniPoly, sign_on_interval
from hopfcert.family import CoeffInterval, IntervalFamily, IntervalPoly, instantiate
from hopfcert.stability import (
    RootCount,
    Verdict,
    check_R2,
    check_R3_R4,
    cone_polynomials,
    kharitonov_hurwitz,
    q_unstable_certify,
    root_count,
)

from families import a, ex1, ex2, ex3, po1, po2, po3


def L(*cs):
    return UniPoly(list(cs), "l")


# -- root_count ---------------------------------------------------------------

def test_root_count_examples():
    assert root_count(L(-2, -1, 1)).as_tuple() == (1, 0, 1)
    assert root_count(L("0.6", "-0.4", 1)).as_tuple() == (0, 0, 2)
    assert root_count(po1().at(F(4, 5))).as_tuple() == (4, 0, 0)
    assert root_count(L(1, 0, 1) * L(4, 0, 1)).as_tuple() == (0, 4, 0)
    assert root_count(po1().at(F(0))).as_tuple() == (0, 4, 0)


def test_root_count_multiplicity_and_zero_root():
    assert root_count(L(1, 0, 1) ** 2).as_tuple() == (0, 4, 0)
    assert root_count(L(0, 0, 1) * L(1, 1)).as_tuple() == (1, 2, 0)
    assert root_count(L(-1, 1) ** 3 * L(1, 1)).as_tuple() == (1, 0, 3)


def test_root_count_zero_polynomial():
    with pytest.raises(ValueError):
        root_count(UniPoly([], "l"))


def test_degenerate_rows_add_imaginary_pair():
    rng = random.Random(21)
    for _ in range(100):
        n = rng.randint(1, 6)
        p = L(*([rng.randint(-5, 5) for _ in range(n)] + [rng.choice([1, -2, 3])]))
        base = root_count(p)
        got = root_count(p * L(1, 0, 1))
        assert got.n_imag == base.n_imag + 2
        assert (got.n_neg, got.n_pos) == (base.n_neg, base.n_pos)


# -- Kharitonov ---------------------------------------------------------------

def test_kharitonov_examples():
    assert kharitonov_hurwitz(IntervalPoly.from_poly(L(1, 1) ** 3))
    assert kharitonov_hurwitz(instantiate(ex2(), F(6, 5)))
    assert not kharitonov_hurwitz(instantiate(ex1(), F(-2, 5)))


# -- q-instability ------------------------------------------------------------

def test_q_unstable_first_example_left_end():
    r = q_unstable_certify(instantiate(ex1(), F(-2, 5)), po1().at(F(-2, 5)))
    assert r.verdict is Verdict.CERTIFIED and r.q == 2
    covered = sorted((c for c, _ in r.exclusion_evidence), key=lambda c: c.lo)
    assert covered[0].lo == 0 and covered[-1].hi == r.search_bound
    for x, y in zip(covered, covered[1:]):
        assert x.hi == y.lo


def test_q_unstable_evidence_when_factors_vanish_at_cell_ends():
    # u1 = (w^2 - 1)(w^2 - 2) and u2 = 20 w^2 share no root, but their roots
    # at 0 and 1 must not end up as the two ends of a single cell
    sp = IntervalPoly.monic([RationalInterval(F(1), F(2)), RationalInterval(F(4), F(5))])
    r = q_unstable_certify(sp, L(F(3, 2), F(9, 2), 1))
    assert r.verdict is Verdict.CERTIFIED and r.q == 0
    cells = [c for c, _ in r.exclusion_evidence]
    assert cells[0].lo == 0 and cells[-1].hi == r.search_bound
    assert all(x.hi == y.lo for x, y in zip(cells, cells[1:]))
    u1, u2 = cone_polynomials(sp)
    for c, name in r.exclusion_evidence:
        assert sign_on_interval(u1 if name == "W1" else u2, c) is Sign.STRICTLY_POSITIVE


def test_q_unstable_third_example_right_end():
    r = q_unstable_certify(instantiate(ex3(), F(9, 100)), po3().at(F(9, 100)))
    assert r.verdict is Verdict.CERTIFIED and r.q == 0


def test_q_unstable_third_example_at_0_075_not_certified():
    fam = ex3(hi=F(3, 40))
    r = q_unstable_certify(instantiate(fam, F(3, 40)), po3(hi=F(3, 40)).at(F(3, 40)))
    assert r.verdict is not Verdict.CERTIFIED
    if r.verdict is Verdict.REFUTED:
        w = r.witness_omega
        M = r.witness_member
        assert instantiate(fam, F(3, 40)).contains(M)
        U, V = M.imaginary_axis_parts()
        assert U(w) == 0 and V(w) == 0


def test_q_unstable_errors():
    sp = IntervalPoly.from_poly(L(1, 0, 1))
    with pytest.raises(ValueError, match="no imaginary roots"):
        q_unstable_certify(sp, L(1, 0, 1))
    with pytest.raises(ValueError, match="not a member"):
        q_unstable_certify(sp, L(2, 0, 1))


# -- R2 / R3 / R4 -------------------------------------------------------------

def test_check_R2_examples():
    assert check_R2(ex1()).verdict is Verdict.CERTIFIED
    assert check_R2(ex3()).verdict is Verdict.CERTIFIED
    fam = IntervalFamily.build([CoeffInterval(a(0, 1), a(1, 1)), CoeffInterval.point(a(1))], (F(-1, 2), F(1, 2)))
    r = check_R2(fam)
    assert r.verdict is Verdict.REFUTED
    al = r.witness["alpha"]
    assert fam.coeffs[0].lo(al) <= 0 <= fam.coeffs[0].hi(al)


def test_check_R2_witness_on_straddling_interval():
    fam = IntervalFamily.build([CoeffInterval(a(0, 1), a(1, 1)), CoeffInterval.point(a(1))], (F(-1, 2), F(1, 2)))
    assert check_R2(fam).witness == {"alpha": F(0)}


def test_check_R3_R4_first_and_second_examples():
    p = po1()
    r = check_R3_R4(ex1(), p.at(F(-2, 5)), p.at(F(4, 5)))
    assert (r.q1, r.q2, r.certified) == (2, 0, True)
    p = po2()
    r = check_R3_R4(ex2(), p.at(F(-1, 2)), p.at(F(6, 5)))
    assert (r.q1, r.q2, r.certified) == (2, 0, True)


def test_check_R3_R4_equal_counts_fail():
    # both ends right of fR, where the family is Hurwitz
    fam = ex1().with_alpha_range(RationalInterval(F(7, 10), F(4, 5)))
    p = po1()
    r = check_R3_R4(fam, p.at(F(7, 10)), p.at(F(4, 5)))
    assert r.q1 == r.q2 == 0 and not r.certified


def test_rootcount_is_consistent():
    rc = RootCount(1, 2, 3)
    assert rc.degree == 6 and not rc.is_hurwitz()
