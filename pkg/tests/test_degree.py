from fractions import Fraction as F

import numpy as np
import pytest

from hopfcert.degree import (
    BoundaryZeroError,
    SelectorPath,
    crossing_identity,
    crossing_identity_check,
    find_resonances,
    track_roots,
    winding_number,
    zeros_in_rectangle,
)
from hopfcert.regions import PolygonDisk

from families import D1, a, ex1, ex2, po1, po2, po3


def rect(a0, a1, b0, b1):
    return PolygonDisk.rectangle((F(a0), F(a1)), (F(b0), F(b1)))


def shifted_circle(alpha=(F(-1), F(1))):
    # roots alpha +- i: crosses the axis at (0, 1) moving left to right
    return SelectorPath.from_factors([[a(1, 0, 1), a(0, -2), a(1)]], alpha)


def hurwitz_selector():
    return SelectorPath.from_factors([[a(2), a(3), a(1)]], (F(0), F(1)))


# -- winding ------------------------------------------------------------------

def test_winding_simple_crossing_is_signed():
    w = winding_number(shifted_circle(), rect("-0.5", "0.5", "0.5", "1.5"))
    # the root moves into Re > 0 as alpha grows: local degree -1
    assert w.winding == -1
    assert w.min_modulus > 0


def test_winding_no_zero_inside():
    assert winding_number(shifted_circle(), rect("-0.5", "0.5", 2, 3)).winding == 0


def test_winding_orientation_independent_of_vertex_order():
    r = rect("-0.5", "0.5", "0.5", "1.5")
    cw = PolygonDisk(tuple(reversed(r.vertices)))
    assert winding_number(shifted_circle(), cw).winding == winding_number(shifted_circle(), r).winding


def test_winding_boundary_zero_raises():
    with pytest.raises(BoundaryZeroError, match="zero too close to boundary; refine the disk"):
        winding_number(shifted_circle(), rect(0, "0.5", "0.5", "1.5"))


def test_winding_additivity():
    sel = po1()
    whole = winding_number(sel, rect("-0.2", "0.2", "0.5", "2.5")).winding
    parts = 0
    for a0, a1 in (("-0.2", "0.1"), ("0.1", "0.2")):
        for b0, b1 in (("0.5", "1.5"), ("1.5", "2.5")):
            parts += winding_number(sel, rect(a0, a1, b0, b1)).winding
    # beta = 1 is a transversal crossing; beta = 2 only touches the axis
    assert whole == parts == 1


# -- crossing identity --------------------------------------------------------

def test_crossing_identity_first_example():
    cc = crossing_identity(po1(), [D1])
    assert (cc.t_minus, cc.t_plus) == (2, 0)
    assert cc.total == 1 and cc.holds


def test_crossing_identity_second_example_double_root():
    cc = crossing_identity(po2(), [rect("-0.1", "0.1", 2, 4)])
    assert (cc.t_minus, cc.t_plus, cc.total) == (2, 0, 1)


def test_crossing_identity_third_example():
    assert crossing_identity_check(po3(), [rect("-0.05", "0.05", "0.5", "1.5")])


def test_crossing_identity_no_crossings():
    assert crossing_identity_check(hurwitz_selector(), [])


def test_crossing_identity_parity_violation():
    sel = SelectorPath.from_factors([[a(0, 1), a(1)]], (F(-1), F(1)))
    with pytest.raises(ValueError, match="parity violation: uncovered real-axis crossing"):
        crossing_identity(sel, [])


# -- tracking -----------------------------------------------------------------

def test_track_first_example_crossings_at_zero():
    path = track_roots(po1())
    upper = sorted((e for e in path.events if e.beta > 0), key=lambda e: e.beta)
    assert len(upper) == 2
    for e, beta, direction in zip(upper, (1, 2), (1, 0)):
        assert abs(e.alpha) < 1e-6 and abs(e.beta - beta) < 1e-6
        assert e.direction == direction


def test_track_second_example_double_root():
    path = track_roots(po2())
    upper = sorted((e for e in path.events if e.beta > 0), key=lambda e: e.direction)
    assert [e.direction for e in upper] == [0, 1]
    touch, cross = upper
    assert abs(cross.alpha) < 1e-6 and abs(cross.beta - 3) < 1e-6
    # a tangency next to a double root is only resolved to about sqrt(machine eps)
    assert abs(touch.alpha) < 1e-4 and abs(touch.beta - 3) < 1e-4
    assert zeros_in_rectangle(path, (-0.1, 0.1), (2, 4)) == 1


def test_track_hurwitz_selector_is_quiet():
    path = track_roots(hurwitz_selector(), 50)
    assert path.events == [] and path.sliding == []


def test_track_detects_sliding():
    sel = SelectorPath.from_factors([[a(1), a(0), a(1)], [a(1, 1), a(1)]], (F(0), F(1)))
    path = track_roots(sel, 30)
    assert path.sliding and all(b - a0 > 0.5 for a0, b, _ in path.sliding)


def test_track_vieta_residual_and_csv():
    for sel in (po1(), po2(), po3()):
        path = track_roots(sel)
        assert path.vieta_residual() < 1e-8
    lines = track_roots(po3(), 5).to_csv().splitlines()
    assert lines[0] == "alpha,re,im,branch_id" and len(lines) == 1 + 5 * 5


def test_track_rejects_tiny_grid():
    with pytest.raises(ValueError):
        track_roots(po1(), 1)


# -- resonances ---------------------------------------------------------------

def test_resonance_first_example():
    res = find_resonances(track_roots(po1()))
    assert len(res) == 1
    alpha, beta, j = res[0].as_tuple()
    assert abs(alpha) < 1e-6 and abs(beta - 1) < 1e-6 and j == 2


def test_no_resonance_third_example_or_hurwitz():
    assert find_resonances(track_roots(po3())) == []
    assert find_resonances(track_roots(hurwitz_selector(), 50)) == []


def test_selector_membership():
    assert po1().is_member(ex1())
    assert po2().is_member(ex2())
    off = SelectorPath.from_factors([[a(1, 1), a(0, 1), a(1)], [a(5, -4), a(0, 0, 1), a(1)]], (F(-2, 5), F(4, 5)))
    assert off.membership_violations(ex1())


def test_selector_requires_constant_leading_coefficient():
    with pytest.raises(ValueError):
        SelectorPath((a(1), a(0, 1)), ex1().alpha_range)


def test_float_coeffs_match_exact():
    sel = po1()
    for al in (F(-2, 5), F(0), F(1, 3)):
        exact = [float(c) for c in reversed(sel.at(al).coeffs)]
        assert np.allclose(sel.float_coeffs(float(al)), exact)
