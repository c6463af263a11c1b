import random
from fractions import Fraction as F

import pytest

from hopfcert.algebra import Box2, RationalInterval
from hopfcert.family import CoeffInterval, IntervalFamily
from hopfcert.regions import (
    CERTIFIED_EMPTY,
    INCONCLUSIVE,
    NONEMPTY,
    PolygonDisk,
    RegionOracle,
    certify_R5p,
    certify_R5pp,
    grid_sample,
    polygons_disjoint,
    region_cover,
    validate_disks,
)

from families import D1, a, ex1, ex2, ex3


def iv(lo, hi):
    return RationalInterval(F(lo), F(hi))


def hurwitz_family():
    # (l + 1)(l + 2) with a little slack: far from the imaginary axis
    return IntervalFamily.build(
        [CoeffInterval(a("1.9"), a("2.1")), CoeffInterval(a("2.9"), a("3.1"))], iv(0, 1)
    )


@pytest.fixture(scope="module")
def r5pp_ex1():
    return certify_R5pp(ex1())


@pytest.fixture(scope="module")
def r5pp_ex2():
    return certify_R5pp(ex2())


# -- oracle -------------------------------------------------------------------

def test_excludes_is_sound_on_random_boxes():
    rng = random.Random(12)
    for fam in (ex1(), ex2()):
        o = RegionOracle(fam)
        lo, w = fam.alpha_range.lo, fam.alpha_range.width
        excluded = 0
        for _ in range(150):
            a0 = lo + w * F(rng.randint(0, 90), 100)
            b0 = F(rng.randint(0, 300), 100)
            box = Box2(RationalInterval(a0, a0 + w * F(rng.randint(1, 10), 100)), iv(b0, b0 + F(rng.randint(1, 60), 100)))
            j = rng.choice([1, 2, 3])
            if not o.excludes(box, j):
                continue
            excluded += 1
            for _ in range(100):
                x = box.alpha.lo + box.alpha.width * F(rng.randint(0, 97), 97)
                y = box.beta.lo + box.beta.width * F(rng.randint(0, 89), 89)
                assert not o.in_S(x, y, j) if j > 1 else not o.in_R(x, y)
        assert excluded > 20


def test_interior_boxes_lie_in_fR():
    o = RegionOracle(ex1())
    cover = region_cover(o, depth=8)
    inner = [b for b in cover.boxes if o.interior_of_R(b)]
    assert inner
    rng = random.Random(1)
    for box in inner[:20]:
        for _ in range(25):
            x = box.alpha.lo + box.alpha.width * F(rng.randint(0, 50), 50)
            y = box.beta.lo + box.beta.width * F(rng.randint(0, 50), 50)
            assert o.in_R(x, y)


# -- (R5'') -------------------------------------------------------------------

def test_R5pp_second_example_certified_empty(r5pp_ex2):
    assert r5pp_ex2.verdict == CERTIFIED_EMPTY
    assert r5pp_ex2.j_max >= 2
    assert [r.j for r in r5pp_ex2.per_j] == list(range(2, r5pp_ex2.j_max + 1))


def test_R5pp_first_example_resonance_witness(r5pp_ex1):
    assert r5pp_ex1.verdict == NONEMPTY
    hit = next(r for r in r5pp_ex1.per_j if r.witness is not None)
    o = RegionOracle(ex1())
    x, y = hit.witness
    assert hit.j == 2
    assert o.in_R(x, y) and o.in_S(x, y, 2)
    # the 2:1 resonance of the representative sits at alpha = 0, beta = 1 (and 2)
    assert abs(float(x)) < 0.3 and abs(float(y) - 1) < 0.2


def test_R5pp_empty_fR_family():
    r = certify_R5pp(hurwitz_family())
    assert r.verdict == CERTIFIED_EMPTY and r.cover.empty and r.per_j == []


def test_R5pp_requires_R2_and_valid_limits():
    fam = IntervalFamily.build([CoeffInterval(a(0, 1), a(1, 1)), CoeffInterval.point(a(1))], iv("-0.5", "0.5"))
    with pytest.raises(ValueError, match="R2 must hold before region analysis"):
        certify_R5pp(fam)
    with pytest.raises(ValueError):
        certify_R5pp(ex2(), j_max=1)
    with pytest.raises(ValueError):
        certify_R5pp(ex2(), depth_limit=0)


def test_R5pp_depth_monotone_second_example():
    for depth in (9, 12, 16):
        assert certify_R5pp(ex2(), depth_limit=depth).verdict in (CERTIFIED_EMPTY, INCONCLUSIVE)


def test_beta_min_strip_has_no_fR_points(r5pp_ex1):
    fam = ex1()
    o = RegionOracle(fam)
    bmin = r5pp_ex1.cover.beta_min
    assert bmin > 0
    rng = random.Random(2)
    for _ in range(10_000):
        x = fam.alpha_range.lo + fam.alpha_range.width * F(rng.randint(0, 10_000), 10_000)
        y = bmin * F(rng.randint(0, 10_000), 10_000)
        assert not o.in_R(x, y)


def test_grid_consistent_with_certified_emptiness(r5pp_ex2):
    fam = ex2()
    o = RegionOracle(fam)
    g = grid_sample(fam, 60)
    ia, ib = g.mask("in_fR").nonzero()[1], g.mask("in_fR").nonzero()[0]
    assert len(ia) > 0
    lo, w = fam.alpha_range.lo, fam.alpha_range.width
    for k, i in zip(ia, ib):
        x = lo + w * F(2 * int(k) + 1, 2 * len(g.alphas))
        y = F(g.betas[i])
        if o.in_R(x, y):
            assert not any(o.in_S(x, y, j) for j in range(2, r5pp_ex2.j_max + 1))


# -- polygons -----------------------------------------------------------------

def test_polygon_validation():
    with pytest.raises(ValueError):
        PolygonDisk(((F(0), F(1)), (F(1), F(1))))
    with pytest.raises(ValueError):
        PolygonDisk(((F(0), F(1)), (F(1), F(1)), (F(2), F(1))))
    with pytest.raises(ValueError):  # bow tie
        PolygonDisk(((F(0), F(1)), (F(1), F(2)), (F(1), F(1)), (F(0), F(2))))
    r = PolygonDisk.rectangle((F(0), F(1)), (F(1), F(2)))
    assert r.contains((F(0), F(1))) and r.contains((F(1, 2), F(3, 2))) and not r.contains((F(2), F(1)))


def test_disk_placement_checks():
    fam = ex1()
    a_ok = PolygonDisk.rectangle((F(0), F(1, 5)), (F(1), F(2)))
    overlapping = PolygonDisk.rectangle((F(1, 10), F(3, 10)), (F(3, 2), F(5, 2)))
    assert not polygons_disjoint(a_ok, overlapping)
    with pytest.raises(ValueError, match="overlap"):
        validate_disks(fam, [a_ok, overlapping])
    with pytest.raises(ValueError, match="escapes"):
        validate_disks(fam, [PolygonDisk.rectangle((F(0), F(1)), (F(1), F(2)))])
    with pytest.raises(ValueError, match="beta > 0"):
        validate_disks(fam, [PolygonDisk.rectangle((F(0), F(1, 2)), (F(0), F(2)))])


# -- (R5') --------------------------------------------------------------------

def test_R5p_first_example_quadrangle_certified():
    r = certify_R5p(ex1(), [D1])
    assert r.verdict == "certified"
    assert r.containment.verdict == CERTIFIED_EMPTY
    assert all(e.clear for e in r.edges) and len(r.edges) == 4


def test_R5p_shrunk_disk_misses_part_of_fR():
    small = PolygonDisk(((F(-7, 20), F(9, 10)), (F(1, 5), F(7, 10)), (F(1, 5), F(12, 5)), (F(-7, 20), F(12, 5))))
    r = certify_R5p(ex1(), [small])
    assert r.verdict == "refuted"
    assert r.containment.verdict == NONEMPTY
    x, y = r.containment.witness
    assert RegionOracle(ex1()).in_R(x, y) and not small.contains((x, y))


def test_R5p_whole_strip_rectangle_meets_fS():
    big = PolygonDisk.rectangle((F(-2, 5), F(4, 5)), (F(1, 10), F(52)))
    r = certify_R5p(ex1(), [big])
    assert r.verdict == "refuted"
    bad = [e for e in r.edges if not e.clear]
    assert bad
    o = RegionOracle(ex1())
    for e in bad:
        if "alpha" in e.witness:
            x, y = F(e.witness["alpha"]), F(e.witness["beta"])
            assert o.in_S(x, y, e.witness["j"])


def test_R5p_no_rectangle_for_first_example():
    # any rectangle around fR has a bottom edge inside some shadow fS_j
    rect = PolygonDisk.rectangle((F(-3, 10), F(7, 10)), (F(9, 10), F(12, 5)))
    r = certify_R5p(ex1(), [rect])
    assert r.verdict == "refuted"
    assert any(not e.clear for e in r.edges)


# -- grid ---------------------------------------------------------------------

def test_grid_first_example_two_components():
    g = grid_sample(ex1(), 400)
    assert g.fr_components() == 2
    assert not g.mask("undecided").any()


def test_grid_csv_header_and_rows():
    g = grid_sample(ex2(), 20)
    lines = g.to_csv().splitlines()
    assert lines[0] == "alpha,beta,class"
    assert len(lines) == 1 + 400
    assert g.mask("in_fR").any()
    assert any(c.startswith("in_fS_") for c in g.classes.ravel())


def test_grid_empty_family_all_outside():
    g = grid_sample(hurwitz_family(), 30, beta_range=(0.0, 5.0), j_max=3)
    assert set(g.classes.ravel()) == {"outside"}


def test_grid_rejects_tiny_resolution():
    with pytest.raises(ValueError):
        grid_sample(ex3(), 1)


def test_svg_has_polygon_overlay():
    svg = grid_sample(ex1(), 40).to_svg([D1])
    assert svg.startswith("<svg") and "<polygon" in svg
