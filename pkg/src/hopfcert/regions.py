"""Certified work with the planar sets fR and fS_j.

fR is the set of (alpha, beta) with W1 <= 0 and W2 <= 0, i.e. the points
where some member of the family has the root i*beta; fS_j is fR shrunk
vertically by j.  Everything is restricted to beta >= 0 (both W's are even
in beta).
"""

from __future__ import annotations

import csv
import io
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .algebra import (
    BivariatePoly,
    Box2,
    RationalInterval,
    box_range,
    find_common_nonpositive,
    format_rational,
    to_rational,
)
from .family import IntervalFamily, beta_bound, sign_pair
from .stability import Verdict, check_R2

CERTIFIED_EMPTY = "certified_empty"
NONEMPTY = "nonempty_with_witness"
INCONCLUSIVE = "inconclusive"

DEFAULT_DEPTH_LIMIT = 24
DEFAULT_MAX_BOXES = 400_000

Point = tuple[Fraction, Fraction]


def _div_beta(p: BivariatePoly) -> BivariatePoly:
    if p.beta_coeffs and not p.beta_coeffs[0].is_zero():
        raise ValueError("polynomial is not divisible by beta")
    return BivariatePoly(p.beta_coeffs[1:])


def _scaled(box: Box2, j: int) -> Box2:
    if j == 1:
        return box
    return Box2(box.alpha, RationalInterval(box.beta.lo * j, box.beta.hi * j))


def _same_strict_sign(x: RationalInterval, y: RationalInterval) -> bool:
    return (x.lo > 0 and y.lo > 0) or (x.hi < 0 and y.hi < 0)


class RegionOracle:
    """Exact membership and box-exclusion tests for fR and its shadows."""

    def __init__(self, fam: IntervalFamily):
        self.family = fam
        sp = sign_pair(fam)
        self.signs = sp
        self.W1, self.W2 = sp.W1, sp.W2
        self.g1, self.g2 = sp.re_g1, sp.re_g2
        # Im h_i(i beta) = beta * ht_i; for beta > 0 the sign of W2 is that of ht1*ht2
        self.ht1, self.ht2 = _div_beta(sp.im_h1), _div_beta(sp.im_h2)

    def in_R(self, alpha, beta) -> bool:
        return self.W1(alpha, beta) <= 0 and self.W2(alpha, beta) <= 0

    def in_S(self, alpha, beta, j: int) -> bool:
        return self.in_R(alpha, j * beta)

    def excludes(self, box: Box2, j: int = 1) -> bool:
        """True when no point of ``box`` maps into fR under ``beta -> j*beta``."""
        b = _scaled(box, j)
        if _same_strict_sign(box_range(self.g1, b), box_range(self.g2, b)):
            return True
        if b.beta.lo > 0 and _same_strict_sign(box_range(self.ht1, b), box_range(self.ht2, b)):
            return True
        return False

    def interior_of_R(self, box: Box2) -> bool:
        """True when W1 < 0 and W2 < 0 on the whole box (so the box lies in fR)."""
        if box.beta.lo <= 0:
            return False
        x1, x2 = box_range(self.g1, box), box_range(self.g2, box)
        y1, y2 = box_range(self.ht1, box), box_range(self.ht2, box)
        opposite = lambda u, v: (u.hi < 0 and v.lo > 0) or (u.lo > 0 and v.hi < 0)
        return opposite(x1, x2) and opposite(y1, y2)


@dataclass
class BnbReport:
    verdict: str
    witness: Optional[Point] = None
    unresolved: list[Box2] = field(default_factory=list)
    max_depth: int = 0
    boxes: int = 0
    j: Optional[int] = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "verdict": self.verdict,
            "boxes_processed": self.boxes,
            "max_depth": self.max_depth,
        }
        if self.j is not None:
            d["j"] = self.j
        if self.witness is not None:
            d["witness"] = {"alpha": format_rational(self.witness[0]), "beta": format_rational(self.witness[1])}
        if self.unresolved:
            d["unresolved_boxes"] = [_box_dict(b) for b in self.unresolved[:50]]
            d["unresolved_count"] = len(self.unresolved)
        d.update(self.details)
        return d


def _box_dict(b: Box2) -> dict:
    return {
        "alpha": [format_rational(b.alpha.lo), format_rational(b.alpha.hi)],
        "beta": [format_rational(b.beta.lo), format_rational(b.beta.hi)],
    }


def branch_and_bound(
    roots: Sequence[Box2],
    discard: Callable[[Box2], bool],
    witness: Callable[[Point], bool],
    depth_limit: int = DEFAULT_DEPTH_LIMIT,
    max_boxes: int = DEFAULT_MAX_BOXES,
) -> BnbReport:
    """Decide emptiness of a closed set by recursive quadrisection.

    ``discard(box)`` must only return True for boxes disjoint from the set;
    ``witness(p)`` is an exact membership test.  Breadth-first, so the
    result is deterministic.
    """
    queue = deque((b, 0) for b in roots)
    processed = 0
    deepest = 0
    unresolved = []
    while queue:
        box, depth = queue.popleft()
        processed += 1
        deepest = max(deepest, depth)
        if discard(box):
            continue
        c = box.center()
        if witness(c):
            return BnbReport(NONEMPTY, c, [], deepest, processed)
        if depth >= depth_limit or processed + len(queue) >= max_boxes:
            for p in box.corners():
                if witness(p):
                    return BnbReport(NONEMPTY, p, [], deepest, processed)
            unresolved.append(box)
            continue
        queue.extend((child, depth + 1) for child in box.split())
    if unresolved:
        return BnbReport(INCONCLUSIVE, None, unresolved, deepest, processed)
    return BnbReport(CERTIFIED_EMPTY, None, [], deepest, processed)


@dataclass
class RegionCover:
    """Boxes whose union contains fR, with the hull bounds derived from them."""

    boxes: list[Box2]
    beta_min: Fraction
    beta_max: Fraction
    search_bound: Fraction
    depth: int

    @property
    def empty(self) -> bool:
        return not self.boxes


def region_cover(oracle: RegionOracle, depth: int = 10, max_boxes: int = DEFAULT_MAX_BOXES) -> RegionCover:
    """Certified cover of fR inside ``[alpha_-, alpha_+] x [0, B]``.

    Boxes certified outside fR are dropped; boxes certified inside fR stop
    splitting.  Requires (R2) so that strips near beta = 0 get discarded.
    """
    fam = oracle.family
    B = beta_bound(fam)
    queue = deque([(Box2(fam.alpha_range, RationalInterval(Fraction(0), B)), 0)])
    kept: list[Box2] = []
    processed = 0
    while queue:
        box, d = queue.popleft()
        processed += 1
        if oracle.excludes(box):
            continue
        if d >= depth or oracle.interior_of_R(box) or processed + len(queue) >= max_boxes:
            kept.append(box)
            continue
        queue.extend((c, d + 1) for c in box.split())
    if not kept:
        return RegionCover([], Fraction(0), Fraction(0), B, depth)
    bmin = min(b.beta.lo for b in kept)
    bmax = max(b.beta.hi for b in kept)
    return RegionCover(kept, bmin, bmax, B, depth)


def _require_R2(fam: IntervalFamily):
    if check_R2(fam).verdict is not Verdict.CERTIFIED:
        raise ValueError("R2 must hold before region analysis")


def _cover_with_positive_beta_min(oracle: RegionOracle, depth: int) -> RegionCover:
    cover = region_cover(oracle, depth)
    while not cover.empty and cover.beta_min == 0 and depth < 20:
        depth += 2
        cover = region_cover(oracle, depth)
    if not cover.empty and cover.beta_min == 0:
        raise RuntimeError("could not separate fR from beta = 0")
    return cover


def default_j_max(cover: RegionCover) -> int:
    """Largest j for which fS_j can meet fR: j * beta_min <= beta_max."""
    if cover.empty:
        return 1
    return max(1, math.floor(cover.beta_max / cover.beta_min))


@dataclass
class R5ppResult:
    verdict: str
    j_max: int
    cover: RegionCover
    per_j: list[BnbReport]

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED_EMPTY

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "j_max": self.j_max,
            "fR_beta_bounds": [format_rational(self.cover.beta_min), format_rational(self.cover.beta_max)],
            "cover_boxes": len(self.cover.boxes),
            "per_j": [r.to_dict() for r in self.per_j],
        }


def certify_R5pp(
    fam: IntervalFamily,
    j_max: Optional[int] = None,
    depth_limit: int = DEFAULT_DEPTH_LIMIT,
    cover_depth: int = 8,
    max_boxes: int = DEFAULT_MAX_BOXES,
) -> R5ppResult:
    """Decide fR ∩ fS = ∅ (restricted to beta >= 0), one j at a time."""
    if j_max is not None and j_max < 2:
        raise ValueError("j_max must be at least 2")
    if depth_limit < 1:
        raise ValueError("depth_limit must be at least 1")
    _require_R2(fam)
    oracle = RegionOracle(fam)
    cover = _cover_with_positive_beta_min(oracle, cover_depth)
    jm = default_j_max(cover) if j_max is None else j_max
    reports = []
    for j in range(2, jm + 1):
        def discard(box, j=j):
            if box.beta.lo * j > cover.beta_max:
                return True
            return oracle.excludes(box) or oracle.excludes(box, j)

        def member(p, j=j):
            return oracle.in_R(*p) and oracle.in_S(p[0], p[1], j)

        rep = branch_and_bound(cover.boxes, discard, member, depth_limit - cover.depth, max_boxes)
        rep.max_depth += cover.depth
        rep.j = j
        reports.append(rep)
        if rep.verdict == NONEMPTY:
            break
    verdicts = {r.verdict for r in reports}
    if NONEMPTY in verdicts:
        verdict = NONEMPTY
    elif INCONCLUSIVE in verdicts:
        verdict = INCONCLUSIVE
    else:
        verdict = CERTIFIED_EMPTY
    return R5ppResult(verdict, jm, cover, reports)


# --------------------------------------------------------------------------
# polygons


@dataclass(frozen=True)
class PolygonDisk:
    """Simple polygon with rational vertices, listed in order (either orientation)."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = tuple((to_rational(a), to_rational(b)) for a, b in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 3:
            raise ValueError("a polygon needs at least three vertices")
        if _signed_area2(vs) == 0:
            raise ValueError("degenerate polygon (zero area)")
        if not _is_simple(vs):
            raise ValueError("polygon is not simple")

    @classmethod
    def rectangle(cls, alpha: tuple, beta: tuple) -> "PolygonDisk":
        a0, a1 = alpha
        b0, b1 = beta
        return cls(((a0, b0), (a1, b0), (a1, b1), (a0, b1)))

    def edges(self) -> list[tuple[Point, Point]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def ccw(self) -> "PolygonDisk":
        if _signed_area2(self.vertices) > 0:
            return self
        return PolygonDisk(tuple(reversed(self.vertices)))

    def contains(self, p: Point) -> bool:
        """Closed containment (boundary counts as inside), exact."""
        for a, b in self.edges():
            if _on_segment(p, a, b):
                return True
        return _winding_parity(p, self.vertices)

    def contains_box(self, box: Box2) -> bool:
        if not all(self.contains(c) for c in box.corners()):
            return False
        if any(_segment_meets_open_box(a, b, box) for a, b in self.edges()):
            return False
        return self.contains(box.center())

    def bounding_box(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)

    def to_list(self) -> list[list[str]]:
        return [[format_rational(a), format_rational(b)] for a, b in self.vertices]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _signed_area2(vs) -> Fraction:
    return sum(vs[i][0] * vs[(i + 1) % len(vs)][1] - vs[(i + 1) % len(vs)][0] * vs[i][1] for i in range(len(vs)))


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    if _cross(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _segments_intersect(p1, p2, p3, p4) -> bool:
    d1, d2 = _cross(p3, p4, p1), _cross(p3, p4, p2)
    d3, d4 = _cross(p1, p2, p3), _cross(p1, p2, p4)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return (
        (d1 == 0 and _on_segment(p1, p3, p4))
        or (d2 == 0 and _on_segment(p2, p3, p4))
        or (d3 == 0 and _on_segment(p3, p1, p2))
        or (d4 == 0 and _on_segment(p4, p1, p2))
    )


def _is_simple(vs) -> bool:
    n = len(vs)
    edges = [(vs[i], vs[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for k in range(i + 1, n):
            if k == i + 1 or (i == 0 and k == n - 1):
                # adjacent edges may only share their common vertex
                a, b = edges[i]
                c, d = edges[k]
                shared = b if k == i + 1 else a
                other_i = a if k == i + 1 else b
                other_k = d if k == i + 1 else c
                if _cross(other_i, shared, other_k) == 0 and (
                    _on_segment(other_k, other_i, shared) or _on_segment(other_i, shared, other_k)
                ):
                    return False
                continue
            if _segments_intersect(*edges[i], *edges[k]):
                return False
    return True


def _winding_parity(p: Point, vs) -> bool:
    """Even-odd rule for a point known not to lie on the boundary."""
    inside = False
    n = len(vs)
    x, y = p
    for i in range(n):
        (x1, y1), (x2, y2) = vs[i], vs[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < xi:
                inside = not inside
    return inside


def _segment_meets_open_box(a: Point, b: Point, box: Box2) -> bool:
    """Does the closed segment ab meet the open box?  (Liang-Barsky, exact.)"""
    t0, t1 = Fraction(0), Fraction(1)
    strict_lo, strict_hi = False, False
    for (p0, d), (lo, hi) in (
        ((a[0], b[0] - a[0]), (box.alpha.lo, box.alpha.hi)),
        ((a[1], b[1] - a[1]), (box.beta.lo, box.beta.hi)),
    ):
        if d == 0:
            if not (lo < p0 < hi):
                return False
            continue
        ta, tb = (lo - p0) / d, (hi - p0) / d
        if ta > tb:
            ta, tb = tb, ta
        # open slab: t strictly between ta and tb
        if ta > t0 or (ta == t0 and not strict_lo):
            t0, strict_lo = ta, True
        if tb < t1 or (tb == t1 and not strict_hi):
            t1, strict_hi = tb, True
    if strict_lo or strict_hi:
        return t0 < t1
    return t0 <= t1


def polygons_disjoint(p: PolygonDisk, q: PolygonDisk) -> bool:
    for a, b in p.edges():
        for c, d in q.edges():
            if _segments_intersect(a, b, c, d):
                return False
    if q.contains(p.vertices[0]) or p.contains(q.vertices[0]):
        return False
    return True


@dataclass
class EdgeCheck:
    disk: int
    edge: int
    j_max: int
    clear: bool
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        d = {"disk": self.disk, "edge": self.edge, "j_max": self.j_max, "clear": self.clear}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class R5pResult:
    verdict: str
    containment: BnbReport
    edges: list[EdgeCheck]
    cover: RegionCover

    @property
    def certified(self) -> bool:
        return self.verdict == Verdict.CERTIFIED.value

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "fR_beta_bounds": [format_rational(self.cover.beta_min), format_rational(self.cover.beta_max)],
            "clause_ii_fR_outside_disks": self.containment.to_dict(),
            "clause_iii_boundary_vs_fS": [e.to_dict() for e in self.edges],
        }


def validate_disks(fam: IntervalFamily, disks: Sequence[PolygonDisk]) -> None:
    a = fam.alpha_range
    for k, d in enumerate(disks):
        for v in d.vertices:
            if v[0] not in a:
                raise ValueError(f"disk {k} escapes the alpha strip {a}")
            if v[1] <= 0:
                raise ValueError(f"disk {k} must lie in beta > 0")
    for i in range(len(disks)):
        for k in range(i + 1, len(disks)):
            if not polygons_disjoint(disks[i], disks[k]):
                raise ValueError(f"disks {i} and {k} overlap")


def edge_clear_of_shadows(
    oracle: RegionOracle, p0: Point, p1: Point, beta_max: Fraction, j_max: Optional[int] = None
) -> tuple[int, Optional[dict]]:
    """Check that the segment p0-p1 avoids every fS_j (exact, one j at a time)."""
    low = min(p0[1], p1[1])
    jm = math.floor(beta_max / low) if j_max is None else j_max
    for j in range(2, jm + 1):
        f1 = oracle.W1.scale_beta(j).on_segment(p0, p1)
        f2 = oracle.W2.scale_beta(j).on_segment(p0, p1)
        hit = find_common_nonpositive([f1, f2], RationalInterval(Fraction(0), Fraction(1)))
        if hit is None:
            continue
        if hit.is_rational:
            t = hit.point
            pt = (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))
            return jm, {"j": j, "t": format_rational(t), "alpha": format_rational(pt[0]), "beta": format_rational(pt[1])}
        return jm, {"j": j, "t_interval": str(hit.interval)}
    return jm, None


def certify_R5p(
    fam: IntervalFamily,
    disks: Sequence[PolygonDisk],
    j_max: Optional[int] = None,
    depth_limit: int = DEFAULT_DEPTH_LIMIT,
    cover_depth: int = 8,
    max_boxes: int = DEFAULT_MAX_BOXES,
) -> R5pResult:
    """(ii) fR inside the union of disks, and (iii) no disk boundary meets fS."""
    validate_disks(fam, disks)
    _require_R2(fam)
    oracle = RegionOracle(fam)
    cover = _cover_with_positive_beta_min(oracle, cover_depth)

    def discard(box):
        return oracle.excludes(box) or any(d.contains_box(box) for d in disks)

    def escaped(p):
        return oracle.in_R(*p) and not any(d.contains(p) for d in disks)

    containment = branch_and_bound(cover.boxes, discard, escaped, depth_limit - cover.depth, max_boxes)
    containment.max_depth += cover.depth

    edges = []
    for k, d in enumerate(disks):
        for e, (a, b) in enumerate(d.edges()):
            jm, wit = edge_clear_of_shadows(oracle, a, b, cover.beta_max, j_max)
            edges.append(EdgeCheck(k, e, jm, wit is None, wit))

    if containment.verdict == NONEMPTY or any(not e.clear for e in edges):
        verdict = Verdict.REFUTED.value
    elif containment.verdict == CERTIFIED_EMPTY:
        verdict = Verdict.CERTIFIED.value
    else:
        verdict = Verdict.INCONCLUSIVE.value
    return R5pResult(verdict, containment, edges, cover)


# --------------------------------------------------------------------------
# float-grade grid export


@dataclass
class RegionGrid:
    alphas: np.ndarray
    betas: np.ndarray
    classes: np.ndarray  # object array of str, shape (len(betas), len(alphas))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha", "beta", "class"])
        for i, b in enumerate(self.betas):
            for k, a in enumerate(self.alphas):
                w.writerow([f"{a:.10g}", f"{b:.10g}", self.classes[i, k]])
        return buf.getvalue()

    def mask(self, cls: str) -> np.ndarray:
        return self.classes == cls

    def fr_components(self) -> int:
        from scipy import ndimage

        _, n = ndimage.label(self.mask("in_fR"))
        return n

    def to_svg(self, disks: Sequence[PolygonDisk] = (), width: int = 600, height: int = 600) -> str:
        colors = {"in_fR": "#555555", "outside": None, "undecided": "#cc3333"}
        na, nb = len(self.alphas), len(self.betas)
        a0, a1 = self.alphas[0], self.alphas[-1]
        b0, b1 = self.betas[0], self.betas[-1]
        da = (a1 - a0) / max(na - 1, 1)
        db = (b1 - b0) / max(nb - 1, 1)
        lo_a, hi_a, lo_b, hi_b = a0 - da / 2, a1 + da / 2, b0 - db / 2, b1 + db / 2
        sx = lambda a: (a - lo_a) / (hi_a - lo_a) * width
        sy = lambda b: height - (b - lo_b) / (hi_b - lo_b) * height
        cw, ch = width / na, height / nb
        parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
                 f'<rect width="{width}" height="{height}" fill="white"/>']
        for i in range(nb):
            k = 0
            while k < na:
                cls = self.classes[i, k]
                run = k
                while run + 1 < na and self.classes[i, run + 1] == cls:
                    run += 1
                color = colors.get(cls, "#bbbbbb")
                if color:
                    x = sx(self.alphas[k]) - cw / 2
                    y = sy(self.betas[i]) - ch / 2
                    parts.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw * (run - k + 1):.2f}" height="{ch:.2f}" fill="{color}"/>')
                k = run + 1
        for d in disks:
            pts = " ".join(f"{sx(float(a)):.2f},{sy(float(b)):.2f}" for a, b in d.vertices)
            parts.append(f'<polygon points="{pts}" fill="none" stroke="black" stroke-dasharray="6,4" stroke-width="2"/>')
        parts.append("</svg>")
        return "\n".join(parts) + "\n"


def _float_poly_grid(p: BivariatePoly, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = np.zeros(np.broadcast(A, B).shape)
    for c in reversed(p.beta_coeffs):
        ca = np.zeros_like(A, dtype=float)
        for x in reversed(c.coeffs):
            ca = ca * A + float(x)
        out = out * B + ca
    return out


def grid_sample(
    fam: IntervalFamily,
    resolution: int | tuple[int, int] = 200,
    beta_range: Optional[tuple[float, float]] = None,
    j_max: Optional[int] = None,
) -> RegionGrid:
    """Classify cell centers of a regular grid.

    Classes: ``in_fR``, ``in_fS_<j>`` (smallest such j), ``outside``, and
    ``undecided`` for float-positive fR cells that fail exact re-verification.
    """
    na, nb = (resolution, resolution) if isinstance(resolution, int) else resolution
    if na < 2 or nb < 2:
        raise ValueError("resolution must be at least 2 per axis")
    oracle = RegionOracle(fam)
    if beta_range is None:
        cover = region_cover(oracle, depth=8)
        top = float(cover.beta_max) * 1.1 if not cover.empty else 1.0
        beta_range = (0.0, top)
        if j_max is None:
            j_max = default_j_max(cover) if not cover.empty else 1
            j_max = max(j_max, math.ceil(float(cover.beta_max) / max(float(cover.beta_min), 1e-9)))
    if j_max is None:
        j_max = 10
    a_lo, a_hi = float(fam.alpha_range.lo), float(fam.alpha_range.hi)
    da = (a_hi - a_lo) / na
    db = (beta_range[1] - beta_range[0]) / nb
    alphas = a_lo + da * (np.arange(na) + 0.5)
    betas = beta_range[0] + db * (np.arange(nb) + 0.5)
    A, Bm = np.meshgrid(alphas, betas)

    def in_r(scale):
        return (_float_poly_grid(oracle.W1, A, Bm * scale) <= 0) & (_float_poly_grid(oracle.W2, A, Bm * scale) <= 0)

    classes = np.full(A.shape, "outside", dtype=object)
    fr = in_r(1)
    for j in range(j_max, 1, -1):
        classes[in_r(j)] = f"in_fS_{j}"
    # exact re-verification of every fR cell at a rational copy of its center
    for i, k in zip(*np.nonzero(fr)):
        i, k = int(i), int(k)
        a = fam.alpha_range.lo + (fam.alpha_range.hi - fam.alpha_range.lo) * Fraction(2 * k + 1, 2 * na)
        b = Fraction(beta_range[0]) + Fraction(beta_range[1] - beta_range[0]) * Fraction(2 * i + 1, 2 * nb)
        classes[i, k] = "in_fR" if oracle.in_R(a, b) else "undecided"
    return RegionGrid(alphas, betas, classes)
