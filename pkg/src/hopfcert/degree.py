"""Validator-grade numerics for concrete selectors.

Winding numbers of ``(alpha, beta) -> P(alpha)(i beta)`` along polygons,
the crossing-count identity, eigenvalue tracking and resonance search.
These run in floating point with explicit tolerances and never feed the
certificate's normative verdict.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment, minimize_scalar

from .algebra import RationalInterval, UniPoly, nonnegative_on, to_rational
from .family import IntervalFamily
from .regions import PolygonDisk
from .stability import root_count

ZERO_TOL = 1e-9  # |Re| below this counts as "on the imaginary axis"
RATIO_TOL = 1e-6


def _poly_mul(p: Sequence[UniPoly], q: Sequence[UniPoly]) -> list[UniPoly]:
    out = [UniPoly([], "a")] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for k, y in enumerate(q):
            out[i + k] = out[i + k] + x * y
    return out


@dataclass(frozen=True)
class SelectorPath:
    """A concrete member ``P(alpha)(l) = sum_k coeffs[k](alpha) l^k`` for each alpha."""

    coeffs: tuple[UniPoly, ...]
    alpha_range: RationalInterval

    def __post_init__(self):
        cs = tuple(c.with_var("a") for c in self.coeffs)
        while len(cs) > 1 and cs[-1].is_zero():
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)
        if not cs or cs[-1].is_zero():
            raise ValueError("selector must be a nonzero polynomial")
        if cs[-1].degree != 0:
            raise ValueError("leading coefficient of the selector must be constant in alpha")

    @classmethod
    def from_factors(cls, factors: Sequence[Sequence[UniPoly]], alpha_range) -> "SelectorPath":
        acc: list[UniPoly] = [UniPoly([1], "a")]
        for f in factors:
            acc = _poly_mul(acc, list(f))
        return cls(tuple(acc), _as_interval(alpha_range))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def at(self, alpha) -> UniPoly:
        a = to_rational(alpha)
        return UniPoly([c(a) for c in self.coeffs], "l")

    def membership_violations(self, fam: IntervalFamily) -> list[str]:
        out = []
        if self.degree != fam.degree:
            return [f"selector degree {self.degree} differs from family degree {fam.degree}"]
        if self.coeffs[-1] != UniPoly([1]):
            out.append("selector is not monic")
        for k, c in enumerate(fam.coeffs):
            if not nonnegative_on(self.coeffs[k] - c.lo, fam.alpha_range):
                out.append(f"coefficient {k} drops below its lower endpoint")
            if not nonnegative_on(c.hi - self.coeffs[k], fam.alpha_range):
                out.append(f"coefficient {k} exceeds its upper endpoint")
        return out

    def is_member(self, fam: IntervalFamily) -> bool:
        return not self.membership_violations(fam)

    # float evaluation ---------------------------------------------------
    def _float_table(self):
        cached = self.__dict__.get("_table")
        if cached is None:
            cached = [np.array([float(x) for x in reversed(c.coeffs)] or [0.0]) for c in self.coeffs]
            object.__setattr__(self, "_table", cached)
        return cached

    def float_coeffs(self, alpha: float) -> np.ndarray:
        """Coefficients at ``alpha``, highest degree first (numpy convention)."""
        return np.array([np.polyval(c, alpha) for c in reversed(self._float_table())])

    def roots(self, alpha: float) -> np.ndarray:
        return np.roots(self.float_coeffs(alpha))

    def value_on_axis(self, alpha: float, beta: float) -> complex:
        return complex(np.polyval(self.float_coeffs(alpha), 1j * beta))

    def scale_at(self, alpha: float, beta: float) -> float:
        """Size of the largest term of ``P(alpha)(i beta)``; used to make moduli relative."""
        cs = self.float_coeffs(alpha)[::-1]
        return float(max(abs(c) * abs(beta) ** k for k, c in enumerate(cs))) or 1.0


def _as_interval(r) -> RationalInterval:
    return r if isinstance(r, RationalInterval) else RationalInterval(*r)


# --------------------------------------------------------------------------
# winding numbers


@dataclass(frozen=True)
class WindingResult:
    winding: int
    depth: int
    min_modulus: float
    samples: int

    def to_dict(self) -> dict:
        return {
            "winding": self.winding,
            "refinement_depth": self.depth,
            "min_boundary_modulus": float(f"{self.min_modulus:.6g}"),
            "samples": self.samples,
        }


class BoundaryZeroError(ValueError):
    pass


def _angle(z1: complex, z0: complex) -> float:
    return math.atan2((z1 / z0).imag, (z1 / z0).real)


def winding_number(
    selector: SelectorPath,
    boundary: PolygonDisk,
    base_steps: int = 32,
    max_depth: int = 30,
    rel_threshold: float = 1e-12,
) -> WindingResult:
    """Degree of ``(alpha, beta) -> P(alpha)(i beta)`` on the polygon, counterclockwise.

    Each accepted step turns the argument by less than pi/4 and agrees with
    its two halves; steps are halved until that holds.  This is the signed
    Brouwer degree for the standard orientation of the (alpha, beta) plane.
    """
    poly = boundary.ccw()
    total = 0.0
    deepest = 0
    samples = 0
    min_mod = math.inf

    def f(p0, p1, s):
        a = p0[0] + s * (p1[0] - p0[0])
        b = p0[1] + s * (p1[1] - p0[1])
        z = selector.value_on_axis(a, b)
        rel = abs(z) / selector.scale_at(a, b)
        return z, rel

    for v0, v1 in poly.edges():
        p0 = (float(v0[0]), float(v0[1]))
        p1 = (float(v1[0]), float(v1[1]))
        grid = [k / base_steps for k in range(base_steps + 1)]
        vals = []
        for s in grid:
            z, rel = f(p0, p1, s)
            min_mod = min(min_mod, rel)
            if rel < rel_threshold:
                raise BoundaryZeroError("zero too close to boundary; refine the disk")
            vals.append(z)
        samples += len(grid)
        stack = [(grid[k], vals[k], grid[k + 1], vals[k + 1], 0) for k in range(base_steps)][::-1]
        while stack:
            s0, z0, s1, z1, d = stack.pop()
            sm = 0.5 * (s0 + s1)
            zm, rel = f(p0, p1, sm)
            samples += 1
            min_mod = min(min_mod, rel)
            if rel < rel_threshold:
                raise BoundaryZeroError("zero too close to boundary; refine the disk")
            whole = _angle(z1, z0)
            h1, h2 = _angle(zm, z0), _angle(z1, zm)
            if abs(whole) < math.pi / 4 and abs(h1 + h2 - whole) < 1e-9:
                total += whole
                deepest = max(deepest, d)
                continue
            if d >= max_depth:
                raise BoundaryZeroError("zero too close to boundary; refine the disk")
            stack.append((sm, zm, s1, z1, d + 1))
            stack.append((s0, z0, sm, zm, d + 1))
    w = total / (2 * math.pi)
    n = round(w)
    if abs(w - n) > 1e-6:
        raise BoundaryZeroError("argument change is not a multiple of 2*pi; refine the disk")
    return WindingResult(int(n), deepest, min_mod, samples)


def crossing_counts(selector: SelectorPath) -> tuple[int, int]:
    """``(t_minus, t_plus)``: right-half-plane counts at the two endpoints (exact)."""
    lo, hi = selector.alpha_range.lo, selector.alpha_range.hi
    m, p = root_count(selector.at(lo)), root_count(selector.at(hi))
    if m.n_imag or p.n_imag:
        raise ValueError("selector must be hyperbolic at both endpoints")
    return m.n_pos, p.n_pos


@dataclass(frozen=True)
class CrossingCheck:
    holds: bool
    t_minus: int
    t_plus: int
    windings: tuple[WindingResult, ...]

    @property
    def total(self) -> int:
        return sum(w.winding for w in self.windings)

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "t_minus": self.t_minus,
            "t_plus": self.t_plus,
            "winding_sum": self.total,
            "windings": [w.to_dict() for w in self.windings],
        }


def crossing_identity(selector: SelectorPath, disks: Sequence[PolygonDisk]) -> CrossingCheck:
    t_minus, t_plus = crossing_counts(selector)
    if (t_minus - t_plus) % 2:
        raise ValueError("parity violation: uncovered real-axis crossing")
    ws = tuple(winding_number(selector, d) for d in disks)
    return CrossingCheck(sum(w.winding for w in ws) * 2 == t_minus - t_plus, t_minus, t_plus, ws)


def crossing_identity_check(selector: SelectorPath, disks: Sequence[PolygonDisk]) -> bool:
    """Sum of disk windings equals ``(t_minus - t_plus) / 2``."""
    return crossing_identity(selector, disks).holds


# --------------------------------------------------------------------------
# root tracking


@dataclass
class AxisEvent:
    """A tracked root meeting the imaginary axis at ``(alpha, beta)``.

    ``direction`` is +1 when the root passes from Re > 0 to Re < 0 as alpha
    increases, -1 for the reverse, 0 for a touch without crossing.
    """

    alpha: float
    beta: float
    branch: int
    direction: int


@dataclass
class RootPath:
    alphas: np.ndarray
    roots: np.ndarray  # shape (samples, degree), column = branch
    events: list[AxisEvent] = field(default_factory=list)
    sliding: list[tuple[float, float, int]] = field(default_factory=list)
    selector: Optional[SelectorPath] = None

    @property
    def crossings(self) -> list[AxisEvent]:
        return [e for e in self.events if e.direction != 0]

    def vieta_residual(self) -> float:
        worst = 0.0
        for a, rs in zip(self.alphas, self.roots):
            c = self.selector.float_coeffs(a)
            rec = np.poly(rs) * c[0]
            worst = max(worst, float(np.max(np.abs(rec - c)) / max(1.0, np.max(np.abs(c)))))
        return worst

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha", "re", "im", "branch_id"])
        for a, rs in zip(self.alphas, self.roots):
            for b, z in enumerate(rs):
                w.writerow([f"{a:.12g}", f"{z.real:.12g}", f"{z.imag:.12g}", b])
        return buf.getvalue()


def _match(prev: np.ndarray, new: np.ndarray) -> tuple[np.ndarray, bool]:
    """Reorder ``new`` to follow the predicted positions ``prev``; also flag ambiguity."""
    d = np.abs(prev[:, None] - new[None, :])
    _, cols = linear_sum_assignment(d)
    ambiguous = False
    if len(prev) > 1:
        srt = np.sort(d, axis=1)
        best, second = srt[:, 0], srt[:, 1]
        # a root is ambiguous when its two nearest candidates are too alike,
        # unless both candidates coincide (repeated roots)
        mask = (second < 2 * best) & (second > 1e-7) & (best > 1e-12)
        ambiguous = bool(mask.any())
    return new[cols], ambiguous


def track_roots(selector: SelectorPath, grid_size: int = 401, max_halvings: int = 12) -> RootPath:
    """Companion-matrix roots on an alpha grid, matched for continuity."""
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    lo, hi = float(selector.alpha_range.lo), float(selector.alpha_range.hi)
    grid = np.linspace(lo, hi, grid_size)
    alphas = [grid[0]]
    rows = [np.sort_complex(selector.roots(grid[0]))]
    for k in range(1, grid_size):
        target = grid[k]
        a0 = alphas[-1]
        step = target - a0
        halvings = 0
        while a0 < target:
            a1 = min(a0 + step, target)
            ref = rows[-1]
            if len(rows) > 1 and alphas[-1] > alphas[-2]:
                # linear predictor keeps transversally crossing branches apart
                ref = rows[-1] + (rows[-1] - rows[-2]) * ((a1 - alphas[-1]) / (alphas[-1] - alphas[-2]))
            nxt, amb = _match(ref, selector.roots(a1))
            if amb and halvings < max_halvings:
                step /= 2
                halvings += 1
                continue
            if a1 == target or halvings:
                alphas.append(a1)
                rows.append(nxt)
            a0 = a1
    path = RootPath(np.array(alphas), np.array(rows), selector=selector)
    path.events = _axis_events(selector, path)
    path.sliding = _sliding(path)
    return path


def _nearest_root(selector: SelectorPath, alpha: float, guess: complex) -> complex:
    rs = selector.roots(alpha)
    return rs[np.argmin(np.abs(rs - guess))]


def _axis_events(selector: SelectorPath, path: RootPath) -> list[AxisEvent]:
    events = []
    A, R = path.alphas, path.roots
    for b in range(R.shape[1]):
        re = R[:, b].real
        sgn = np.where(np.abs(re) < ZERO_TOL, 0, np.sign(re)).astype(int)
        k = 0
        n = len(A)
        while k < n:
            if sgn[k] == 0:
                # run of on-axis samples
                end = k
                while end + 1 < n and sgn[end + 1] == 0:
                    end += 1
                before = sgn[k - 1] if k > 0 else 0
                after = sgn[end + 1] if end + 1 < n else 0
                direction = 0
                if before and after and before != after:
                    direction = 1 if before > 0 else -1
                if end == k:
                    events.append(AxisEvent(float(A[k]), float(R[k, b].imag), b, direction))
                k = end + 1
                continue
            if k + 1 < n and sgn[k + 1] != 0 and sgn[k + 1] != sgn[k]:
                a, z = _bisect_crossing(selector, A[k], A[k + 1], R[k, b], R[k + 1, b])
                events.append(AxisEvent(a, z.imag, b, 1 if sgn[k] > 0 else -1))
            elif 0 < k < n - 1 and sgn[k - 1] == sgn[k] == sgn[k + 1]:
                # possible tangency between samples: |Re| has a local minimum here
                if abs(re[k]) <= abs(re[k - 1]) and abs(re[k]) <= abs(re[k + 1]) and abs(re[k]) < 1e-2:
                    ev = _touch(selector, A[k - 1], A[k + 1], R[k, b], b)
                    if ev is not None:
                        events.append(ev)
            k += 1
    events.sort(key=lambda e: (e.alpha, e.branch))
    return events


def _bisect_crossing(selector, a0, a1, z0, z1, iters: int = 60):
    s0 = np.sign(z0.real)
    for _ in range(iters):
        am = 0.5 * (a0 + a1)
        zm = _nearest_root(selector, am, 0.5 * (z0 + z1))
        if abs(zm.real) < ZERO_TOL * 1e-3 or a1 - a0 < 1e-15:
            return am, zm
        if np.sign(zm.real) == s0:
            a0, z0 = am, zm
        else:
            a1, z1 = am, zm
    return 0.5 * (a0 + a1), zm


def _touch(selector, a0, a1, guess, branch) -> Optional[AxisEvent]:
    res = minimize_scalar(
        lambda a: abs(_nearest_root(selector, a, guess).real),
        bounds=(a0, a1), method="bounded", options={"xatol": 1e-13},
    )
    z = _nearest_root(selector, res.x, guess)
    if abs(z.real) < ZERO_TOL:
        return AxisEvent(float(res.x), float(z.imag), branch, 0)
    return None


def _sliding(path: RootPath) -> list[tuple[float, float, int]]:
    out = []
    A, R = path.alphas, path.roots
    for b in range(R.shape[1]):
        on = np.abs(R[:, b].real) < ZERO_TOL
        k = 0
        while k < len(A):
            if on[k]:
                end = k
                while end + 1 < len(A) and on[end + 1]:
                    end += 1
                if end > k:
                    out.append((float(A[k]), float(A[end]), b))
                k = end + 1
            else:
                k += 1
    return out


@dataclass(frozen=True)
class Resonance:
    alpha: float
    beta_small: float
    j: int

    def as_tuple(self) -> tuple[float, float, int]:
        return (self.alpha, self.beta_small, self.j)


def find_resonances(path: RootPath, max_ratio: int = 10, alpha_tol: float = 1e-6) -> list[Resonance]:
    """Parameters where two imaginary-axis events share alpha and have frequency ratio j."""
    upper = [e for e in path.events if e.beta > ZERO_TOL]
    found: list[Resonance] = []
    for i, e in enumerate(upper):
        for f in upper[i + 1:]:
            if e.branch == f.branch or abs(e.alpha - f.alpha) > alpha_tol:
                continue
            small, large = sorted((e.beta, f.beta))
            j = round(large / small)
            if 2 <= j <= max_ratio and abs(large / small - j) <= RATIO_TOL * j:
                r = Resonance(0.5 * (e.alpha + f.alpha), small, j)
                if not any(abs(r.alpha - q.alpha) <= alpha_tol and abs(r.beta_small - q.beta_small) <= 1e-6 and r.j == q.j for q in found):
                    found.append(r)
    return found


def zeros_in_rectangle(path: RootPath, alpha: tuple[float, float], beta: tuple[float, float]) -> int:
    """Signed count of axis crossings inside a rectangle (the tracking-based degree)."""
    return sum(
        e.direction
        for e in path.events
        if alpha[0] < e.alpha < alpha[1] and beta[0] < e.beta < beta[1]
    )
