"""Interval Descartes test for "at most one pair of purely imaginary roots"."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .algebra import RationalInterval, UniPoly, isolate_real_roots, nonnegative_on
from .family import CoeffInterval, IntervalFamily, IntervalPoly
from .stability import Verdict

# An interval polynomial in w whose coefficient endpoints may depend on alpha.
IntervalUniPoly = tuple[CoeffInterval, ...]


def _const(c) -> UniPoly:
    return UniPoly([c], "a")


def _symbolic_coeffs(S: Union[IntervalPoly, IntervalFamily]) -> list[CoeffInterval]:
    if isinstance(S, IntervalFamily):
        one = _const(1)
        return list(S.coeffs) + [CoeffInterval(one, one)]
    return [CoeffInterval(_const(iv.lo), _const(iv.hi)) for iv in S.intervals]


def _scale(c: CoeffInterval, s) -> CoeffInterval:
    if s >= 0:
        return CoeffInterval(c.lo * s, c.hi * s)
    return CoeffInterval(c.hi * s, c.lo * s)


def _add(a: CoeffInterval, b: CoeffInterval) -> CoeffInterval:
    return CoeffInterval(a.lo + b.lo, a.hi + b.hi)


_ZERO_COEFF = CoeffInterval(UniPoly([], "a"), UniPoly([], "a"))


def re_im_parts(S: Union[IntervalPoly, IntervalFamily]) -> tuple[IntervalUniPoly, IntervalUniPoly]:
    """Interval coefficients of ``Re S(i w)`` and ``Im S(i w)`` as polynomials in w."""
    cs = _symbolic_coeffs(S)
    re = [_ZERO_COEFF] * len(cs)
    im = [_ZERO_COEFF] * len(cs)
    for k, c in enumerate(cs):
        sign = -1 if (k // 2) % 2 else 1
        if k % 2 == 0:
            re[k] = _scale(c, sign)
        else:
            im[k] = _scale(c, sign)
    return tuple(re), tuple(im)


def combine_T(S: Union[IntervalPoly, IntervalFamily], Q: UniPoly, R: UniPoly) -> IntervalUniPoly:
    """Interval enclosure of ``Q(w) Re P(i w) + R(w) Im P(i w)`` over all members ``P``."""
    re, im = re_im_parts(S)
    n = max(len(re) + max(Q.degree, 0), len(im) + max(R.degree, 0))
    out = [_ZERO_COEFF] * n
    for mult, part in ((Q, re), (R, im)):
        for i, qi in enumerate(mult.coeffs):
            if qi == 0:
                continue
            for k, c in enumerate(part):
                out[i + k] = _add(out[i + k], _scale(c, qi))
    while len(out) > 1 and out[-1].lo.is_zero() and out[-1].hi.is_zero():
        out.pop()
    return tuple(out)


def at_alpha(T: IntervalUniPoly, alpha) -> list[RationalInterval]:
    return [c.at(alpha) for c in T]


@dataclass(frozen=True)
class SignChangeVerdict:
    at_most_one: bool
    pivot: Optional[int] = None
    violations: tuple[tuple[int, int], ...] = ()


# coefficient classes: "neg" (subset of (-inf, 0]), "pos", "zero" (both), "any"
def _classify(iv: RationalInterval) -> str:
    nonpos, nonneg = iv.hi <= 0, iv.lo >= 0
    if nonpos and nonneg:
        return "zero"
    if nonpos:
        return "neg"
    if nonneg:
        return "pos"
    return "any"


def _pattern_verdict(classes: Sequence[str]) -> SignChangeVerdict:
    n = len(classes)
    if n == 0:
        return SignChangeVerdict(True, None)
    violations = []
    for below, above in (("neg", "pos"), ("pos", "neg")):
        # first index that cannot sit below the pivot, last that cannot sit above it
        first_bad = next((k for k, c in enumerate(classes) if c not in (below, "zero")), n)
        last_bad = max((k for k, c in enumerate(classes) if c not in (above, "zero")), default=-1)
        if last_bad <= first_bad:
            pivot = min(max(last_bad, 0), n - 1)
            return SignChangeVerdict(True, pivot)
        violations.append((first_bad, last_bad))
    return SignChangeVerdict(False, None, tuple(violations))


def count_sign_changes(coeffs: Sequence[RationalInterval]) -> SignChangeVerdict:
    """Whether a fixed interval polynomial's coefficients have at most one sign change.

    True iff some index j has every interval below it inside ``(-inf, 0]``
    and every interval above it inside ``[0, inf)``, or the mirror image.
    The pivot itself is unconstrained; ``[0, 0]`` fits both half-lines.
    """
    return _pattern_verdict([_classify(iv) for iv in coeffs])


@dataclass
class R5pppResult:
    verdict: Verdict
    T: IntervalUniPoly
    classes: list[str]
    pattern: SignChangeVerdict
    offending: list[dict] = field(default_factory=list)


def _uniform_class(c: CoeffInterval, rng: RationalInterval) -> str:
    nonpos = nonnegative_on(-c.hi, rng)
    nonneg = nonnegative_on(c.lo, rng)
    if nonpos and nonneg:
        return "zero"
    if nonpos:
        return "neg"
    if nonneg:
        return "pos"
    return "any"


def _sign_change_points(c: CoeffInterval, rng: RationalInterval) -> list[RationalInterval]:
    pts = []
    for p in (c.lo, c.hi):
        if p.degree > 0:
            pts.extend(isolate_real_roots(p, rng))
    return sorted(pts, key=lambda iv: iv.lo)


def check_R5ppp(fam: IntervalFamily, Q: UniPoly, R: UniPoly) -> R5pppResult:
    """Uniform-in-alpha interval Descartes certificate; never refutes."""
    T = combine_T(fam, Q, R)
    classes = [_uniform_class(c, fam.alpha_range) for c in T]
    pattern = _pattern_verdict(classes)
    if pattern.at_most_one:
        return R5pppResult(Verdict.CERTIFIED, T, classes, pattern)
    offending = []
    for k, cls in enumerate(classes):
        if cls == "any":
            offending.append({
                "degree": k,
                "lo": T[k].lo.pretty("a"),
                "hi": T[k].hi.pretty("a"),
                "sign_change_alphas": [str(iv) for iv in _sign_change_points(T[k], fam.alpha_range)],
            })
    return R5pppResult(Verdict.INCONCLUSIVE, T, classes, pattern, offending)


@dataclass(frozen=True)
class FixedDescartes:
    S: UniPoly
    sign_changes: int

    @property
    def certified(self) -> bool:
        return self.sign_changes <= 1


def check_fixed_descartes(P: UniPoly, Q: UniPoly, R: UniPoly) -> FixedDescartes:
    """Descartes bound on positive roots of ``Q Re P(i w) + R Im P(i w)``."""
    U, V = P.imaginary_axis_parts()
    S = (Q.with_var("w") * U + R.with_var("w") * V).with_var("w")
    nz = [c for c in S.coeffs if c != 0]
    changes = sum(1 for a, b in zip(nz, nz[1:]) if (a > 0) != (b > 0))
    return FixedDescartes(S, changes)
