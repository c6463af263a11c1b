"""Run every checkable hypothesis of the interval Hopf theorem and assemble a certificate."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import UniPoly, format_rational
from .degree import BoundaryZeroError, SelectorPath, crossing_identity, track_roots, find_resonances
from .descartes import check_R5ppp
from .family import IntervalFamily, instantiate
from .regions import (
    DEFAULT_DEPTH_LIMIT,
    DEFAULT_MAX_BOXES,
    CERTIFIED_EMPTY,
    PolygonDisk,
    certify_R5p,
    certify_R5pp,
)
from .stability import QInstability, Verdict, check_R2, q_unstable_certify

R5_MODES = ("disks", "non_resonance", "descartes")
ASSUMED = "assumed (user-declared)"
SCHEMA = "hopfcert-certificate/1"


class SpecError(ValueError):
    """A problem specification violates its invariants; ``problems`` lists each one."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass
class Limits:
    depth_limit: int = DEFAULT_DEPTH_LIMIT
    max_boxes: int = DEFAULT_MAX_BOXES
    j_max: Optional[int] = None


@dataclass
class ProblemSpec:
    family: IntervalFamily
    rep_minus: UniPoly
    rep_plus: UniPoly
    r5_mode: str
    disks: list[PolygonDisk] = field(default_factory=list)
    Q: Optional[UniPoly] = None
    R: Optional[UniPoly] = None
    selector: Optional[SelectorPath] = None
    nonlinearity: str = ""
    limits: Limits = field(default_factory=Limits)
    validator_disks: Optional[list[PolygonDisk]] = None
    name: str = ""

    def violations(self) -> list[str]:
        out = []
        fam = self.family
        if self.r5_mode not in R5_MODES:
            out.append(f"r5 mode must be one of {', '.join(R5_MODES)}, got {self.r5_mode!r}")
        if self.r5_mode == "disks" and not self.disks:
            out.append("mode 'disks' needs at least one disk")
        if self.r5_mode == "descartes" and (self.Q is None or self.R is None):
            out.append("mode 'descartes' needs Q and R")
        if self.r5_mode != "disks" and self.disks:
            out.append(f"disks given but mode is {self.r5_mode!r}")
        if self.r5_mode != "descartes" and (self.Q is not None or self.R is not None):
            out.append(f"Q/R given but mode is {self.r5_mode!r}")
        for label, rep, alpha in (("minus", self.rep_minus, fam.alpha_range.lo), ("plus", self.rep_plus, fam.alpha_range.hi)):
            if not instantiate(fam, alpha).contains(rep):
                out.append(f"representative {label} is not a member of the family at alpha = {format_rational(alpha)}")
        if self.selector is not None:
            if self.selector.alpha_range != fam.alpha_range:
                out.append("selector alpha range differs from the family's")
            out.extend(f"selector: {v}" for v in self.selector.membership_violations(fam))
        if self.limits.depth_limit < 1:
            out.append("depth_limit must be at least 1")
        if self.limits.j_max is not None and self.limits.j_max < 2:
            out.append("j_max must be at least 2")
        return out


@dataclass
class ConditionEntry:
    id: str
    verdict: str
    parameters: dict = field(default_factory=dict)
    witness: Optional[dict] = None
    evidence: Optional[dict] = None
    wall_time_s: float = 0.0

    def to_dict(self) -> dict:
        d = {"id": self.id, "verdict": self.verdict, "parameters": self.parameters}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.evidence is not None:
            d["evidence"] = self.evidence
        d["wall_time_s"] = round(self.wall_time_s, 3)
        return d


@dataclass
class Certificate:
    problem: str
    family: dict
    assumptions: dict
    conditions: list[ConditionEntry]
    validator: Optional[dict] = None

    @property
    def overall(self) -> str:
        """Certified iff every normative entry is; a failed hypothesis never refutes the conclusion."""
        if all(c.verdict == Verdict.CERTIFIED.value for c in self.conditions):
            return Verdict.CERTIFIED.value
        return Verdict.INCONCLUSIVE.value

    def entry(self, cid: str) -> ConditionEntry:
        return next(c for c in self.conditions if c.id == cid)

    def to_dict(self) -> dict:
        d = {
            "schema": SCHEMA,
            "problem": self.problem,
            "overall": self.overall,
            "family": self.family,
            "assumptions": self.assumptions,
            "conditions": [c.to_dict() for c in self.conditions],
        }
        if self.validator is not None:
            d["validator"] = self.validator
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def strip_wall_times(obj):
    """Copy of a certificate object with every ``wall_time_s`` field removed."""
    if isinstance(obj, dict):
        return {k: strip_wall_times(v) for k, v in obj.items() if k != "wall_time_s"}
    if isinstance(obj, list):
        return [strip_wall_times(v) for v in obj]
    return obj


def _family_dict(fam: IntervalFamily) -> dict:
    return {
        "degree": fam.degree,
        "alpha_range": [format_rational(fam.alpha_range.lo), format_rational(fam.alpha_range.hi)],
        "coefficients": [{"lo": c.lo.pretty("a"), "hi": c.hi.pretty("a")} for c in fam.coeffs],
    }


def _q_entry(cid: str, alpha, q: QInstability) -> ConditionEntry:
    params = {"alpha": format_rational(alpha), "representative": q.representative.pretty("l")}
    evidence = {
        "representative_root_count": list(q.representative_count.as_tuple()),
        "search_bound": format_rational(q.search_bound),
    }
    witness = None
    if q.verdict is Verdict.CERTIFIED:
        evidence["q"] = q.q
        evidence["exclusion_cells"] = [
            {"omega": [format_rational(c.lo), format_rational(c.hi)], "positive": name}
            for c, name in q.exclusion_evidence
        ]
    elif q.verdict is Verdict.REFUTED:
        witness = {"omega": format_rational(q.witness_omega)}
        if q.witness_member is not None:
            witness["member_with_root_i_omega"] = q.witness_member.pretty("l")
    else:
        evidence["unresolved_omega"] = str(q.unresolved)
    return ConditionEntry(cid, q.verdict.value, params, witness, evidence)


def _timed(fn):
    t = time.perf_counter()
    entry = fn()
    entry.wall_time_s = time.perf_counter() - t
    return entry


def _r2_entry(fam) -> ConditionEntry:
    r = check_R2(fam)
    witness = None
    if r.witness is not None:
        witness = {k: (format_rational(v) if k == "alpha" else str(v)) for k, v in r.witness.items()}
    return ConditionEntry("R2", r.verdict.value, {}, witness, r.evidence)


def _r5_entry(spec: ProblemSpec, r2_ok: bool) -> ConditionEntry:
    fam, lim = spec.family, spec.limits
    if spec.r5_mode == "descartes":
        r = check_R5ppp(fam, spec.Q, spec.R)
        params = {"Q": spec.Q.pretty("w"), "R": spec.R.pretty("w")}
        evidence = {
            "T": [{"degree": k, "lo": c.lo.pretty("a"), "hi": c.hi.pretty("a"), "class": r.classes[k]} for k, c in enumerate(r.T)],
            "pivot": r.pattern.pivot,
        }
        if r.offending:
            evidence["offending"] = r.offending
        return ConditionEntry("R5'''", r.verdict.value, params, None, evidence)
    cid = "R5'" if spec.r5_mode == "disks" else "R5''"
    params = {"depth_limit": lim.depth_limit, "max_boxes": lim.max_boxes, "j_max": lim.j_max if lim.j_max is not None else "auto"}
    if not r2_ok:
        return ConditionEntry(cid, Verdict.INCONCLUSIVE.value, params, None, {"reason": "R2 must hold before region analysis"})
    if spec.r5_mode == "disks":
        params["disks"] = [d.to_list() for d in spec.disks]
        r = certify_R5p(fam, spec.disks, lim.j_max, lim.depth_limit, max_boxes=lim.max_boxes)
        witness = None
        if r.containment.witness is not None:
            witness = {"fR_point_outside_disks": r.containment.to_dict()["witness"]}
        bad = [e.to_dict() for e in r.edges if not e.clear]
        if bad:
            witness = dict(witness or {}, boundary_meets_fS=bad)
        return ConditionEntry(cid, r.verdict, params, witness, r.to_dict())
    r = certify_R5pp(fam, lim.j_max, lim.depth_limit, max_boxes=lim.max_boxes)
    verdict = {CERTIFIED_EMPTY: Verdict.CERTIFIED, "nonempty_with_witness": Verdict.REFUTED}.get(r.verdict, Verdict.INCONCLUSIVE)
    witness = None
    hit = next((x for x in r.per_j if x.witness is not None), None)
    if hit is not None:
        witness = {"j": hit.j, **hit.to_dict()["witness"]}
    return ConditionEntry(cid, verdict.value, params, witness, r.to_dict())


def _validator(spec: ProblemSpec) -> Optional[dict]:
    sel = spec.selector
    if sel is None:
        return None
    out: dict = {"normative": False, "selector": [c.pretty("a") for c in sel.coeffs]}
    path = track_roots(sel)
    out["axis_events"] = [
        {"alpha": round(e.alpha, 9), "beta": round(e.beta, 9), "direction": e.direction}
        for e in path.events if e.beta > 0
    ]
    out["resonances"] = [
        {"alpha": round(r.alpha, 9), "beta_small": round(r.beta_small, 9), "j": r.j} for r in find_resonances(path)
    ]
    disks = spec.validator_disks if spec.validator_disks is not None else spec.disks
    if disks:
        try:
            cc = crossing_identity(sel, disks)
            out["crossing_identity"] = {
                "holds": cc.holds, "t_minus": cc.t_minus, "t_plus": cc.t_plus,
                "winding_sum": cc.total, "windings": [w.winding for w in cc.windings],
            }
        except (BoundaryZeroError, ValueError) as exc:
            out["crossing_identity"] = {"error": str(exc)}
    return out


def verify(spec: ProblemSpec) -> Certificate:
    """Evaluate every condition (no short-circuit) and build the certificate."""
    problems = spec.violations()
    if problems:
        raise SpecError(problems)
    fam = spec.family
    lo, hi = fam.alpha_range.lo, fam.alpha_range.hi

    r2 = _timed(lambda: _r2_entry(fam))
    qm_holder = {}

    def r3():
        qm = q_unstable_certify(instantiate(fam, lo), spec.rep_minus)
        qm_holder["q"] = qm
        return _q_entry("R3", lo, qm)

    def r4():
        qp = q_unstable_certify(instantiate(fam, hi), spec.rep_plus)
        e = _q_entry("R4", hi, qp)
        qm = qm_holder["q"]
        if qp.verdict is Verdict.CERTIFIED and qm.verdict is Verdict.CERTIFIED:
            e.evidence["q1"], e.evidence["q2"] = qm.q, qp.q
            if qm.q == qp.q:
                e.verdict = Verdict.REFUTED.value
                e.witness = {"reason": "q1 == q2", "q": qp.q}
        elif qm.verdict is not Verdict.CERTIFIED and qp.verdict is Verdict.CERTIFIED:
            e.verdict = Verdict.INCONCLUSIVE.value
            e.evidence["reason"] = "q1 unknown because R3 is not certified"
        return e

    e3 = _timed(r3)
    e4 = _timed(r4)
    e5 = _timed(lambda: _r5_entry(spec, r2.verdict == Verdict.CERTIFIED.value))
    assumptions = {
        "R0": {"status": ASSUMED, "declaration": spec.nonlinearity},
        "R1": {"status": ASSUMED, "declaration": spec.nonlinearity},
    }
    cert = Certificate(spec.name, _family_dict(fam), assumptions, [r2, e3, e4, e5], _validator(spec))
    assert cert.overall != Verdict.CERTIFIED.value or all(c.verdict == "certified" for c in cert.conditions)
    return cert
