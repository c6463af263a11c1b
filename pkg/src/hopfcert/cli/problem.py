"""Problem files: JSON documents whose polynomial entries are strings in the ``a`` language.

Layout::

    {
      "name": "...",
      "degree": n,
      "alpha_range": [lo, hi],
      "coefficients": [ one entry per degree 0..n-1 ],
      "representative": {"factors": [[c0, c1, ...], ...]}  or  {"coefficients": [c0, ..., cn]},
      "rep_minus": [...], "rep_plus": [...],              (optional, constants)
      "r5": {"mode": "disks", "disks": [[[alpha, beta], ...], ...]}
          | {"mode": "non_resonance"}
          | {"mode": "descartes", "Q": [q0, q1, ...], "R": [r0, ...]},
      "nonlinearity": "free text",
      "limits": {"depth_limit": 24, "max_boxes": 400000, "j_max": null},
      "validator": {"disks": [...]}                        (optional)
    }

A coefficient entry is ``{"lo": e, "hi": e}``, ``{"value": e}`` or
``{"center": e, "epsilon": c}``.  Numbers may be JSON numbers (read exactly)
or strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from ..algebra import RationalInterval, UniPoly
from ..degree import SelectorPath
from ..family import CoeffInterval, IntervalFamily
from ..pipeline import Limits, ProblemSpec, SpecError
from ..regions import PolygonDisk
from .expr import ExprError, parse_poly


class ProblemError(ValueError):
    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("; ".join(problems))


class _Reader:
    def __init__(self):
        self.problems: list[str] = []

    def fail(self, path: str, msg: str):
        self.problems.append(f"{path}: {msg}")

    def poly(self, value: Any, path: str) -> Optional[UniPoly]:
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return UniPoly([value], "a")
        if not isinstance(value, str):
            self.fail(path, "expected an expression string or a number")
            return None
        try:
            return parse_poly(value)
        except ExprError as exc:
            self.fail(path, str(exc))
            return None

    def const(self, value: Any, path: str) -> Optional[Fraction]:
        p = self.poly(value, path)
        if p is None:
            return None
        if p.degree > 0:
            self.fail(path, "expected a constant")
            return None
        return p.coeff(0)

    def const_list(self, value: Any, path: str) -> Optional[list[Fraction]]:
        if not isinstance(value, list) or not value:
            self.fail(path, "expected a nonempty list")
            return None
        out = [self.const(v, f"{path}[{k}]") for k, v in enumerate(value)]
        return None if any(x is None for x in out) else out

    def coefficient(self, entry: Any, path: str) -> Optional[CoeffInterval]:
        if not isinstance(entry, dict):
            self.fail(path, "expected an object")
            return None
        keys = set(entry)
        if keys == {"lo", "hi"}:
            lo, hi = self.poly(entry["lo"], f"{path}.lo"), self.poly(entry["hi"], f"{path}.hi")
            return None if lo is None or hi is None else CoeffInterval(lo, hi)
        if keys == {"value"}:
            v = self.poly(entry["value"], f"{path}.value")
            return None if v is None else CoeffInterval.point(v)
        if keys == {"center", "epsilon"}:
            c = self.poly(entry["center"], f"{path}.center")
            e = self.const(entry["epsilon"], f"{path}.epsilon")
            if e is not None and e < 0:
                self.fail(f"{path}.epsilon", "must be nonnegative")
                return None
            return None if c is None or e is None else CoeffInterval.centered(c, e)
        self.fail(path, "expected keys {lo, hi}, {value} or {center, epsilon}")
        return None

    def disks(self, value: Any, path: str) -> Optional[list[PolygonDisk]]:
        if not isinstance(value, list):
            self.fail(path, "expected a list of polygons")
            return None
        out = []
        for k, poly in enumerate(value):
            if not isinstance(poly, list):
                self.fail(f"{path}[{k}]", "expected a list of [alpha, beta] vertices")
                continue
            verts = []
            for i, v in enumerate(poly):
                if not (isinstance(v, list) and len(v) == 2):
                    self.fail(f"{path}[{k}][{i}]", "expected [alpha, beta]")
                    continue
                a, b = self.const(v[0], f"{path}[{k}][{i}][0]"), self.const(v[1], f"{path}[{k}][{i}][1]")
                if a is not None and b is not None:
                    verts.append((a, b))
            try:
                out.append(PolygonDisk(tuple(verts)))
            except ValueError as exc:
                self.fail(f"{path}[{k}]", str(exc))
        return out


def _selector(r: _Reader, rep: Any, alpha_range: RationalInterval) -> Optional[SelectorPath]:
    if not isinstance(rep, dict) or len(rep) != 1 or not ({"factors", "coefficients"} & set(rep)):
        r.fail("representative", "expected {\"factors\": [...]} or {\"coefficients\": [...]}")
        return None
    if "coefficients" in rep:
        groups, base = [rep["coefficients"]], "representative.coefficients"
    else:
        groups, base = rep["factors"], "representative.factors"
        if not isinstance(groups, list) or not groups:
            r.fail(base, "expected a nonempty list of factors")
            return None
    factors = []
    for k, g in enumerate(groups):
        path = base if "coefficients" in rep else f"{base}[{k}]"
        if not isinstance(g, list) or not g:
            r.fail(path, "expected a nonempty coefficient list (constant term first)")
            return None
        cs = [r.poly(x, f"{path}[{i}]") for i, x in enumerate(g)]
        if any(c is None for c in cs):
            return None
        factors.append(cs)
    try:
        return SelectorPath.from_factors(factors, alpha_range)
    except ValueError as exc:
        r.fail(base, str(exc))
        return None


def _int(r: _Reader, value: Any, path: str, allow_none=False) -> Optional[int]:
    if value is None and allow_none:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        r.fail(path, "expected an integer")
        return None
    return value


def parse_problem(text: str, source: str = "<problem>") -> ProblemSpec:
    """Build a validated :class:`ProblemSpec`; every problem found is reported at once."""
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ProblemError([f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from None
    if not isinstance(doc, dict):
        raise ProblemError([f"{source}: top level must be an object"])
    r = _Reader()
    known = {"name", "degree", "alpha_range", "coefficients", "representative", "rep_minus", "rep_plus",
             "r5", "nonlinearity", "limits", "validator"}
    for k in sorted(set(doc) - known):
        r.fail(k, "unknown field")
    for k in ("degree", "alpha_range", "coefficients", "representative", "r5"):
        if k not in doc:
            r.fail(k, "missing")
    if r.problems:
        raise ProblemError(r.problems)

    degree = _int(r, doc["degree"], "degree")
    ar = doc["alpha_range"]
    alpha_range = None
    if isinstance(ar, list) and len(ar) == 2:
        lo, hi = r.const(ar[0], "alpha_range[0]"), r.const(ar[1], "alpha_range[1]")
        if lo is not None and hi is not None:
            if lo >= hi:
                r.fail("alpha_range", "lower end must be below upper end")
            else:
                alpha_range = RationalInterval(lo, hi)
    else:
        r.fail("alpha_range", "expected [lo, hi]")
    coeffs = doc["coefficients"]
    cis = []
    if not isinstance(coeffs, list):
        r.fail("coefficients", "expected a list")
    else:
        if degree is not None and len(coeffs) != degree:
            r.fail("coefficients", f"expected {degree} entries (degrees 0..{degree - 1}), got {len(coeffs)}")
        cis = [r.coefficient(c, f"coefficients[{k}]") for k, c in enumerate(coeffs)]
    if r.problems:
        raise ProblemError(r.problems)
    try:
        fam = IntervalFamily.build(cis, alpha_range)
    except ValueError as exc:
        raise ProblemError([f"coefficients: {exc}"]) from None

    selector = _selector(r, doc["representative"], alpha_range)
    rep_minus = rep_plus = None
    for key in ("rep_minus", "rep_plus"):
        if key in doc:
            cs = r.const_list(doc[key], key)
            if cs is not None:
                p = UniPoly(cs, "l")
                rep_minus, rep_plus = (p, rep_plus) if key == "rep_minus" else (rep_minus, p)
    if selector is not None:
        if rep_minus is None:
            rep_minus = selector.at(alpha_range.lo)
        if rep_plus is None:
            rep_plus = selector.at(alpha_range.hi)

    r5 = doc["r5"]
    mode, disks, Q, R = None, [], None, None
    if not isinstance(r5, dict) or "mode" not in r5:
        r.fail("r5", "expected an object with a 'mode' field")
    else:
        mode = r5["mode"]
        allowed = {"disks": {"mode", "disks"}, "non_resonance": {"mode"}, "descartes": {"mode", "Q", "R"}}
        if mode not in allowed:
            r.fail("r5.mode", f"must be one of {', '.join(allowed)}")
        else:
            for k in sorted(set(r5) - allowed[mode]):
                r.fail(f"r5.{k}", f"not allowed in mode {mode!r}")
            for k in sorted(allowed[mode] - set(r5)):
                r.fail(f"r5.{k}", "missing")
            if mode == "disks" and "disks" in r5:
                disks = r.disks(r5["disks"], "r5.disks") or []
            if mode == "descartes" and "Q" in r5 and "R" in r5:
                q, rr = r.const_list(r5["Q"], "r5.Q"), r.const_list(r5["R"], "r5.R")
                Q = UniPoly(q, "w") if q is not None else None
                R = UniPoly(rr, "w") if rr is not None else None

    limits = Limits()
    lim = doc.get("limits", {})
    if not isinstance(lim, dict):
        r.fail("limits", "expected an object")
    else:
        for k in sorted(set(lim) - {"depth_limit", "max_boxes", "j_max"}):
            r.fail(f"limits.{k}", "unknown field")
        if "depth_limit" in lim:
            limits.depth_limit = _int(r, lim["depth_limit"], "limits.depth_limit") or limits.depth_limit
        if "max_boxes" in lim:
            limits.max_boxes = _int(r, lim["max_boxes"], "limits.max_boxes") or limits.max_boxes
        if "j_max" in lim:
            limits.j_max = _int(r, lim["j_max"], "limits.j_max", allow_none=True)

    validator_disks = None
    if "validator" in doc:
        v = doc["validator"]
        if not isinstance(v, dict) or set(v) != {"disks"}:
            r.fail("validator", "expected {\"disks\": [...]}")
        else:
            validator_disks = r.disks(v["disks"], "validator.disks")

    nonlinearity = doc.get("nonlinearity", "")
    if not isinstance(nonlinearity, str):
        r.fail("nonlinearity", "expected text")
    if r.problems:
        raise ProblemError(r.problems)
    spec = ProblemSpec(
        family=fam, rep_minus=rep_minus, rep_plus=rep_plus, r5_mode=mode, disks=disks, Q=Q, R=R,
        selector=selector, nonlinearity=nonlinearity, limits=limits, validator_disks=validator_disks,
        name=doc.get("name", Path(source).stem),
    )
    problems = spec.violations()
    if problems:
        raise ProblemError(problems)
    return spec


def load_problem(path: str | Path) -> ProblemSpec:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemError([f"{p}: cannot read ({exc.strerror or exc})"]) from None
    return parse_problem(text, str(p))


__all__ = ["ProblemError", "SpecError", "load_problem", "parse_problem"]
