"""``hopfcert`` command line."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from ..algebra import format_rational
from ..degree import BoundaryZeroError, track_roots, winding_number, crossing_counts
from ..family import instantiate
from ..pipeline import SpecError, verify
from ..regions import PolygonDisk, grid_sample
from ..stability import Verdict, kharitonov_hurwitz, kharitonov_report, q_unstable_certify
from .expr import ExprError, parse_poly
from .problem import ProblemError, load_problem

EXIT_OK, EXIT_ERROR, EXIT_REFUTED, EXIT_INCONCLUSIVE = 0, 1, 2, 3
_EXIT_FOR = {Verdict.CERTIFIED.value: EXIT_OK, Verdict.REFUTED.value: EXIT_REFUTED, Verdict.INCONCLUSIVE.value: EXIT_INCONCLUSIVE}


def exit_code_for(overall: str) -> int:
    return _EXIT_FOR[overall]


def _write(path: Optional[str], text: str) -> None:
    """Write ``text`` atomically to ``path`` (stdout when ``path`` is None or '-')."""
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    # mkstemp creates 0600; give the result the usual umask-based mode
    umask = os.umask(0)
    os.umask(umask)
    os.chmod(tmp, 0o666 & ~umask)
    os.replace(tmp, target)


def _apply_flags(spec, args):
    if getattr(args, "depth_limit", None) is not None:
        spec.limits.depth_limit = args.depth_limit
    if getattr(args, "jmax", None) is not None:
        spec.limits.j_max = args.jmax
    problems = spec.violations()
    if problems:
        raise SpecError(problems)
    return spec


def _summary(cert) -> str:
    lines = [f"problem: {cert.problem}", f"overall: {cert.overall}"]
    for name, a in cert.assumptions.items():
        lines.append(f"  {name:6s} {a['status']}")
    for c in cert.conditions:
        extra = ""
        ev = c.evidence or {}
        if c.id in ("R3", "R4") and "q" in ev:
            extra = f" (q = {ev['q']})"
        if c.witness:
            extra += f" witness: {json.dumps(c.witness, sort_keys=False)}"
        lines.append(f"  {c.id:6s} {c.verdict}{extra}")
    if cert.validator and "crossing_identity" in cert.validator:
        lines.append(f"  validator crossing identity: {json.dumps(cert.validator['crossing_identity'])}")
    return "\n".join(lines) + "\n"


def cmd_check(args) -> int:
    spec = _apply_flags(load_problem(args.problem), args)
    cert = verify(spec)
    out = args.out or f"{Path(args.problem).stem}.cert.json"
    _write(out, cert.to_json())
    if not args.quiet:
        sys.stdout.write(_summary(cert))
        if out != "-":
            sys.stdout.write(f"certificate written to {out}\n")
    return exit_code_for(cert.overall)


def cmd_regions(args) -> int:
    spec = load_problem(args.problem)
    grid = grid_sample(spec.family, args.resolution, j_max=args.jmax)
    _write(args.out, grid.to_csv())
    if args.svg:
        _write(args.svg, grid.to_svg(spec.disks))
    if not args.quiet:
        counts = {}
        for c in grid.classes.ravel():
            counts[c] = counts.get(c, 0) + 1
        msg = ", ".join(f"{k}: {counts[k]}" for k in sorted(counts))
        sys.stderr.write(f"cells: {msg}; fR components (grid-level): {grid.fr_components()}\n")
    return EXIT_OK


def cmd_roots(args) -> int:
    spec = load_problem(args.problem)
    path = track_roots(spec.selector, args.resolution)
    _write(args.out, path.to_csv())
    if not args.quiet:
        for e in path.events:
            if e.beta > 0:
                sys.stderr.write(f"axis event: alpha={e.alpha:.9g} beta={e.beta:.9g} direction={e.direction}\n")
    return EXIT_OK


def _alpha_values(spec, raw: Sequence[str]) -> list[Fraction]:
    if not raw:
        return [spec.family.alpha_range.lo, spec.family.alpha_range.hi]
    out = []
    for text in raw:
        p = parse_poly(text)
        if p.degree > 0:
            raise ExprError("alpha must be a constant", text, 0)
        out.append(p.coeff(0))
    return out


def cmd_kharitonov(args) -> int:
    spec = load_problem(args.problem)
    report = []
    for alpha in _alpha_values(spec, args.alpha):
        sp = instantiate(spec.family, alpha)
        entry = {
            "alpha": format_rational(alpha),
            "all_members_hurwitz": kharitonov_hurwitz(sp),
            "corners": kharitonov_report(sp),
        }
        if spec.selector is not None:
            q = q_unstable_certify(sp, spec.selector.at(alpha))
            entry["q_instability"] = {"verdict": q.verdict.value, "q": q.q}
            if q.witness_omega is not None:
                entry["q_instability"]["witness_omega"] = format_rational(q.witness_omega)
        report.append(entry)
    _write(args.out, json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_winding(args) -> int:
    spec = load_problem(args.problem)
    disks = spec.validator_disks if spec.validator_disks is not None else spec.disks
    if args.rect:
        a0, a1, b0, b1 = (parse_poly(x).coeff(0) for x in args.rect)
        disks = [PolygonDisk.rectangle((a0, a1), (b0, b1))]
    if not disks:
        raise SpecError(["no disks: give --rect or add disks to the problem file"])
    out = {"disks": [], "total": 0}
    for d in disks:
        w = winding_number(spec.selector, d)
        out["disks"].append({"vertices": d.to_list(), **w.to_dict()})
        out["total"] += w.winding
    try:
        t_minus, t_plus = crossing_counts(spec.selector)
        out["t_minus"], out["t_plus"] = t_minus, t_plus
        out["crossing_identity_holds"] = 2 * out["total"] == t_minus - t_plus
    except ValueError as exc:
        out["crossing_identity"] = str(exc)
    _write(args.out, json.dumps(out, indent=2) + "\n")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1 so that 2 keeps its meaning of "refuted"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopfcert", description="Certify interval Hopf bifurcation hypotheses.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, resolution_default=None):
        sp.add_argument("problem", help="problem file (JSON)")
        sp.add_argument("--out", help="output path ('-' for stdout)")
        sp.add_argument("--quiet", action="store_true", help="suppress the human-readable summary")
        if resolution_default is not None:
            sp.add_argument("--resolution", type=int, default=resolution_default)

    c = sub.add_parser("check", help="verify all conditions and write a certificate")
    common(c)
    c.add_argument("--depth-limit", type=int)
    c.add_argument("--jmax", type=int)
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("regions", help="grid classification of fR / fS as CSV")
    common(r, 200)
    r.add_argument("--jmax", type=int)
    r.add_argument("--svg", help="also write an SVG picture")
    r.set_defaults(func=cmd_regions)

    t = sub.add_parser("roots", help="track the selector's roots over alpha (CSV)")
    common(t, 401)
    t.set_defaults(func=cmd_roots)

    k = sub.add_parser("kharitonov", help="per-alpha Kharitonov and q-instability report")
    common(k)
    k.add_argument("--alpha", action="append", default=[], help="alpha value (repeatable)")
    k.set_defaults(func=cmd_kharitonov)

    w = sub.add_parser("winding", help="winding numbers of the selector on disks")
    common(w)
    w.add_argument("--rect", nargs=4, metavar=("A0", "A1", "B0", "B1"))
    w.set_defaults(func=cmd_winding)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ProblemError, SpecError) as exc:
        sys.stderr.write("error: invalid problem\n")
        for msg in exc.problems:
            sys.stderr.write(f"  - {msg}\n")
    except (ExprError, BoundaryZeroError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
