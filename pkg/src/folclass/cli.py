"""Command-line frontend.

Commands: enumerate, classify, verify-families, verify-theorem, cartier,
fields.  Exit codes: 0 success, 1 usage or internal error, 2 when a
verification command finds counterexamples (unmatched scalar classes,
inadmissible family instances, a vanishing trace).  Summary reports are
JSON by default (CSV with --format csv); JSON-lines detail is opt-in via
--detail.  All report files embed a run manifest; timing fields (and the
worker count) are suppressed by --no-timing so identical inputs produce
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .cartier import Quadric, TraceOperator
from .polynomial import BiPoly
from .classifier import classify
from .derivation import DerivationTriple, LieCase, failed_conditions
from .enumerator import (
    case_c_corollaries,
    total_triple_count,
    verify_completeness,
    verify_soundness,
)
from .errors import FolclassError, ParseError
from .finite_field import format_modulus, parse_element, parse_field
from .polynomial import parse_poly

_ALL_CASES = tuple(LieCase)


def _jobs_default():
    env = os.environ.get("FOLCLASS_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _parse_cases(text):
    if text.lower() == "all":
        return _ALL_CASES
    return tuple(LieCase.from_name(part) for part in text.split(","))


def _manifest(command, args, **extra):
    m = {"tool": "folclass", "version": __version__, "command": command}
    m.update(extra)
    outputs = {"summary": getattr(args, "out", None) or "stdout"}
    if getattr(args, "detail", None):
        outputs["detail"] = args.detail
    m["outputs"] = outputs
    return m


def _write_atomic(path, content):
    tmp = path + ".tmp"
    try:
        with open(tmp, "w") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except OSError as exc:
        raise FolclassError(f"cannot write report to {path}: {exc}") from exc


def _emit(args, payload, csv_rows=None):
    """Serialize the payload (or CSV rows) and write/print the summary."""
    if getattr(args, "format", "json") == "csv" and csv_rows is not None:
        header, rows = csv_rows
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(str(v) for v in row))
        content = "\n".join(lines) + "\n"
    else:
        content = json.dumps(payload, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        _write_atomic(out, content)
    else:
        sys.stdout.write(content)


def _timing_block(args, started, jobs=None):
    if args.no_timing:
        return None
    block = {"runtime_seconds": round(time.monotonic() - started, 6)}
    if jobs is not None:
        block["jobs"] = jobs
    return block


# -- commands -----------------------------------------------------------------


def cmd_fields(args):
    spec = parse_field(args.field)
    info = {
        "literal": spec.literal(),
        "p": spec.p,
        "k": spec.k,
        "order": spec.order,
        "modulus": format_modulus(spec.modulus),
        "elements": [str(x) for x in spec.elements()],
    }
    if args.tables:
        q, add, mul, inv = spec.tables()
        info["add_table"] = [list(add[i * q : (i + 1) * q]) for i in range(q)]
        info["mul_table"] = [list(mul[i * q : (i + 1) * q]) for i in range(q)]
        info["inv_table"] = list(inv)
    payload = {"manifest": _manifest("fields", args, field=spec.literal()), "field": info}
    _emit(args, payload)
    return 0


def cmd_classify(args):
    started = time.monotonic()
    spec = parse_field(args.field)
    case = LieCase.from_name(args.case)
    triple = DerivationTriple(
        case,
        parse_poly(args.a, spec),
        parse_poly(args.b, spec),
        parse_poly(args.c, spec),
    )
    failed = failed_conditions(triple)
    if failed:
        print("error: not an admissible foliation generator: " + "; ".join(failed), file=sys.stderr)
        return 1
    matches = classify(triple, max_ext=args.max_ext)
    payload = {
        "manifest": _manifest(
            "classify", args, field=spec.literal(), case=case.name, max_ext=args.max_ext
        ),
        "triple": triple.to_json_dict(),
        "matches": [m.to_json_dict() for m in matches],
    }
    timing = _timing_block(args, started)
    if timing:
        payload["timing"] = timing
    _emit(args, payload)
    return 0


def _detail_lines(report, with_timing):
    # first line carries the per-case manifest; one scalar class per line after
    head = {
        "field": report.field,
        "case": report.case,
        "tool": "folclass",
        "version": __version__,
    }
    if with_timing:
        head["runtime_seconds"] = report.runtime_seconds
    lines = [json.dumps({"manifest": head})]
    for triple, matches in report.class_matches:
        lines.append(
            json.dumps(
                {"triple": triple.to_json_dict(), "matches": [m.to_json_dict() for m in matches]}
            )
        )
    return lines


def cmd_enumerate(args):
    started = time.monotonic()
    spec = parse_field(args.field)
    cases = _parse_cases(args.case)
    results = []
    detail_lines = []
    unmatched = 0
    for case in cases:
        report = verify_completeness(spec, case, max_ext=args.max_ext, jobs=args.jobs)
        unmatched += len(report.unmatched)
        results.append(report.to_json_dict(with_timing=not args.no_timing))
        detail_lines.extend(_detail_lines(report, not args.no_timing))
    payload = {
        "manifest": _manifest(
            "enumerate",
            args,
            field=spec.literal(),
            cases=[c.name for c in cases],
            max_ext=args.max_ext,
        ),
        "results": results,
        "findings": unmatched,
    }
    timing = _timing_block(args, started, jobs=args.jobs)
    if timing:
        payload["timing"] = timing
    if args.detail:
        _write_atomic(args.detail, "\n".join(detail_lines) + "\n")
    _emit(args, payload, csv_rows=_completeness_csv(results, args))
    return 2 if unmatched else 0


def _completeness_csv(results, args):
    header = [
        "field",
        "case",
        "total_triples",
        "valid_count",
        "scalar_classes",
        "matched",
        "unmatched",
        "overlaps",
        "complete",
        "version",
        "runtime_seconds",
    ]
    rows = []
    for r in results:
        rows.append(
            [
                r["field"],
                r["case"],
                r["total_triples"],
                r["valid_count"],
                r["scalar_classes"],
                r["matched"],
                len(r["unmatched"]),
                len(r["overlaps"]),
                r["complete"],
                __version__,
                r.get("runtime_seconds", ""),
            ]
        )
    return header, rows


def cmd_verify_families(args):
    started = time.monotonic()
    spec = parse_field(args.field)
    cases = _parse_cases(args.case)
    results = []
    failures = 0
    csv_rows = []
    for case in cases:
        report = verify_soundness(spec, case)
        failures += len(report.failures)
        results.append(report.to_json_dict())
        for family, count in report.instances.items():
            fam_failures = sum(1 for f in report.failures if f["family"] == family)
            csv_rows.append(
                [spec.literal(), case.name, family, count, fam_failures,
                 fam_failures == 0, __version__]
            )
    payload = {
        "manifest": _manifest(
            "verify-families", args, field=spec.literal(), cases=[c.name for c in cases]
        ),
        "results": results,
        "findings": failures,
    }
    timing = _timing_block(args, started)
    if timing:
        payload["timing"] = timing
    header = ["field", "case", "family", "instances", "failures", "passed", "version"]
    _emit(args, payload, csv_rows=(header, csv_rows))
    return 2 if failures else 0


def cmd_verify_theorem(args):
    started = time.monotonic()
    spec = parse_field(args.field)
    cases = _parse_cases(args.case)
    results = []
    csv_results = []
    detail_lines = []
    findings = 0
    for case in cases:
        soundness = verify_soundness(spec, case)
        completeness = verify_completeness(spec, case, max_ext=args.max_ext, jobs=args.jobs)
        findings += len(soundness.failures) + len(completeness.unmatched)
        entry = {
            "case": case.name,
            "soundness": soundness.to_json_dict(),
            "completeness": completeness.to_json_dict(with_timing=not args.no_timing),
        }
        if case in (LieCase.I, LieCase.II):
            reps = [t for t, _m in completeness.class_matches]
            all_zero, all_nonzero = case_c_corollaries(spec, case, reps=reps)
            entry["corollaries"] = {
                "all_valid_have_c_zero": all_zero,
                "all_valid_have_c_nonzero": all_nonzero,
            }
        results.append(entry)
        cc = completeness.to_json_dict(with_timing=not args.no_timing)
        cc["soundness_failures"] = len(soundness.failures)
        csv_results.append(cc)
        detail_lines.extend(_detail_lines(completeness, not args.no_timing))
    payload = {
        "manifest": _manifest(
            "verify-theorem",
            args,
            field=spec.literal(),
            cases=[c.name for c in cases],
            max_ext=args.max_ext,
            total_triples_per_case=total_triple_count(spec),
        ),
        "results": results,
        "findings": findings,
    }
    timing = _timing_block(args, started, jobs=args.jobs)
    if timing:
        payload["timing"] = timing
    if args.detail:
        _write_atomic(args.detail, "\n".join(detail_lines) + "\n")
    _emit(args, payload, csv_rows=_completeness_csv(csv_results, args))
    return 2 if findings else 0


def _parse_quadric(text):
    """--G literal: `s,t` (symbolic) or `<elem>,<elem>@GF(q)` (concrete)."""
    text = text.strip()
    if "@" in text:
        coeffs, field_lit = text.rsplit("@", 1)
        spec = parse_field(field_lit)
        parts = coeffs.split(",")
        if len(parts) != 2:
            raise ParseError("expected two quadric coefficients", text, 0)
        s = parse_element(parts[0], spec)
        t = parse_element(parts[1], spec)
        return Quadric.concrete(s, t)
    if text.replace(" ", "") == "s,t":
        return Quadric.symbolic()
    raise ParseError("quadric literal must be `s,t` or `<elem>,<elem>@GF(q)`", text, 0)


def cmd_cartier(args):
    started = time.monotonic()
    quadric = _parse_quadric(args.G)
    e_max = args.e_max if args.e_max is not None else (4 if quadric.p == 2 else 3)
    op = TraceOperator(quadric)
    results = []
    vanished = 0
    for e in range(1, e_max + 1):
        nonzero, form = op.verify_nonvanishing(e)
        if not nonzero:
            vanished += 1
        one = quadric.G.constant_term()
        entry = {
            "e": e,
            "nonzero": nonzero,
            "image": str(form),
            "numerator_degree": form.numerator.total_degree() if nonzero else 0,
            # whether the image is literally 1/G dx^dy (it is for p = 3; for
            # p = 2 the computed image is the square root of G over G instead)
            "image_is_1_over_G": form.numerator == BiPoly.monomial(0, 0, one),
        }
        if quadric.p == 2:
            entry["numerator_squared_equals_G"] = (
                form.numerator * form.numerator == quadric.G
            )
        results.append(entry)
    payload = {
        "manifest": _manifest("cartier", args, G=args.G, p=quadric.p, e_max=e_max),
        "results": results,
        "findings": vanished,
    }
    timing = _timing_block(args, started)
    if timing:
        payload["timing"] = timing
    _emit(args, payload)
    return 2 if vanished else 0


# -- parser -------------------------------------------------------------------


def _add_common(p, with_jobs=False, with_maxext=False, with_case=True):
    p.add_argument("--field", required=True, help="field literal, e.g. GF(4) or GF(8;mod=x3+x+1)")
    if with_case:
        p.add_argument("--case", default="all", help="Lie case: I, II, III, IV, a comma list, or all")
    if with_maxext:
        p.add_argument("--max-ext", type=int, default=6, dest="max_ext",
                       help="largest extension degree searched for family parameters")
    if with_jobs:
        p.add_argument("--jobs", type=int, default=_jobs_default(),
                       help="worker processes for the scan (default $FOLCLASS_JOBS or 1)")
    p.add_argument("--out", help="write the summary report to this path (atomic)")
    p.add_argument("--detail", help="write JSON-lines per-class detail to this path")
    p.add_argument("--format", choices=("json", "csv"), default="json", help="summary format")
    p.add_argument("--no-timing", action="store_true", help="omit timing fields (for reproducible output)")


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors on exit code 1; code 2 is reserved for
    verification findings."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(
        prog="folclass",
        description="Classify and exhaustively verify rank-one p-closed foliation "
        "generators over small fields of characteristic 2, and check the "
        "iterated Frobenius trace on plane forms.",
    )
    parser.add_argument("--version", action="version", version=f"folclass {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fields", help="describe a field (modulus, elements, optional tables)")
    p.add_argument("--field", required=True)
    p.add_argument("--tables", action="store_true", help="include add/mul/inv tables")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_fields)

    p = sub.add_parser("classify", help="classify one triple into the family taxonomy")
    p.add_argument("--field", required=True)
    p.add_argument("--case", required=True, help="Lie case: I, II, III or IV")
    p.add_argument("--a", required=True, help="polynomial literal for a(t)")
    p.add_argument("--b", required=True, help="polynomial literal for b(t)")
    p.add_argument("--c", required=True, help="polynomial literal for c(t)")
    p.add_argument("--max-ext", type=int, default=6, dest="max_ext")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", help="enumerate, filter and classify all triples of a case")
    _add_common(p, with_jobs=True, with_maxext=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-families", help="check every family instance is admissible")
    _add_common(p)
    p.set_defaults(func=cmd_verify_families)

    p = sub.add_parser("verify-theorem", help="soundness + completeness over one field")
    _add_common(p, with_jobs=True, with_maxext=True)
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("cartier", help="verify nonvanishing of the iterated trace")
    p.add_argument("--G", default="s,t", help="quadric coefficients: `s,t` or `u,u+1@GF(4)`")
    p.add_argument("--e-max", type=int, default=None, dest="e_max",
                   help="check e = 1..e_max (default 4 for p=2, 3 otherwise)")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_cartier)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FolclassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
