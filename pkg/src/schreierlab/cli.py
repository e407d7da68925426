"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 property violation, 3 internal
inconsistency (decomposition vs. direct axiom check disagreeing, or a loop
extracted from a retraction failing its axioms).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import sweep as sw
from .algebra import StructureError, catalog, satisfies, validate_algebra, validate_homomorphism
from .catalog import builtin_algebras, builtin_examples, builtin_points, heyting_catalog, run_all_expectations
from .io import (
    ParseError,
    content_hash,
    dump,
    load_algebra,
    load_hom,
    load_point,
    load_template,
    point_to_dict,
    resolve_algebra,
    sniff,
)
from .points import PointError, is_strong_point
from .schreier import SplittingIdentityError, classify_point, verify_iS_axioms, verify_S_axioms
from .special import LoopInconsistency, NotAMonoid, diagonal_point, extract_loop, is_s_special, protomodular_object_check
from .terms import DIRECT, TWISTED, TemplateClassError, enumerate_splittings_at_generator, render_word

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_INCONSISTENT = 0, 1, 2, 3
SIZE_LIMITS = {"monoid": 4, "unitary-magma": 3}


class Refusal(Exception):
    pass


def _input_hashes(refs) -> dict:
    out = {}
    for ref in refs:
        if ref and not str(ref).startswith("builtin:") and Path(ref).exists():
            out[str(ref)] = content_hash(ref)
        elif ref:
            out[str(ref)] = "builtin"
    return out


def _load_alg(ref: str):
    return resolve_algebra(ref) if ref.startswith("builtin:") else load_algebra(ref)


# ---------------------------------------------------------------- commands

def cmd_validate(args) -> tuple[dict, int]:
    verdicts, code = {}, EXIT_OK
    for path in args.paths:
        kind = "algebra" if path.startswith("builtin:") else sniff(path)
        if kind == "algebra":
            A = _load_alg(path)
            rep = validate_algebra(A, args.as_class)
        elif kind == "hom":
            rep = validate_homomorphism(load_hom(path))
        elif kind == "point":
            p = load_point(path)
            rep = validate_homomorphism(p.f)
            rep.subject = f"point {p.name}"
        else:
            rep = None
            load_template(path)
        entry = {"kind": kind, "ok": True if rep is None else rep.ok}
        if rep is not None:
            entry.update({"checked": rep.checked, "violations": [v.to_dict() for v in rep.violations]})
            if not rep.ok:
                code = EXIT_VIOLATION
        verdicts[path] = entry
    return {"verdicts": verdicts, "inputs": _input_hashes(args.paths)}, code


def _retraction_block(p, res, template) -> dict:
    block = {"holds": bool(res)}
    if res:
        r = res.retraction
        block["retraction"] = r.table()
        iS = verify_iS_axioms(r, template)
        block["iS_axioms"] = {law: iS.passed(law) for law in iS.checked}
        if template.name in ("direct", "twisted"):
            S = verify_S_axioms(r)
            block["S_axioms"] = {law: S.passed(law) for law in S.checked}
    else:
        block["diagnostic"] = res.diagnostic(p)
    if res.inconsistency:
        block["inconsistency"] = res.inconsistency
    return block


def cmd_classify(args) -> tuple[dict, int]:
    p = load_point(args.point)
    templates = tuple(load_template(t) for t in (args.template or []))
    a = classify_point(p, templates)
    by_name = {"direct": DIRECT, "twisted": TWISTED, **{t.name: t for t in templates}}
    verdicts = {
        "point": p.describe(),
        "right_homogeneous": a.right_homogeneous is not None,
        "left_homogeneous": a.left_homogeneous is not None,
        "homogeneous": a.homogeneous,
        "strong": a.strong,
        "templates": {name: _retraction_block(p, res, by_name[name]) for name, res in a.per_template.items()},
    }
    witnesses = {}
    if not a.strong:
        witnesses["strong"] = [p.X.label(x) for x in a.strong_witness]
    code = EXIT_INCONSISTENT if a.inconsistencies else EXIT_OK
    return {"verdicts": verdicts, "witnesses": witnesses, "inputs": _input_hashes([args.point] + list(args.template or []))}, code


def cmd_sweep(args) -> tuple[dict, int]:
    cls, size = args.cls, args.size if args.size is not None else args.catalog_size
    probes = args.probes
    if size is None:
        size = 4 if cls == "monoid" else 3
    if size < 1:
        raise Refusal("catalog size must be at least 1")
    if size > SIZE_LIMITS[cls]:
        raise Refusal(f"{cls} sweeps are limited to size {SIZE_LIMITS[cls]}; "
                      f"use --size {SIZE_LIMITS[cls]} or smaller")
    if probes < 1 or probes > SIZE_LIMITS[cls]:
        raise Refusal(f"--probes must lie in 1..{SIZE_LIMITS[cls]}")
    algebras = catalog(cls, size)
    probe_algebras = [A for A in algebras if A.size <= probes]
    points = sw.all_points(algebras, jobs=args.jobs)
    small = [p for p in points if p.X.size <= 3 and p.Y.size <= 3]
    results = [
        sw.check_equivalence(points),
        sw.check_schreier_strong(points),
        sw.check_decomposition_soundness(points),
        sw.check_stably_strong(points, probe_algebras),
        sw.check_pullback_stability(small, probe_algebras),
        sw.check_product_stability(small),
        sw.check_equalizer_stability(small),
        sw.check_compatibility(small),
        sw.check_uniqueness(points),
        sw.check_loop_round_trip(algebras),
    ]
    if cls == "monoid":
        results.append(sw.check_special_iff_group(algebras))
    findings = sw.check_first_non_strong(points)
    verdicts = {r.name: r.to_dict() for r in results}
    counts = {"algebras": len(algebras), "points": len(points), "probe_algebras": len(probe_algebras),
              "non_strong_points": findings.counts.get("non-strong", 0)}
    witnesses = {}
    if "first" in findings.counts:
        witnesses["first_non_strong_point"] = findings.counts["first"]
    code = EXIT_OK
    if any(r.inconsistencies for r in results):
        code = EXIT_INCONSISTENT
    elif not all(r.ok for r in results):
        code = EXIT_VIOLATION
    return {"verdicts": verdicts, "counts": counts, "witnesses": witnesses,
            "bounds": {"class": cls, "size": size, "probes": probes}}, code


def cmd_words(args) -> tuple[dict, int]:
    if args.max_len > 6 or args.max_len < 1:
        raise Refusal("--max-len must lie in 1..6")
    words = enumerate_splittings_at_generator(args.max_len)
    rendered = [render_word(w) for w in words]
    ok = len(words) == 2 if args.max_len >= 2 else not words
    return {"verdicts": {"words": rendered, "count": len(words), "exactly_direct_and_twisted": ok}}, (
        EXIT_OK if ok else EXIT_VIOLATION)


def cmd_special(args) -> tuple[dict, int]:
    X = _load_alg(args.algebra)
    t = load_template(args.template)
    res = is_s_special(X, t)
    p = diagonal_point(X)
    verdicts = {"algebra": X.name, "template": t.name, "s_special": bool(res)}
    if res:
        verdicts["retraction"] = res.retraction.table()
    else:
        verdicts["diagnostic"] = res.diagnostic(p)
    if res.inconsistency:
        verdicts["inconsistency"] = res.inconsistency
    return {"verdicts": verdicts, "inputs": _input_hashes([args.algebra])}, (
        EXIT_INCONSISTENT if res.inconsistency else EXIT_OK)


def cmd_loop(args) -> tuple[dict, int]:
    X = _load_alg(args.algebra)
    loop = extract_loop(X, args.hand)
    verdicts = {"algebra": X.name, "handedness": args.hand, "loop": loop is not None}
    if loop is not None:
        verdicts.update(loop.to_dict())
    return {"verdicts": verdicts, "inputs": _input_hashes([args.algebra])}, EXIT_OK


def cmd_protomodular(args) -> tuple[dict, int]:
    Y = _load_alg(args.algebra)
    cls = args.catalog
    if cls is None:
        if satisfies(Y, "heyting-semilattice") and "->" in dict(Y.signature.operations):
            cls = "heyting"
        elif satisfies(Y, "monoid"):
            cls = "monoid"
        else:
            cls = "unitary-magma"
    if cls == "heyting":
        algebras = heyting_catalog()
        label = "curated Heyting semilattices (chains 1..4, diamond)"
    else:
        size = args.catalog_size if args.catalog_size is not None else (4 if cls == "monoid" else 3)
        if size < 1 or size > SIZE_LIMITS[cls]:
            raise Refusal(f"{cls} catalog size must lie in 1..{SIZE_LIMITS[cls]}")
        algebras = catalog(cls, size)
        label = f"{cls} up to iso, size <= {size}"
    v = protomodular_object_check(Y, algebras, args.probes, f"{label}; probes <= {args.probes}")
    verdicts = {"object": Y.name, "bound": v.bound, "result": v.result,
                "points_checked": v.points_checked, "probes": v.probes}
    witnesses = {}
    if v.counterexample is not None:
        p = v.counterexample
        witnesses["counterexample"] = p.describe()
        sv = is_strong_point(p)
        if not sv:
            witnesses["non_strong_subalgebra"] = sv.witness.labels()
    return {"verdicts": verdicts, "witnesses": witnesses, "inputs": _input_hashes([args.algebra])}, EXIT_OK


def cmd_examples(args) -> tuple[dict, int]:
    if args.export:
        out = Path(args.export)
        out.mkdir(parents=True, exist_ok=True)
        for name, A in builtin_algebras().items():
            dump(A.to_dict(), out / f"{name}.json")
        for name, p in builtin_points().items():
            dump(point_to_dict(p), out / f"{name}.json")
    listing = {name: {"kind": ex.kind, "checks": [e.check for e in ex.expectations]}
               for name, ex in builtin_examples().items()}
    result = {"verdicts": {"examples": listing, "builtin_algebras": sorted(builtin_algebras()),
                           "builtin_points": sorted(builtin_points())}}
    code = EXIT_OK
    if args.run_all:
        rows = run_all_expectations()
        result["verdicts"]["expectations"] = [
            {"example": r["example"], "check": r["check"], "ok": r["ok"]} for r in rows]
        result["verdicts"]["all_ok"] = all(r["ok"] for r in rows)
        failures = [r for r in rows if not r["ok"]]
        if failures:
            result["witnesses"] = {f"{r['example']}.{r['check']}": {"expected": r["expected"], "got": r["got"]}
                                   for r in failures}
            code = EXIT_VIOLATION
    return result, code


# ---------------------------------------------------------------- output

def render_human(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            if isinstance(val, (dict, list)) and val and not _flat(val):
                lines.append(f"{pad}{key}:")
                lines.extend(render_human(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.extend(render_human(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat(val) -> bool:
    if isinstance(val, list):
        return all(not isinstance(v, (dict, list)) for v in val) and len(val) <= 12
    return False


def _scalar(val) -> str:
    if isinstance(val, bool):
        return "pass" if val else "FAIL"
    if isinstance(val, list):
        return "[" + ", ".join(_scalar(v) if not isinstance(v, str) else v for v in val) + "]"
    if isinstance(val, dict) and not val:
        return "{}"
    if val is None:
        return "-"
    return str(val)


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "sweep": cmd_sweep,
    "words": cmd_words,
    "special": cmd_special,
    "loop": cmd_loop,
    "protomodular": cmd_protomodular,
    "examples": cmd_examples,
}


def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("human", "machine"), default=d("human"))
    parser.add_argument("--jobs", type=int, default=d(1), help="worker processes for sweeps")
    parser.add_argument("--probes", type=int, default=d(3), help="size bound of the probe catalog")
    parser.add_argument("--catalog-size", type=int, default=d(None), help="size bound of enumerated catalogs")
    parser.add_argument("--timing", action="store_true", default=d(False),
                        help="include wall-clock time (makes output non-reproducible)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="schreierlab", description=__doc__.splitlines()[0])
    _globals(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, suppress=True)

    p = sub.add_parser("validate", parents=[common], help="check algebra, homomorphism or point files")
    p.add_argument("paths", nargs="+")
    p.add_argument("--as", dest="as_class", default=None, help="validate against another class")

    p = sub.add_parser("classify", parents=[common], help="Schreier analysis of a point")
    p.add_argument("point", help="point file or builtin:<name>")
    p.add_argument("--template", action="append", help="extra template (library name or file)")

    p = sub.add_parser("sweep", parents=[common], help="catalog-wide invariant checks")
    p.add_argument("--class", dest="cls", choices=("monoid", "unitary-magma"), default="monoid")
    p.add_argument("--size", type=int, default=None)

    p = sub.add_parser("words", parents=[common], help="splittings at the generator of N+N")
    p.add_argument("--max-len", type=int, default=4)

    p = sub.add_parser("special", parents=[common], help="is the diagonal point intrinsic Schreier?")
    p.add_argument("--algebra", required=True)
    p.add_argument("--template", default="direct")

    p = sub.add_parser("loop", parents=[common], help="extract a right or left loop structure")
    p.add_argument("--algebra", required=True)
    p.add_argument("--hand", choices=("right", "left"), default="right")

    p = sub.add_parser("protomodular", parents=[common], help="bounded protomodular-object check")
    p.add_argument("--algebra", required=True)
    p.add_argument("--catalog", choices=("monoid", "unitary-magma", "heyting"), default=None)

    p = sub.add_parser("examples", parents=[common], help="builtin examples and their expectations")
    p.add_argument("--run-all", action="store_true")
    p.add_argument("--export", metavar="DIR", default=None, help="write builtin algebras and points as files")
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        body, code = COMMANDS[args.command](args)
    except (ParseError, StructureError, PointError, TemplateClassError, SplittingIdentityError,
            NotAMonoid, Refusal, KeyError) as exc:
        body, code = {"error": {"type": type(exc).__name__, "message": str(exc).strip("'\"")}}, EXIT_INPUT
    except LoopInconsistency as exc:
        body, code = {"error": {"type": type(exc).__name__, "message": str(exc)}}, EXIT_INCONSISTENT
    report = {"command": ["schreierlab"] + argv, **body, "exit_code": code}
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 4)
    if args.format == "machine":
        print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print("\n".join(render_human(report)))
    return code


if __name__ == "__main__":
    sys.exit(main())
