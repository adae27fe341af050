"""Command-line entry point: every command builds a JSON report and the text output is rendered from it.

Exit codes: 0 pass, 1 a checked property fails, 2 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Sequence

from .category import CapExceededError, CategoryError, FunctorTable, StructuralError, check_axioms
from .corpus import bundled_corpus_paths, load_corpus, run_corpus, run_faults
from .fibrations import Fibration, is_fibration
from .filtered import FiniteSubsystem, NotCofilteredError, cone_problems, finite_subsystem_cone, is_filtered, whole
from .formats import FormatError, load_category, parse_map, parse_subsystem, read_text, resolve
from .homological import HomologicalError, STRATEGIES, check_abelian, check_additive, derived_functor, parse_functor
from .hyper import CertificateError, WindowError, eval_on_window, limit_correspondence, make_internal
from .limits import colimit, find_adjunction, limit
from .logic import EvaluationError, ParseError
from .modules import ModuleCategory, ModuleError
from .rings import RingError, get_ring, parse_ring

SCHEMA = 1
DEFAULTS = {"seed": 0, "cap": 4, "window": 64, "json": False}


class InputError(Exception):
    """Input that cannot be used: exit code 2 with a stable error code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class Report:
    def __init__(self, command: str):
        self.data: dict = {"schema": SCHEMA, "command": command, "inputs": []}

    def add_input(self, path: str | Path) -> None:
        p = Path(path)
        try:
            digest = hashlib.sha256(p.read_bytes()).hexdigest()
        except OSError as exc:
            raise InputError("not-found", f"{p}: {exc.strerror}") from None
        self.data["inputs"].append({"path": str(p), "sha256": digest})

    def finish(self, passed: bool) -> int:
        self.data["verdict"] = "pass" if passed else "fail"
        self.data["exit_code"] = 0 if passed else 1
        return self.data["exit_code"]


# ---------------------------------------------------------------------------
# input helpers


def _category(report: Report, path: str):
    report.add_input(path)
    cat = load_category(path)
    problems = cat.structural_problems()
    if problems:
        raise InputError("structural-error", f"{path}: " + "; ".join(problems[:5]))
    return cat


def _functor(report: Report, path: str, source_key: str = "source", target_key: str = "target") -> FunctorTable:
    report.add_input(path)
    mf = parse_map(read_text(path))
    for key in (source_key, target_key):
        if key not in mf.headers:
            raise InputError("parse-error", f"{path}: missing '{key}' header")
    src = _category(report, str(resolve(path, mf.headers[source_key])))
    tgt = _category(report, str(resolve(path, mf.headers[target_key])))
    F = FunctorTable(src, tgt, mf.pairs)
    problems = F.problems()
    if problems:
        raise InputError("structural-error", f"{path}: " + "; ".join(problems[:5]))
    return F


def _ring(report: Report, spec: str):
    p = Path(spec)
    if p.suffix == ".ring" or p.exists():
        report.add_input(p)
        return parse_ring(read_text(p))
    return get_ring(spec)


def _legs(res) -> dict | None:
    if res is None:
        return None
    return {"apex": res.apex, "legs": dict(sorted(res.cone.legs.items()))}


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, report: Report) -> int:
    kind = args.kind
    report.data["kind"] = kind
    if kind == "category":
        if not args.paths:
            raise InputError("usage", "check --kind category needs at least one category file")
        results = []
        for path in args.paths:
            cat = _category(report, path)
            rep = check_axioms(cat)
            results.append({
                "path": path,
                "ok": rep.ok,
                "clauses": rep.clauses,
                "violations": [str(v) for v in rep.violations[:10]],
            })
        report.data["results"] = results
        return report.finish(all(r["ok"] for r in results))
    if kind in ("additive", "abelian"):
        ring = _ring(report, args.ring or (args.paths[0] if args.paths else "Z4"))
        cat = ModuleCategory(ring, args.cap)
        rep = check_additive(cat) if kind == "additive" else check_abelian(cat)
        report.data.update({
            "ring": ring.name,
            "cap": args.cap,
            "objects": cat.names(),
            "clauses": rep.clauses(),
            "failures": [str(f) for f in rep.failures[:10]],
            "warnings": rep.warnings,
        })
        return report.finish(rep.ok)
    if kind == "fibration":
        return _fib_check(args, report)
    raise InputError("usage", f"unknown kind {kind!r}")


def _fib_check(args, report: Report) -> int:
    if not (args.total and args.base and args.proj):
        raise InputError("usage", "fibration checks need --total, --base and --proj")
    total = _category(report, args.total)
    base = _category(report, args.base)
    report.add_input(args.proj)
    mf = parse_map(read_text(args.proj))
    fib = Fibration(total, base, FunctorTable(total, base, mf.pairs))
    problems = fib.problems()
    if problems:
        raise InputError("structural-error", "projection: " + "; ".join(problems[:5]))
    res = is_fibration(fib)
    report.data["fibration"] = res.ok
    report.data["witness"] = list(res.witness) if res.witness else None
    return report.finish(res.ok)


def cmd_limit(args, report: Report) -> int:
    D = _functor(report, args.diagram)
    res = limit(D) if args.command == "limit" else colimit(D)
    report.data["result"] = _legs(res)
    return report.finish(res is not None)


def cmd_adjoint(args, report: Report) -> int:
    F = _functor(report, args.left)
    G = _functor(report, args.right)
    adj = find_adjunction(F, G)
    report.data["adjunction"] = None if adj is None else {
        "unit": dict(sorted(adj.unit.items())),
        "counit": dict(sorted(adj.counit.items())),
    }
    return report.finish(adj is not None)


def cmd_cone(args, report: Report) -> int:
    cat = _category(report, args.category)
    if args.subsystem:
        report.add_input(args.subsystem)
        spec = parse_subsystem(read_text(args.subsystem))
        J = FiniteSubsystem(tuple(spec.objects), tuple(spec.morphisms))
    else:
        J = whole(cat)
    filt = is_filtered(cat, "cofiltered")
    report.data["cofiltered"] = filt.ok
    if not filt.ok:
        report.data["reason"] = filt.reason
        report.data["counterexample"] = list(filt.counterexample) if filt.counterexample else None
    try:
        cone = finite_subsystem_cone(cat, J)
    except NotCofilteredError as exc:
        report.data["cone"] = None
        report.data["error"] = str(exc)
        return report.finish(False)
    problems = cone_problems(cat, J, cone)
    report.data["cone"] = {"apex": cone.apex, "projections": dict(sorted(cone.projections.items()))}
    report.data["problems"] = problems
    return report.finish(not problems)


def cmd_derive(args, report: Report) -> int:
    ring = _ring(report, args.ring)
    cat = ModuleCategory(ring, args.cap)
    F = parse_functor(cat, args.functor)
    A = cat[args.object]
    value = derived_functor(F, cat, A, args.degree, args.strategy)
    report.data.update({
        "ring": ring.name,
        "cap": args.cap,
        "functor": value.functor,
        "object": value.obj,
        "degree": value.degree,
        "value": value.value.name,
        "size": value.size,
        "resolution": list(value.resolution),
        "strategy": args.strategy,
    })
    if value.matches_functor is not None:
        report.data["matches_functor"] = value.matches_functor
    return report.finish(value.matches_functor is not False)


def cmd_hyper(args, report: Report) -> int:
    if args.hyper_command == "eval":
        elem = make_internal(args.builder)
        verdict = eval_on_window(args.formula, {elem.name: elem}, args.window)
        report.data.update({"builder": args.builder, "element": elem.name, "formula": args.formula,
                            "result": verdict.summary()})
        return report.finish(verdict.kind != "Undecided" or not args.require_decided)
    res = limit_correspondence(args.m, args.p, args.window, args.category, args.lookahead)
    report.data.update({
        "m": args.m,
        "p": args.p,
        "window": args.window,
        "kind": args.category,
        "families": len(res.families),
        "classes": len(res.classes),
        "zero_class": res.zero_class,
        "bijective": res.bijective,
        "legs_commute": res.legs_commute,
    })
    return report.finish(res.bijective and res.legs_commute)


def _corpus_report(path: str | Path, with_faults: bool) -> dict:
    corpus = load_corpus(path)
    results = run_corpus(corpus)
    entry = {
        "corpus": corpus.name,
        "statements": len(results),
        "agree": sum(r.agree for r in results),
        "disagreements": [
            {"label": r.label, "error": r.error, "witness": r.check.witness() if r.check else None}
            for r in results
            if not r.agree
        ],
    }
    ok = entry["agree"] == entry["statements"]
    if with_faults:
        faults = []
        for desc, res in run_faults(corpus):
            bad = [r.label for r in res if not r.agree]
            faults.append({"fault": desc, "disagreements": len(bad), "labels": bad})
            ok = ok and bool(bad)
        entry["faults"] = faults
    entry["ok"] = ok
    return entry


def _corpus_path(spec: str) -> Path:
    """A corpus file, falling back to the bundled corpus with the same file name."""
    p = Path(spec)
    if p.exists():
        return p
    for bundled in bundled_corpus_paths():
        if bundled.name == p.name:
            return bundled
    return p


def cmd_transfer(args, report: Report) -> int:
    path = _corpus_path(args.corpus)
    report.add_input(path)
    entry = _corpus_report(path, args.faults)
    report.data.update(entry)
    return report.finish(entry["ok"])


def cmd_corpus(args, report: Report) -> int:
    if args.directory:
        paths = sorted(Path(args.directory).glob("*.phi"))
        if not paths:
            raise InputError("not-found", f"no .phi files in {args.directory}")
    else:
        paths = bundled_corpus_paths()
    entries = []
    for p in paths:
        report.add_input(p)
        entries.append(_corpus_report(p, True))
    report.data["corpora"] = entries
    report.data["statements"] = sum(e["statements"] for e in entries)
    report.data["agree"] = sum(e["agree"] for e in entries)
    return report.finish(all(e["ok"] for e in entries))


def cmd_fib(args, report: Report) -> int:
    return _fib_check(args, report)


# ---------------------------------------------------------------------------
# parser and rendering


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized steps")
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="size cap for module fragments")
    common.add_argument("--window", type=int, default=argparse.SUPPRESS, help="index window for sequence models")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print the JSON report")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="catstar", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check category, additive, abelian or fibration axioms")
    p.add_argument("--kind", choices=["category", "additive", "abelian", "fibration"], default="category")
    p.add_argument("--ring", help="ring name or .ring file (additive/abelian)")
    p.add_argument("--total")
    p.add_argument("--base")
    p.add_argument("--proj")
    p.add_argument("paths", nargs="*")
    p.set_defaults(func=cmd_check)

    for name in ("limit", "colimit"):
        p = sub.add_parser(name, parents=[common], help=f"{name} of a diagram file")
        p.add_argument("diagram", help="map file with source/target headers")
        p.set_defaults(func=cmd_limit)

    p = sub.add_parser("adjoint", parents=[common], help="search for an adjunction between two functors")
    p.add_argument("left", help="functor file F: C -> D")
    p.add_argument("right", help="functor file G: D -> C")
    p.set_defaults(func=cmd_adjoint)

    p = sub.add_parser("cone", parents=[common], help="cone over a finite subsystem of a cofiltered category")
    p.add_argument("--category", required=True, help="category file")
    p.add_argument("--subsystem", help="subsystem file (default: the whole category)")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("derive", parents=[common], help="right derived functor from an injective resolution")
    p.add_argument("--ring", required=True)
    p.add_argument("--functor", required=True, help="id, hom(X,-), hom(-,X), -+-, -+X or const(X)")
    p.add_argument("--object", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="minimal")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("hyper", parents=[common], help="sequence-model evaluation and tower cones")
    hsub = p.add_subparsers(dest="hyper_command", required=True)
    e = hsub.add_parser("eval", parents=[common], help="evaluate a statement about an internal element")
    e.add_argument("--builder", required=True, choices=["identity", "nth_prime", "factorial"])
    e.add_argument("--formula", required=True)
    e.add_argument("--require-decided", action="store_true", help="exit 1 on an undecided verdict")
    c = hsub.add_parser("cone", parents=[common], help="limit of hom(Z/m, Z/p^n) against the hyper-cone classes")
    c.add_argument("--m", type=int, default=2)
    c.add_argument("--p", type=int, default=2)
    c.add_argument("--category", choices=["ab", "ring"], default="ab")
    c.add_argument("--lookahead", type=int, default=2)
    p.set_defaults(func=cmd_hyper)

    p = sub.add_parser("transfer", parents=[common], help="run one transfer corpus under the finite star")
    p.add_argument("--corpus", required=True)
    p.add_argument("--faults", action="store_true", help="also run the corpus fault stars")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("corpus", parents=[common], help="run every corpus with its fault stars")
    p.add_argument("directory", nargs="?", help="directory of .phi files (default: the bundled corpora)")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("fib", parents=[common], help="fibration checks")
    fsub = p.add_subparsers(dest="fib_command", required=True)
    f = fsub.add_parser("check", parents=[common], help="is the projection a fibration")
    f.add_argument("--total", required=True)
    f.add_argument("--base", required=True)
    f.add_argument("--proj", required=True)
    p.set_defaults(func=cmd_fib)
    return parser


def render(data: dict) -> str:
    """Human-readable lines derived from the report."""
    lines = [f"{data['command']}: {data.get('verdict', 'error').upper()}"]
    for key in sorted(data):
        if key in ("schema", "command", "verdict", "inputs", "exit_code"):
            continue
        lines.append(f"  {key}: {json.dumps(data[key], sort_keys=True)}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    defaults = dict(DEFAULTS)
    if args.command == "hyper" and args.hyper_command == "cone":
        defaults["window"] = 8
    for key, value in defaults.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    report = Report(args.command if args.command not in ("hyper", "fib") else
                    f"{args.command} {getattr(args, 'hyper_command', None) or args.fib_command}")
    report.data["seed"] = args.seed
    try:
        code = args.func(args, report)
    except InputError as exc:
        code = _error(report, exc.code, str(exc))
    except (FormatError, ParseError, RingError) as exc:
        code = _error(report, "parse-error", str(exc))
    except CapExceededError as exc:
        code = _error(report, "cap-exceeded", str(exc))
    except (StructuralError, ModuleError, HomologicalError) as exc:
        code = _error(report, "structural-error", str(exc))
    except (WindowError, CertificateError, EvaluationError) as exc:
        code = _error(report, "evaluation-error", str(exc))
    except CategoryError as exc:
        code = _error(report, "invalid-input", str(exc))
    if args.json:
        print(json.dumps(report.data, sort_keys=True, indent=2))
    else:
        print(render(report.data))
    return code


def _error(report: Report, code: str, message: str) -> int:
    report.data["error"] = {"code": code, "message": message}
    report.data["verdict"] = "error"
    report.data["exit_code"] = 2
    return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
