"""Verify rigid rational curves on toric Fano 4-folds from the command line.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 when
the input cannot be read.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .corpus import CorpusError, load_certificates, load_corpus, load_paircases, load_variety
from .verify import DEFAULT_TRIALS, corpus_table, validate_variety, verify_pairs, verify_rows

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(report: dict, args, lines) -> None:
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    elif not args.quiet:
        for line in lines:
            print(line)


def _mark(ok) -> str:
    return "PASS" if ok else "FAIL"


def _validation_lines(v: dict):
    yield (f"{v['name']}: smooth={v['smooth']} complete={v['complete']} fano={v['fano']} "
           f"class-group rank={v['class_group_rank']} sections={v['sections']}")
    if v["violated_relations"]:
        yield f"  violated relations: {', '.join(str(k + 1) for k in v['violated_relations'])}"
    if v.get("weights_match") is False:
        yield "  realized weights do not match the declared torus action"
    if "unmatched_facet" in v:
        yield f"  unmatched facet: {v['unmatched_facet']}"
    if "folded_walls" in v:
        yield f"  cones overlap across walls: {v['folded_walls']}"
    yield f"{_mark(v['passed'])} {v['name']}"


def cmd_validate(args) -> int:
    spec = load_variety(args.variety)
    report = validate_variety(spec)
    _emit(report, args, _validation_lines(report))
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _row_lines(rows: dict):
    for r in rows["rows"]:
        if r["passed"]:
            yield (f"{_mark(True)} {r['label']}: {r['curve']} class {r['class']} "
                   f"h0={r['h0']} splitting={tuple(r['splitting'])}")
        else:
            yield f"{_mark(False)} {r['label']}: stage {r['failed_stage']}: {r['detail']}"
    rel = rows["relation"]
    yield (f"classes {', '.join(rows['classes'])}: generate={rows['generate']} "
           f"relation={tuple(rel) if rel else None}")


def _pair_lines(pairs):
    for p in pairs:
        if p["status"] == "fails":
            yield f"{_mark(p['passed'])} {p['label']}: no separating forms (expected failure)"
        elif p["status"] == "empty":
            yield f"{_mark(p['passed'])} {p['label']}: disjoint, witness {p['witness']}"
        else:
            if p["stated_dim"] is None:
                dims = f"no stated dim U (formula {p['formula_dim']}, {p['source']})"
            else:
                dims = f"dim U {p['stated_dim']} (formula {p['formula_dim']}, {p['dimension']})"
            yield (f"{_mark(p['passed'])} {p['label']}: {p['forms']} forms, rank {p['ranks']} "
                   f"on {p['seeds_passed']}/{p['seeds']} seeds; {dims}")


def cmd_verify(args) -> int:
    spec = load_variety(args.variety)
    certs = load_certificates(args.certificates)
    if any(c.variety != spec.name for c in certs):
        raise CorpusError(f"certificates do not belong to {spec.name}")
    report = {"version": __version__, "seed": args.seed, "validation": validate_variety(spec),
              "certificates": verify_rows(spec, certs, args.jobs)}
    lines = list(_validation_lines(report["validation"])) + list(_row_lines(report["certificates"]))
    passed = report["validation"]["passed"] and report["certificates"]["passed"]
    if args.pairs:
        cases = load_paircases(args.pairs)
        report["pairs"] = verify_pairs(spec, cases, args.seed, args.trials, args.jobs, certs)
        lines += list(_pair_lines(report["pairs"]))
        passed = passed and all(p["passed"] for p in report["pairs"])
    report["passed"] = passed
    lines.append(f"{_mark(passed)} overall")
    _emit(report, args, lines)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_table(args) -> int:
    bundles = load_corpus(args.corpus)
    report = corpus_table(bundles, args.seed, args.trials, args.jobs)
    lines = ["variety  euler  b3   copies  expected"]
    for c in report["copies"]:
        exp = "info" if c["informational"] else str(c["expected"])
        lines.append(f"{c['variety']:<8} {c['euler']:>5}  {c['betti'][3]:>3}  {c['copies']:>6}  {exp:>8}  "
                     f"{_mark(c['passed'])}")
    lines += list(_pair_lines(report["pairs"]))
    lines.append(f"stated dimensions matched: {report['dimension_matches']}; "
                 f"flagged anomalies: {', '.join(report['dimension_mismatches']) or 'none'}")
    lines.append(f"{_mark(report['passed'])} overall")
    _emit(report, args, lines)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base seed for random instantiation")
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="seeds per pair case")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="print a JSON report")
    out.add_argument("--quiet", action="store_true", help="print nothing; use the exit code")

    parser = argparse.ArgumentParser(prog="toricfano", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a variety file")
    p.add_argument("variety", type=Path)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("verify", parents=[common], help="verify curve certificates")
    p.add_argument("variety", type=Path)
    p.add_argument("certificates", type=Path)
    p.add_argument("--pairs", type=Path, help="pair-case file to check as well")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="copies table and pair cases for a corpus")
    p.add_argument("corpus", type=Path, nargs="?", help="corpus directory (default: bundled data)")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.trials < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except CorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
