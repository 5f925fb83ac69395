"""Command-line front end: analyze, verify, enumerate, series, counterexample.

Exit codes: 0 success, 1 parse error, 2 validation or assertion failure,
3 resource limit. JSON is the single interchange format; text output renders
the same report object.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict

from . import classify, errors, series
from .braces import DEFAULT_SEED, SkewBrace, check_identities
from .catalog import brace_from_spec, spec_of_tables
from .formula import BCBrace, validate_formula_brace
from .groups import ElementSet, SeriesChain, builtin_group, validate_group
from .substructures import coset_agreement, is_ideal, is_left_ideal, is_subbrace

ELEMENT_DUMP_CAP = 1024


def set_to_json(brace: SkewBrace, s: ElementSet) -> dict:
    out: dict = {"order": len(s)}
    if isinstance(brace, BCBrace):
        if s.pair is not None:
            out["b_basis"] = [list(v) for v in s.pair.b.basis]
            out["c_basis"] = [list(v) for v in s.pair.c.basis]
        if len(s) <= ELEMENT_DUMP_CAP:
            out["elements"] = [
                [list(b), list(c)] for b, c in (brace.decode(i) for i in s)
            ]
    else:
        out["elements"] = s.sorted()
    return out


def chain_to_json(brace: SkewBrace, chain: SeriesChain) -> dict:
    return {
        "kind": chain.kind,
        "start_index": chain.start_index,
        "terms": [set_to_json(brace, t) for t in chain.terms],
        "stabilized_at": chain.stabilized_at,
        "reaches_terminal": chain.reaches_terminal,
    }


def _load_spec(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise errors.ParseError(f"cannot read brace spec {path}: {exc}") from exc


def _all_chains(brace: SkewBrace) -> dict[str, SeriesChain]:
    chains = {name: fn(brace) for name, fn in series.ALL_SERIES.items()}
    chains["group_lower_dot"] = series.gamma_dot_series(brace)
    chains["group_upper_dot"] = series.zeta_dot_series(brace)
    chains["group_lower_circ"] = series.gamma_circ_series(brace)
    chains["group_upper_circ"] = series.zeta_circ_series(brace)
    return chains


def cmd_analyze(args: argparse.Namespace) -> int:
    brace = brace_from_spec(_load_spec(args.file))
    profile = classify.nilpotency_profile(brace)
    chains = _all_chains(brace)
    report = {
        "order": brace.order,
        "backing": brace.backing,
        "profile": asdict(profile),
        "series": {name: chain_to_json(brace, c) for name, c in chains.items()},
        "socle": set_to_json(brace, series.socle(brace)),
        "annihilator": set_to_json(brace, series.annihilator(brace)),
    }
    if args.checks:
        labels = [x.strip().upper() for x in args.checks.split(",") if x.strip()]
        reports = []
        for label in labels:
            for n in range(1, args.max_n + 1):
                for k in range(n):
                    r = classify.check_inclusion(brace, label, n, k)
                    reports.append(
                        {
                            "label": r["label"],
                            "n": r["n"],
                            "k": r["k"],
                            "holds": r["holds"],
                            "witness": r["witness"],
                            "lhs": set_to_json(brace, r["lhs"]),
                        }
                    )
        report["checks"] = reports
    _emit(args, report)
    return 0


def _render_text(report: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key, value in report.items():
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _render_text(value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{pad}{key}:")
            for item in value:
                _render_text(item, indent + 1)
                print(f"{pad}  -")
        else:
            print(f"{pad}{key}: {value}")


def _emit(args: argparse.Namespace, report: dict) -> None:
    if args.json:
        json.dump(report, sys.stdout, indent=2, sort_keys=True)
        print()
    else:
        _render_text(report)


def _suite_identities(brace: SkewBrace, args) -> list[str]:
    failures = []
    result = check_identities(brace, samples=args.samples, seed=args.seed)
    if not result["passed"]:
        failures.extend(f"identity failure: {f}" for f in result["failures"])
    if isinstance(brace, BCBrace):
        try:
            validate_formula_brace(brace, samples=args.samples, seed=args.seed)
        except errors.AlgebraError as exc:
            failures.append(f"formula validation: {exc}")
    return failures


def _suite_ideals(brace: SkewBrace, args) -> list[str]:
    failures = []
    chains = _all_chains(brace)
    for name in ("left", "smoktunowicz"):
        for i, term in enumerate(chains[name].terms):
            if not is_left_ideal(brace, term):
                failures.append(f"{name} term {i} is not a left ideal")
            elif not is_subbrace(brace, term):
                failures.append(f"{name} term {i} is not a sub-skew brace")
    for name in ("right", "gamma", "socle", "annihilator"):
        for i, term in enumerate(chains[name].terms):
            if not is_ideal(brace, term):
                failures.append(f"{name} term {i} is not an ideal")
    soc = series.socle(brace)
    ann = series.annihilator(brace)
    if not is_ideal(brace, soc):
        failures.append("socle is not an ideal")
    if not is_ideal(brace, ann):
        failures.append("annihilator is not an ideal")
    for term in chains["left"].terms:
        if len(term) > 4096:
            continue
        for a in brace.generators():
            if not coset_agreement(brace, term, a):
                failures.append(f"coset agreement fails at a={a}")
    return failures


EXPECTED_FAILURES = {
    "pq-i": {("A", 2, 0), ("B", 2, 0), ("C", 1, 0), ("D", 1, 0)},
    "counterexample_F": {("F", 3, 0)},
}


def _suite_inclusions(brace: SkewBrace, args, spec_kind: str | None) -> list[str]:
    failures = []
    for r in classify.check_inclusion_sweep(brace, "E", max_n=args.max_n):
        if not r["holds"]:
            failures.append(
                f"inclusion (E) fails at ({r['n']}, {r['k']}) with witness {r['witness']}"
            )
    expected = EXPECTED_FAILURES.get(spec_kind or "", set())
    for label, n, k in sorted(expected):
        r = classify.check_inclusion(brace, label, n, k)
        if r["holds"]:
            failures.append(f"inclusion ({label}) at ({n}, {k}) unexpectedly holds")
    return failures


def _suite_theorems(brace: SkewBrace, args) -> list[str]:
    failures = []
    eq = classify.check_equivalence_theorems(brace)
    failures.extend(f"theorem disagreement: {name}" for name in eq["disagreements"])
    cube = classify.check_cube_right_nilpotency(brace)
    if not cube["holds"]:
        failures.append("A^3 = 1 with nilpotent additive group but not right nilpotent")
    return failures


def _spec_kind(spec: dict) -> str | None:
    kind = spec.get("kind")
    if kind == "pq":
        return f"pq-{spec.get('variant')}"
    return kind


def cmd_verify(args: argparse.Namespace) -> int:
    spec = _load_spec(args.file)
    brace = brace_from_spec(spec)
    kind = _spec_kind(spec)
    suites = {
        "identities": lambda: _suite_identities(brace, args),
        "ideals": lambda: _suite_ideals(brace, args),
        "inclusions": lambda: _suite_inclusions(brace, args, kind),
        "theorems": lambda: _suite_theorems(brace, args),
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    failures: list[str] = []
    if args.threads > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            for result in pool.map(lambda n: suites[n](), names):
                failures.extend(result)
    else:
        for n in names:
            failures.extend(suites[n]())
    report = {"suites": names, "failures": failures, "passed": not failures}
    _emit(args, report)
    return 0 if not failures else 2


def cmd_enumerate(args: argparse.Namespace) -> int:
    from .enumeration import enumerate_braces

    if args.builtin:
        group = builtin_group(args.builtin)
    elif args.group:
        group = validate_group(_load_spec_table(args.group))
    else:
        raise errors.ParseError("enumerate needs --group FILE or --builtin NAME")
    braces = enumerate_braces(group, max_order=args.max_order)
    out = []
    for b in braces:
        entry = spec_of_tables(b)
        if args.profile:
            entry["profile"] = asdict(classify.nilpotency_profile(b))
        out.append(entry)
    json.dump(out, sys.stdout, indent=None if args.json else 2, sort_keys=True)
    print()
    return 0


def _load_spec_table(path: str) -> list:
    doc = _load_spec(path)
    if isinstance(doc, dict) and "mul" in doc:
        return doc["mul"]
    if isinstance(doc, list):
        return doc
    raise errors.ParseError("group file must be a table or {'mul': table}")


def cmd_series(args: argparse.Namespace) -> int:
    brace = brace_from_spec(_load_spec(args.file))
    if args.kind == "all":
        chains = _all_chains(brace)
    else:
        if args.kind not in series.ALL_SERIES:
            raise errors.ParseError(f"unknown series kind {args.kind!r}")
        chains = {args.kind: series.ALL_SERIES[args.kind](brace)}
    report = {name: chain_to_json(brace, c) for name, c in chains.items()}
    _emit(args, report)
    return 0


def cmd_counterexample(args: argparse.Namespace) -> int:
    report = classify.verify_counterexample_F(args.p)
    if args.validate:
        from .catalog import make_counterexample_F

        validate_formula_brace(
            make_counterexample_F(args.p), samples=args.samples, seed=args.seed
        )
        report["validated"] = True
    _emit(args, report)
    return 0 if report["all_confirmed"] else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewbrace",
        description="Series, ideals, and nilpotency analysis for finite skew braces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed")
        p.add_argument(
            "--samples", type=int, default=100_000, help="random triples for formula braces"
        )
        p.add_argument("--max-n", type=int, default=5, dest="max_n", help="series depth for sweeps")
        p.add_argument("--threads", type=int, default=1, help="parallel suite execution")

    p_analyze = sub.add_parser("analyze", help="profile and all series of one brace")
    p_analyze.add_argument("file", help="brace spec JSON")
    p_analyze.add_argument("--checks", default="", help="comma list of inclusion labels A..H")
    common(p_analyze)
    p_analyze.set_defaults(fn=cmd_analyze)

    p_verify = sub.add_parser("verify", help="run assertion suites against one brace")
    p_verify.add_argument("file", help="brace spec JSON")
    p_verify.add_argument(
        "--suite",
        default="all",
        choices=["identities", "ideals", "inclusions", "theorems", "all"],
    )
    common(p_verify)
    p_verify.set_defaults(fn=cmd_verify)

    p_enum = sub.add_parser("enumerate", help="all braces on an additive group")
    p_enum.add_argument("--group", help="group table JSON file")
    p_enum.add_argument("--builtin", help="builtin group name, e.g. C6 or S3")
    p_enum.add_argument("--max-order", type=int, default=12, dest="max_order")
    p_enum.add_argument("--profile", action="store_true", help="attach nilpotency profiles")
    common(p_enum)
    p_enum.set_defaults(fn=cmd_enumerate)

    p_series = sub.add_parser("series", help="print one series chain")
    p_series.add_argument("file", help="brace spec JSON")
    p_series.add_argument("--kind", default="all")
    common(p_series)
    p_series.set_defaults(fn=cmd_series)

    p_ce = sub.add_parser("counterexample", help="verify the matrix counterexample")
    p_ce.add_argument("p", type=int, help="prime p >= 5")
    p_ce.add_argument("--validate", action="store_true", help="run sampled brace validation")
    common(p_ce)
    p_ce.set_defaults(fn=cmd_counterexample)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except errors.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except (errors.TooLarge, errors.QuotientTooLarge) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except errors.AlgebraError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
