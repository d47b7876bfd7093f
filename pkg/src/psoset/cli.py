"""Command-line interface: ``psoset <command> ...``.

Exit status: 0 when every verdict passes, 1 when one fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from .constructions import (
    VARIANTS,
    ConstructionError,
    ConstructionSpec,
    construct,
    construct_checked,
    drastic_tconorm,
    drastic_tnorm,
)
from .core import (
    DASHED_RULES,
    ClassificationError,
    NotATrellisError,
    PsosetError,
    as_bounded_trellis,
    classify_around,
    transitivity_report,
)
from .optable import check_block_structure, is_nullnorm
from .search import SearchConfig, enumerate_bounded_trellises, run_conjecture_suite
from .textio import TABLE_FORMATS, export_dot, export_table, read_psoset, read_table

PASS, FAIL, INPUT_ERROR = 0, 1, 2


def _names(P, xs) -> str:
    return "{" + ", ".join(P.labels[x] for x in xs) + "}"


def _trellis(path):
    return as_bounded_trellis(read_psoset(path))


def cmd_check(args) -> int:
    P = read_psoset(args.file)
    tr = transitivity_report(P)
    print(f"elements: {P.n}")
    print(f"transitive: {P.is_transitive()}")
    print(f"cycle_members: {_names(P, P.cycle_members())}")
    print(f"left_transitive: {_names(P, tr.left)}")
    print(f"right_transitive: {_names(P, tr.right)}")
    print(f"middle_transitive: {_names(P, tr.middle)}")
    print(f"transitive_elements: {_names(P, tr.full)}")
    print(f"dashed_pairs: {[P.names(p) for p in P.dashed_pairs(args.rule)]}")
    try:
        B = as_bounded_trellis(P)
    except NotATrellisError as exc:
        print(f"bounded_trellis: FAIL reason={exc.reason!r} witness={P.names(exc.witness)}")
        return FAIL
    print(f"bounded_trellis: PASS bottom={B.labels[B.bottom]} top={B.labels[B.top]}")
    return PASS


def cmd_classify(args) -> int:
    P = _trellis(args.file)
    try:
        c = classify_around(P, args.zero, args.rule)
    except ClassificationError as exc:
        print(f"classification: FAIL {exc}")
        return FAIL
    print(f"a: {P.labels[c.a]}")
    for label, field in (
        ("[0,a[", "below"),
        ("]a,1]", "above"),
        ("I_a", "incomparable"),
        ("I_a^1", "ia1"),
        ("I_a^2", "ia2"),
        ("I_a^3", "ia3"),
        ("N(a)", "n_of_a"),
        ("M(a)", "m_of_a"),
        ("N_i", "n_i"),
        ("M_i", "m_i"),
    ):
        print(f"{label}: {_names(P, getattr(c, field))}")
    print(f"a_in_K: {c.a_in_k}")
    return PASS


def _spec(P, args) -> ConstructionSpec:
    a = P.index(args.zero)
    S = read_table(args.s_table, P) if args.s_table else drastic_tconorm(P, a)
    T = read_table(args.t_table, P) if args.t_table else drastic_tnorm(P, a)
    return ConstructionSpec(args.variant, a, S, T, args.rule)


def cmd_construct(args) -> int:
    P = _trellis(args.file)
    spec = _spec(P, args)
    if args.raw:
        V = construct(P, spec)
        print(export_table(V, args.format), end="")
        return PASS if is_nullnorm(V).ok else FAIL
    try:
        V = construct_checked(P, spec)
    except ConstructionError as exc:
        for line in exc.report.lines(P.labels):
            print(line, file=sys.stderr)
        return FAIL
    print(export_table(V, args.format), end="")
    return PASS


def cmd_verify(args) -> int:
    P = _trellis(args.file)
    V = read_table(args.table, P)
    verdict = is_nullnorm(V)
    for line in verdict.report.lines(P.labels):
        print(line)
    print(f"zeros: {_names(P, verdict.zeros)}")
    print(f"proper: {verdict.proper}")
    if not verdict.ok:
        return FAIL
    status = PASS
    zeros = verdict.zeros if args.zero is None else (P.index(args.zero),)
    for a in zeros:
        try:
            report = check_block_structure(V, a, args.rule)
        except PsosetError as exc:
            print(f"[zero {P.labels[a]}] block_structure: FAIL {exc}")
            status = FAIL
            continue
        for line in report.lines(P.labels):
            print(f"[zero {P.labels[a]}] {line}")
        if not report.ok:
            status = FAIL
    return status


def cmd_enumerate(args) -> int:
    cfg = SearchConfig(args.max_n, dedup_canonical=args.dedup)
    sizes = Counter(B.n for B in enumerate_bounded_trellises(cfg))
    for k in range(1, args.max_n + 1):
        print(f"trellises[n={k}]: {sizes.get(k, 0)}")
    if not args.conjectures:
        return PASS
    rules = DASHED_RULES if args.both_rules else (args.rule,)
    report = run_conjecture_suite(
        cfg, rules=rules, st_pairs="all" if args.all_norms else "drastic"
    )
    for line in report.lines():
        print(line)
    return PASS if report.ok else FAIL


def cmd_export(args) -> int:
    if args.dot:
        print(export_dot(read_psoset(args.file), args.rule), end="")
        return PASS
    P = _trellis(args.file)
    print(export_table(read_table(args.table, P), args.format), end="")
    return PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="psoset", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument(
            "--rule", choices=DASHED_RULES, default="step",
            help="dashed edges bridged by one intermediate (step) or any chain (reach)",
        )
        return p

    p = add("check", cmd_check, "psoset / bounded trellis validity and transitivity report")
    p.add_argument("file")

    p = add("classify", cmd_classify, "sets around a zero-element candidate")
    p.add_argument("file")
    p.add_argument("--zero", required=True)

    p = add("construct", cmd_construct, "build a nullnorm from S on [0,a] and T on [a,1]")
    p.add_argument("file")
    p.add_argument("--zero", required=True)
    p.add_argument("--variant", choices=VARIANTS, default="thm31")
    p.add_argument("--s-table", help="t-conorm on [0,a] (csv grid); drastic if omitted")
    p.add_argument("--t-table", help="t-norm on [a,1] (csv grid); drastic if omitted")
    p.add_argument("--format", choices=TABLE_FORMATS, default="csv")
    p.add_argument("--raw", action="store_true", help="skip precondition checks")

    p = add("verify", cmd_verify, "axioms and block structure of an operation table")
    p.add_argument("file")
    p.add_argument("--table", required=True)
    p.add_argument("--zero")

    p = add("enumerate", cmd_enumerate, "census of small bounded trellises")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--conjectures", action="store_true", help="run the nullnorm claim suite")
    p.add_argument("--dedup", action="store_true", help="one trellis per isomorphism class")
    p.add_argument("--both-rules", action="store_true")
    p.add_argument("--all-norms", action="store_true",
                   help="every t-conorm/t-norm pair, not only the drastic ones")

    p = add("export", cmd_export, "DOT diagram or re-formatted operation table")
    p.add_argument("file")
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--dot", action="store_true")
    what.add_argument("--table")
    p.add_argument("--format", choices=TABLE_FORMATS, default="csv")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_n", 1) < 1:
        parser.error("--max-n must be at least 1")
    try:
        return args.func(args)
    except (PsosetError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
