"""Command-line front end.

Exit codes: 0 ok, 1 bad input or flags, 2 inconsistent table,
3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from . import render
from .algorithms import ALGORITHMS, PruneMode, run_algorithm
from .bench import GenParams, compare, gen_table
from .decision_table import (
    ConflictError,
    DecisionTable,
    NotMergedError,
    TableError,
    drop_conflicts,
    find_conflicts,
    merge_indiscernible,
    parse_table,
)
from .rules import RuleSet, validate_ruleset
from .subset_tree import build_tree, preorder

EXIT_OK, EXIT_INPUT, EXIT_CONFLICT, EXIT_INTERNAL = 0, 1, 2, 3


class InvariantError(RuntimeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", "-i", default="-", help="CSV file, '-' for standard input")
    p.add_argument("--decision", default="last", help="decision column name (default: last column)")
    p.add_argument("--id-column", default=None, help="column holding object labels")
    p.add_argument("--drop-conflicts", action="store_true", help="discard conflicting rows instead of failing")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rulereducts", description="Rough-set rule reduct generation (RG, MRG, PRG).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="generate rules from a decision table")
    _add_input(run)
    run.add_argument("--algo", choices=ALGORITHMS, default="prg")
    run.add_argument("--prune-mode", choices=[m.value for m in PruneMode], default="superset")
    run.add_argument("--format", choices=["text", "json", "csv"], default="text")
    run.add_argument("--trace", action="store_true", help="include the per-object search trace")
    run.add_argument("--auto-merge", action="store_true", help="merge indiscernible rows before running")

    merge = sub.add_parser("merge", help="collapse indiscernible rows, write CSV")
    _add_input(merge)

    check = sub.add_parser("check", help="report conflicting rows")
    _add_input(check)

    gen = sub.add_parser("gen", help="write a seeded random table as CSV")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--rows", type=int, default=20)
    gen.add_argument("--features", type=int, default=4)
    gen.add_argument("--values", type=int, default=3)
    gen.add_argument("--classes", type=int, default=2)
    gen.add_argument("--raw", action="store_true", help="draw decisions per row; may be inconsistent")

    cmp_ = sub.add_parser("compare", help="run several algorithms and compare them")
    _add_input(cmp_)
    cmp_.add_argument("--algo", action="append", choices=[*ALGORITHMS, "prg-literal", "prg-superset"],
                      help="repeatable; default rg, mrg, prg, oracle")
    cmp_.add_argument("--prune-mode", choices=[m.value for m in PruneMode], default="superset")
    cmp_.add_argument("--format", choices=["text", "json", "csv"], default="text")
    cmp_.add_argument("--auto-merge", action="store_true")

    tree = sub.add_parser("tree-dump", help="list the subset tree in pre-order")
    tree.add_argument("-m", "--features", type=int, default=None)
    tree.add_argument("--input", "-i", default=None, help="take feature names from this CSV")
    tree.add_argument("--decision", default="last")
    tree.add_argument("--id-column", default=None)
    return parser


def _read(args: argparse.Namespace, stdin: TextIO) -> DecisionTable:
    if args.input in (None, "-"):
        text = stdin.read()
    else:
        with open(args.input, encoding="utf-8", newline="") as fh:
            text = fh.read()
    return parse_table(text, args.decision, args.id_column)


def _prepare(table: DecisionTable, args: argparse.Namespace) -> DecisionTable:
    if getattr(args, "drop_conflicts", False):
        table = drop_conflicts(table)
    if table.is_distinct:
        return table
    if getattr(args, "auto_merge", False):
        return merge_indiscernible(table)
    report = find_conflicts(table)
    if report:
        raise ConflictError(report)
    raise NotMergedError("table has indiscernible rows; run 'merge' first or pass --auto-merge")


def format_output(table: DecisionTable, result: RuleSet, fmt: str = "text") -> str:
    if fmt == "json":
        return render.ruleset_to_json(table, result) + "\n"
    if fmt == "csv":
        return render.ruleset_to_csv(table, result)
    return render.ruleset_to_text(table, result)


def _cmd_run(args, stdin, out, err) -> int:
    table = _prepare(_read(args, stdin), args)
    ruleset, stats = run_algorithm(args.algo, table, args.prune_mode, trace=args.trace)
    coverage = validate_ruleset(table, ruleset)
    if not coverage.consistent:
        raise InvariantError(f"{args.algo} produced a rule contradicting objects {[i for i, a in enumerate(coverage.agrees) if not a]}")
    if args.format == "json":
        trace = render.trace_to_dict(table, stats) if args.trace else None
        out.write(render.ruleset_to_json(table, ruleset, trace) + "\n")
    else:
        out.write(format_output(table, ruleset, args.format))
        if args.trace and args.format == "text":
            out.write("\n" + render.trace_to_text(table, stats))
        elif args.trace:
            err.write(render.trace_to_text(table, stats))
    return EXIT_OK


def _cmd_merge(args, stdin, out, err) -> int:
    table = _read(args, stdin)
    if args.drop_conflicts:
        table = drop_conflicts(table)
    out.write(merge_indiscernible(table).to_csv())
    return EXIT_OK


def _cmd_check(args, stdin, out, err) -> int:
    table = _read(args, stdin)
    report = find_conflicts(table)
    if not report:
        distinct = len(set(table.rows))
        out.write(f"consistent: {table.n} rows, {distinct} distinct feature vectors\n")
        return EXIT_OK
    out.write(f"inconsistent: {len(report.groups)} conflicting group(s)\n")
    for group in report.groups:
        members = sorted(group)
        out.write("  rows " + ", ".join(table.row_label(i) for i in members) + ": decisions "
                  + ", ".join(table.decision_names[table.decisions[i]] for i in members) + "\n")
    return EXIT_CONFLICT


def _cmd_gen(args, stdin, out, err) -> int:
    try:
        params = GenParams(args.rows, args.features, args.values, args.classes, args.seed, not args.raw)
    except ValueError as exc:
        raise TableError(f"gen: {exc}") from None
    out.write(gen_table(params).to_csv())
    return EXIT_OK


def _cmd_compare(args, stdin, out, err) -> int:
    table = _prepare(_read(args, stdin), args)
    report = compare(table, args.algo or ["rg", "mrg", "prg", "oracle"], args.prune_mode)
    if args.format == "json":
        out.write(report.to_json() + "\n")
    elif args.format == "csv":
        out.write(report.to_csv())
    else:
        out.write(report.to_text())
    return EXIT_OK


def _cmd_tree_dump(args, stdin, out, err) -> int:
    if args.input is not None:
        names = _read(args, stdin).feature_names
    elif args.features is not None:
        names = tuple(f"F{k + 1}" for k in range(args.features))
    else:
        raise TableError("tree-dump needs -m/--features or --input")
    try:
        tree = build_tree(len(names))
    except ValueError as exc:
        raise TableError(f"-m: {exc}") from None
    for subset in preorder(tree):
        out.write(",".join(names[k] for k in subset) + "\n")
    return EXIT_OK


COMMANDS = {
    "run": _cmd_run,
    "merge": _cmd_merge,
    "check": _cmd_check,
    "gen": _cmd_gen,
    "compare": _cmd_compare,
    "tree-dump": _cmd_tree_dump,
}


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None,
         stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, stdin, out, err)
    except ConflictError as exc:
        err.write(f"error: {exc}; pass --drop-conflicts to discard them\n")
        return EXIT_CONFLICT
    except (TableError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (InvariantError, AssertionError) as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
