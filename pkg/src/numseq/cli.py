"""Command-line surface: generate | oracle | analyze | evaluate | splitcheck.

Exit codes: 0 success, 2 bad arguments, 3 unsatisfiable generation
config, 4 no oracle for the task, 5 prediction/dataset shape mismatch,
6 split violations found.  NSP_SEED provides the default master seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import MissingMetadata, ShapeMismatch, UnknownKind, UnsatisfiableConfig
from .formats import (
    dataset_to_bytes,
    read_dataset,
    read_predictions,
    write_predictions,
)
from .harness import check_split, decode_prediction_set, error_rate, render_breakdown
from .logicwidth import complexity_search, estimate_width_growth
from .oracle import oracle_predictions
from .tasks import generate_dataset, get_task, task_names

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNSATISFIABLE = 3
EXIT_NO_ORACLE = 4
EXIT_SHAPE_MISMATCH = 5
EXIT_SPLIT_VIOLATIONS = 6


def _default_seed() -> int:
    return int(os.environ.get("NSP_SEED", "0"))


def _write_bytes(data: bytes, out: str | None) -> None:
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        get_task(args.task)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        dataset = generate_dataset(
            args.task,
            args.split,
            args.count,
            args.seed,
            n=args.n,
            l=args.l,
            s=args.s,
            base=args.base,
        )
    except UnsatisfiableConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSATISFIABLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write_bytes(dataset_to_bytes(dataset), args.out)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    dataset = read_dataset(args.dataset)
    try:
        preds = oracle_predictions(dataset)
    except UnknownKind as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_ORACLE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            write_predictions(preds, fh)
    else:
        write_predictions(preds, sys.stdout)
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    dataset = read_dataset(args.dataset)
    preds = read_predictions(args.predictions)
    if preds.dataset_ref != dataset.header.ref:
        print(
            f"warning: prediction file references {preds.dataset_ref!r}, "
            f"dataset is {dataset.header.ref!r}",
            file=sys.stderr,
        )
    alphabet = dataset.header.base + (2 if dataset.header.level == "digit" else 0)
    try:
        decoded = decode_prediction_set(preds, alphabet_size=alphabet)
        report = error_rate(decoded, dataset)
    except ShapeMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.missing_ids:
            print(f"missing ids: {exc.missing_ids[:20]}", file=sys.stderr)
        return EXIT_SHAPE_MISMATCH

    obj = report.to_json()
    print(f"task:        {dataset.header.task} ({dataset.header.level}-level)")
    print(f"instances:   {obj['instances']}")
    print(f"predictions: {obj['total']}  wrong: {obj['wrong']}")
    print(f"error rate:  {obj['error_rate']} = {obj['error_rate_decimal']}")
    if obj["leading_violations"]:
        print(f"leading-delimiter violations (uncounted): {obj['leading_violations']}")
    if args.breakdown:
        print("error positions (#):")
        print(render_breakdown(report, dataset.header))
    print(json.dumps(obj, separators=(",", ":")))
    return EXIT_OK


def cmd_splitcheck(args: argparse.Namespace) -> int:
    dataset = read_dataset(args.dataset)
    try:
        task = get_task(dataset.header.task)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        violations = check_split(dataset, task.train_split, task.val_split)
    except MissingMetadata as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"violations: {len(violations)}")
    for v in violations:
        where = "dataset" if v.instance_id is None else f"instance {v.instance_id}"
        print(f"  {where}: {v.message}")
    return EXIT_SPLIT_VIOLATIONS if violations else EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        coeffs = [int(c) for c in args.coeffs.split(",")]
    except ValueError:
        print("error: --coeffs must be a comma-separated integer list", file=sys.stderr)
        return EXIT_USAGE

    out: dict = {"coefficients": coeffs, "base": args.base}
    print(f"linear form: {coeffs} over base {args.base}")

    if args.bases:
        bases = [int(b) for b in args.bases.split(",")]
        growth = estimate_width_growth(coeffs, bases, include_carry_in=args.carry_in)
        out["width_counts"] = {str(b): growth.counts[b] for b in sorted(growth.counts)}
        out["slope"] = round(growth.slope, 4)
        print("width growth (exact minimized cover sizes):")
        for b in sorted(growth.counts):
            print(f"  base {b}: {growth.counts[b]} terms")
        print(f"  log-log slope: {growth.slope:.3f}")

    result = complexity_search(
        coeffs,
        max_functions=args.max_functions,
        base=args.base,
        compute_difficulty=not args.no_difficulty,
    )
    out["complexity"] = result.complexity
    out["chain_complexity"] = result.chain_complexity
    out["difficulty"] = result.difficulty
    out["plan"] = result.plan.to_json()
    out["plan_rendered"] = result.plan.render()
    print(f"complexity:  {result.complexity} (chain: {result.chain_complexity})")
    if result.difficulty is not None:
        print(f"difficulty:  {result.difficulty} (sum of member widths)")
    print(f"plan:        {result.plan.render()}")
    print(json.dumps(out, separators=(",", ":")))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="numseq",
        description="Number sequence prediction tasks: generation, oracles, analysis, scoring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a dataset file")
    g.add_argument("--task", required=True, help=f"one of: {', '.join(task_names())}")
    g.add_argument("--split", choices=("train", "val"), required=True)
    g.add_argument("--count", type=int, default=32)
    g.add_argument("--seed", type=int, default=None, help="master seed (default: NSP_SEED or 0)")
    g.add_argument("--n", type=int, default=None)
    g.add_argument("--l", type=int, default=None)
    g.add_argument("--s", type=int, default=None)
    g.add_argument("--base", type=int, default=None)
    g.add_argument("--out", default=None, help="output path (default: stdout)")
    g.set_defaults(func=cmd_generate)

    o = sub.add_parser("oracle", help="reference-machine predictions for a dataset")
    o.add_argument("dataset")
    o.add_argument("--out", default=None)
    o.set_defaults(func=cmd_oracle)

    e = sub.add_parser("evaluate", help="score a prediction file against its dataset")
    e.add_argument("dataset")
    e.add_argument("predictions")
    e.add_argument("--breakdown", action="store_true", help="show per-position error map")
    e.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("splitcheck", help="verify split hygiene of a dataset")
    s.add_argument("dataset")
    s.set_defaults(func=cmd_splitcheck)

    a = sub.add_parser("analyze", help="width growth and complexity of a linear form")
    a.add_argument("--coeffs", required=True, help="comma-separated, e.g. 2,-1,1")
    a.add_argument("--bases", default=None, help="bases for the width-growth fit, e.g. 2,3,4,5")
    a.add_argument("--base", type=int, default=10, help="base for difficulty widths")
    a.add_argument("--max-functions", type=int, default=4)
    a.add_argument("--no-difficulty", action="store_true")
    a.add_argument("--carry-in", action="store_true", help="include carry-in bits in width tables")
    a.set_defaults(func=cmd_analyze)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is None and args.command == "generate":
        args.seed = _default_seed()
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
