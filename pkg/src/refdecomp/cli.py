"""Command-line interface.

Subcommands: decompose, eval, generate, check-equivalence, catalog.
Exit codes: 0 success, 2 usage or parse errors (and empty corpora),
3 equivalence counterexample found.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .catalog import DETECTOR, list_rules
from .corpus import CorpusError, eval_corpus, generate_corpus, write_seed_methods
from .decomposer import ALL_TIERS, DecompositionConfig, decompose_pair
from .equivalence import check_equivalent
from .minij import LexError, MiniJTypeError, ParseError, parse_method

USAGE_ERROR = 2
COUNTEREXAMPLE = 3


def _default_seed() -> int:
    try:
        return int(os.environ.get("REFDECOMP_SEED", "0"))
    except ValueError:
        return 0


def _read_method(path: str):
    try:
        return parse_method(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise SystemExit(f"refdecomp: {path}: no such file") from None
    except (ParseError, LexError, MiniJTypeError) as exc:
        print(f"refdecomp: {path}: {exc}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR) from None


def _tiers(value: str) -> frozenset[str]:
    if value == "detector":
        return frozenset({DETECTOR})
    if value == "all":
        return ALL_TIERS
    raise argparse.ArgumentTypeError("tiers must be 'detector' or 'all'")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refdecomp",
        description="Decompose the diff between two equivalent methods into "
        "verified behavior-preserving rewrites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose one pair and print a JSON report")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--tiers", type=_tiers, default=ALL_TIERS, help="detector|all")
    p.add_argument("--beam", type=int, default=1, metavar="W")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--emit-snapshots", action="store_true")
    p.add_argument("--precheck", action="store_true")
    p.add_argument("--pair-id", default=None)

    p = sub.add_parser("eval", help="evaluate a corpus directory")
    p.add_argument("corpus")
    p.add_argument("--out", required=True)
    p.add_argument(
        "--tiers",
        default="all",
        help="comma list of tier configurations to run (detector,all)",
    )
    p.add_argument("--beam", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("generate", help="generate a scrambled ground-truth corpus")
    p.add_argument("seeds")
    p.add_argument("out")
    p.add_argument("--pairs", type=int, default=50)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tiers", type=_tiers, default=ALL_TIERS)
    p.add_argument(
        "--synth-seeds",
        type=int,
        default=0,
        metavar="N",
        help="first synthesize N random seed methods into SEEDS",
    )

    p = sub.add_parser("check-equivalence", help="differential-test two methods")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("catalog", help="catalog inspection")
    catalog_sub = p.add_subparsers(dest="catalog_command", required=True)
    catalog_sub.add_parser("list", help="one rule per line: id, tier, name, invertible")

    return parser


def _cmd_decompose(args) -> int:
    left = _read_method(args.left)
    right = _read_method(args.right)
    seed = args.seed if args.seed is not None else _default_seed()
    config = DecompositionConfig(
        tiers=args.tiers,
        beam_width=max(1, args.beam),
        verify=not args.no_verify,
        samples=args.samples,
        seed=seed,
        precheck=args.precheck,
    )
    pair_id = args.pair_id or f"{Path(args.left).stem}__{Path(args.right).stem}"
    trace = decompose_pair(left, right, config, pair_id=pair_id)
    report = trace.to_report(emit_snapshots=args.emit_snapshots)
    print(json.dumps(report, indent=1, sort_keys=True))
    return 0


def _cmd_eval(args) -> int:
    tier_configs = tuple(t.strip() for t in args.tiers.split(",") if t.strip())
    for t in tier_configs:
        if t not in ("detector", "all"):
            print(f"refdecomp: unknown tier configuration {t!r}", file=sys.stderr)
            return USAGE_ERROR
    seed = args.seed if args.seed is not None else _default_seed()
    config = DecompositionConfig(
        beam_width=max(1, args.beam),
        verify=not args.no_verify,
        samples=args.samples,
        seed=seed,
        emit_snapshots=False,
    )
    try:
        summary = eval_corpus(
            args.corpus, args.out, tier_configs, config, workers=max(1, args.workers)
        )
    except CorpusError as exc:
        print(f"refdecomp: {exc}", file=sys.stderr)
        return USAGE_ERROR
    print(json.dumps(summary.aggregates, indent=1, sort_keys=True))
    return 0


def _cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.synth_seeds > 0:
        write_seed_methods(args.seeds, args.synth_seeds, seed)
    try:
        records = generate_corpus(
            args.seeds, args.out, args.pairs, args.k_max, seed, tiers=args.tiers
        )
    except CorpusError as exc:
        print(f"refdecomp: {exc}", file=sys.stderr)
        return USAGE_ERROR
    print(f"wrote {len(records)} pairs to {args.out}")
    return 0


def _cmd_check(args) -> int:
    left = _read_method(args.left)
    right = _read_method(args.right)
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        verdict = check_equivalent(left, right, n=args.samples, seed=seed)
    except Exception as exc:
        print(f"refdecomp: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if verdict.consistent:
        print(f"consistent over {args.samples} sampled inputs")
        return 0
    print("counterexample found:")
    print(f"  input:  {verdict.input!r}")
    print(f"  left:   {verdict.outcome_a!r}")
    print(f"  right:  {verdict.outcome_b!r}")
    return COUNTEREXAMPLE


def _cmd_catalog(args) -> int:
    for rule in list_rules():
        invertible = "yes" if rule.invertible else "no"
        print(f"{rule.id}\t{rule.tier}\t{rule.name}\t{invertible}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "decompose": _cmd_decompose,
        "eval": _cmd_eval,
        "generate": _cmd_generate,
        "check-equivalence": _cmd_check,
        "catalog": _cmd_catalog,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
