"""``ndsort`` command line: gen, rank, verify, bench.

Exit codes: 0 success, 2 verification mismatch, 3 input error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .bench import ALGORITHMS, BenchConfig, get_algorithm, parse_population, run_benchmark, summarize, verify, write_population, write_ranking
from .core import ComparisonTally, NDSortError
from .datagen import GenSpec

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_INPUT = 3

SEED_ENV = "NDSORT_SEED"


def _algo_list(text: str) -> list[str]:
    names = [a.strip() for a in text.split(",") if a.strip()]
    for name in names:
        if name not in ALGORITHMS:
            raise argparse.ArgumentTypeError(f"unknown algorithm {name!r}")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ndsort", description="Non-dominated sorting tools.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a synthetic population")
    gen.add_argument("--kind", choices=["uniform", "shells", "degenerate"], required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0, help=f"overridden by ${SEED_ENV}")
    gen.add_argument("--k-fronts", type=int)
    gen.add_argument("--dup-fraction", type=float)
    gen.add_argument("--quant-levels", type=int)
    gen.add_argument("--out", type=Path, required=True)

    rank = sub.add_parser("rank", help="rank a population file")
    rank.add_argument("--algo", choices=list(ALGORITHMS), default="mnds")
    rank.add_argument("--in", dest="inp", type=Path, required=True)
    rank.add_argument("--out", type=Path, required=True)
    rank.add_argument("--count-comparisons", action="store_true")

    ver = sub.add_parser("verify", help="check that algorithms agree on a population")
    ver.add_argument("--in", dest="inp", type=Path, required=True)
    ver.add_argument("--algos", type=_algo_list, default=["mnds", "fnds"])

    bench = sub.add_parser("bench", help="time algorithms over datasets")
    bench.add_argument("--algos", type=_algo_list, required=True)
    bench.add_argument("--in", dest="inp", type=Path, nargs="*", default=[])
    bench.add_argument("--gen", action="append", default=[], metavar="SPEC",
                       help="inline dataset, e.g. uniform:n=800,m=10,seed=1 (repeatable)")
    bench.add_argument("--reps", type=int, default=100)
    bench.add_argument("--warmup", type=int, default=0)
    bench.add_argument("--parallel", action="store_true")
    bench.add_argument("--out", type=Path, required=True)
    return parser


def _cmd_gen(args) -> int:
    seed = args.seed
    if os.environ.get(SEED_ENV):
        seed = int(os.environ[SEED_ENV])
    spec = GenSpec(
        kind=args.kind, n=args.n, m=args.m, seed=seed,
        k_fronts=args.k_fronts, dup_fraction=args.dup_fraction, quant_levels=args.quant_levels,
    )
    write_population(args.out, spec.generate())
    return EXIT_OK


def _cmd_rank(args) -> int:
    matrix = parse_population(args.inp)
    tally = ComparisonTally()
    ranks = get_algorithm(args.algo)(matrix, tally)
    write_ranking(args.out, ranks)
    if args.count_comparisons:
        print(f"comparisons: {tally.count}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = verify(parse_population(args.inp), args.algos)
    print(report.describe())
    return EXIT_OK if report.agree else EXIT_MISMATCH


def _cmd_bench(args) -> int:
    datasets = list(args.inp) + [GenSpec.parse(s) for s in args.gen]
    config = BenchConfig(
        algorithms=args.algos, datasets=datasets, repetitions=args.reps,
        warmup=args.warmup, output=args.out, parallel_cells=args.parallel,
    )
    records = run_benchmark(config)
    for row in summarize(records):
        print(f"{row['algorithm']:>7} {row['dataset']:<32} mean {row['mean_ns'] / 1e6:10.3f} ms"
              f"  median {row['median_ns'] / 1e6:10.3f} ms  comparisons {row['comparisons']}")
    return EXIT_OK


_COMMANDS = {"gen": _cmd_gen, "rank": _cmd_rank, "verify": _cmd_verify, "bench": _cmd_bench}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (NDSortError, ValueError, OSError) as exc:
        print(f"ndsort: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
