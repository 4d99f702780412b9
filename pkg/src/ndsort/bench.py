"""Population/ranking files, differential verification and the benchmark matrix."""

from __future__ import annotations

import csv
import logging
import re
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence, Union

from .baselines import ens_bs_rank, ens_ss_rank, fnds_rank
from .core import ComparisonTally, NDSortError, ObjectiveMatrix, ShapeMismatch, check_ranks
from .datagen import GenSpec
from .mnds import mnds_rank

log = logging.getLogger(__name__)

ALGORITHMS: dict[str, Callable[..., list[int]]] = {
    "mnds": mnds_rank,
    "fnds": fnds_rank,
    "ens-ss": ens_ss_rank,
    "ens-bs": ens_bs_rank,
}

BENCH_COLUMNS = ["algorithm", "dataset", "n", "m", "rep", "wall_time_ns", "comparisons", "fronts"]
SUMMARY_COLUMNS = ["algorithm", "dataset", "n", "m", "reps", "mean_ns", "median_ns", "comparisons", "fronts"]

_HEADER_RE = re.compile(r"#\s*n\s*=\s*(\d+)\s+m\s*=\s*(\d+)\s*$")


class ParseError(NDSortError, ValueError):
    def __init__(self, path, line: int, column: int, message: str):
        super().__init__(f"{path}:{line}:{column}: {message}")
        self.path = path
        self.line = line
        self.column = column


def get_algorithm(name: str) -> Callable[..., list[int]]:
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None


# -- files ---------------------------------------------------------------


def parse_population(path) -> ObjectiveMatrix:
    """Read a population file.

    One solution per line, comma-separated values; blank lines and lines
    starting with ``#`` are skipped. A ``# n=<int> m=<int>`` header, if
    present, is checked against the data. Solution ids are 0-based data
    line indices. Lines and columns in errors are 1-based.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    rows: list[list[float]] = []
    declared: tuple[int, int] | None = None
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            match = _HEADER_RE.match(stripped)
            if match:
                declared = int(match[1]), int(match[2])
            continue
        row = []
        for col, cell in enumerate(line.split(","), start=1):
            try:
                row.append(float(cell))
            except ValueError:
                raise ParseError(path, lineno, col, f"not a number: {cell.strip()!r}") from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(path, lineno, len(row), f"expected {width} values, found {len(row)}")
        rows.append(row)
    if declared is not None:
        n, m = declared
        if n != len(rows) or (rows and m != width):
            raise ShapeMismatch(f"{path}: header says n={n} m={m}, data is {len(rows)}x{width}")
        width = m
    return ObjectiveMatrix(rows, width if width is not None else 1)


def write_population(path, matrix: ObjectiveMatrix) -> None:
    lines = [f"# n={matrix.n} m={matrix.m}"]
    lines += [",".join(repr(v) for v in row) for row in matrix.rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_ranking(path, ranks: Sequence[int]) -> None:
    check_ranks(ranks, len(ranks))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "rank"])
        writer.writerows(enumerate(ranks))


def read_ranking(path) -> list[int]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["id", "rank"]:
            raise ParseError(path, 1, 1, f"expected header id,rank, got {header}")
        pairs = [(int(i), int(r)) for i, r in reader]
    ranks = [0] * len(pairs)
    for i, r in pairs:
        ranks[i] = r
    return ranks


# -- verification --------------------------------------------------------


@dataclass
class VerifyReport:
    algorithms: list[str]
    ranks: dict[str, list[int]]
    # id -> {algorithm: rank}, only for ids where some algorithm disagrees
    mismatches: dict[int, dict[str, int]] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return not self.mismatches

    def describe(self) -> str:
        if self.agree:
            return f"OK: {', '.join(self.algorithms)} agree on all {len(next(iter(self.ranks.values())))} solutions"
        lines = [f"MISMATCH on {len(self.mismatches)} solution(s):"]
        for i, by_algo in sorted(self.mismatches.items()):
            lines.append(f"  id {i}: " + " ".join(f"{a}={r}" for a, r in by_algo.items()))
        return "\n".join(lines)


def verify(matrix, algorithms: Sequence[str]) -> VerifyReport:
    if len(algorithms) < 2:
        raise ValueError("verification needs at least two algorithms")
    ranks = {name: get_algorithm(name)(matrix) for name in algorithms}
    report = VerifyReport(list(algorithms), ranks)
    columns = list(ranks.values())
    for i, values in enumerate(zip(*columns)):
        if len(set(values)) > 1:
            report.mismatches[i] = dict(zip(ranks, values))
    return report


# -- benchmark -----------------------------------------------------------

Dataset = Union[str, Path, GenSpec]


@dataclass
class BenchConfig:
    algorithms: list[str]
    datasets: list[Dataset]
    repetitions: int = 100
    warmup: int = 0
    output: Path | None = None
    parallel_cells: bool = False

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.warmup < 0:
            raise ValueError("warmup must be >= 0")
        if not self.algorithms or not self.datasets:
            raise ValueError("need at least one algorithm and one dataset")
        for name in self.algorithms:
            get_algorithm(name)


@dataclass
class BenchRecord:
    algorithm: str
    dataset: str
    n: int
    m: int
    rep: int
    wall_time_ns: int
    comparisons: int
    fronts: int
    error: str | None = None


def load_dataset(dataset: Dataset) -> tuple[str, ObjectiveMatrix]:
    if isinstance(dataset, GenSpec):
        return dataset.label, dataset.generate()
    path = Path(dataset)
    return path.stem, parse_population(path)


def run_cell(algorithm: str, dataset_id: str, matrix: ObjectiveMatrix, repetitions: int, warmup: int) -> list[BenchRecord]:
    """Warm up untimed, then time `repetitions` serial runs of one algorithm on one dataset."""
    sorter = get_algorithm(algorithm)
    try:
        for _ in range(warmup):
            sorter(matrix)
        records = []
        for rep in range(repetitions):
            tally = ComparisonTally()
            start = time.perf_counter_ns()
            ranks = sorter(matrix, tally)
            elapsed = time.perf_counter_ns() - start
            records.append(
                BenchRecord(algorithm, dataset_id, matrix.n, matrix.m, rep, elapsed, tally.count, max(ranks, default=0))
            )
        return records
    except Exception as exc:  # a failing cell must not sink the whole matrix
        log.error("cell %s on %s failed: %s", algorithm, dataset_id, exc)
        return [BenchRecord(algorithm, dataset_id, matrix.n, matrix.m, -1, -1, -1, -1, error=repr(exc))]


def run_benchmark(config: BenchConfig) -> list[BenchRecord]:
    """Run every (algorithm, dataset) cell; write outputs if ``config.output`` is set."""
    datasets = [load_dataset(d) for d in config.datasets]
    cells = [(a, name, matrix) for name, matrix in datasets for a in config.algorithms]
    if config.parallel_cells and len(cells) > 1:
        with ProcessPoolExecutor() as pool:
            futures = [pool.submit(run_cell, a, name, mat, config.repetitions, config.warmup) for a, name, mat in cells]
            chunks = [f.result() for f in futures]
    else:
        chunks = [run_cell(a, name, mat, config.repetitions, config.warmup) for a, name, mat in cells]
    records = [r for chunk in chunks for r in chunk]
    for r in records:
        if r.error is None and r.rep == 0:
            log.info("%s on %s: %d comparisons, %d fronts", r.algorithm, r.dataset, r.comparisons, r.fronts)
    if config.output is not None:
        write_outputs(config.output, records)
    return records


def summarize(records: Sequence[BenchRecord]) -> list[dict]:
    groups: dict[tuple[str, str], list[BenchRecord]] = {}
    for r in records:
        if r.error is None:
            groups.setdefault((r.algorithm, r.dataset), []).append(r)
    out = []
    for (algo, dataset), recs in groups.items():
        times = [r.wall_time_ns for r in recs]
        out.append({
            "algorithm": algo,
            "dataset": dataset,
            "n": recs[0].n,
            "m": recs[0].m,
            "reps": len(recs),
            "mean_ns": round(statistics.fmean(times)),
            "median_ns": round(statistics.median(times)),
            "comparisons": recs[0].comparisons,
            "fronts": recs[0].fronts,
        })
    return out


def write_outputs(path, records: Sequence[BenchRecord]) -> list[Path]:
    """Write the per-repetition CSV, a summary CSV and gnuplot data files.

    Data files hold mean and median milliseconds per algorithm, one file
    per fixed n (x axis: m) and one per fixed m (x axis: n).
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    written = [path]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(BENCH_COLUMNS)
        for r in records:
            if r.error is None:
                writer.writerow([getattr(r, c) for c in BENCH_COLUMNS])

    summary = summarize(records)
    summary_path = path.with_name(path.stem + ".summary.csv")
    with open(summary_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, SUMMARY_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(summary)
    written.append(summary_path)

    algorithms = list(dict.fromkeys(s["algorithm"] for s in summary))
    for fixed, axis in (("n", "m"), ("m", "n")):
        for value in sorted({s[fixed] for s in summary}):
            series = [s for s in summary if s[fixed] == value]
            xs = sorted({s[axis] for s in series})
            dat = path.with_name(f"{path.stem}.time_vs_{axis}.{fixed}{value}.dat")
            lines = [f"# time (ms) vs {axis} at {fixed}={value}",
                     "# " + " ".join([axis] + [f"{a}_mean {a}_median" for a in algorithms])]
            for x in xs:
                cols = [str(x)]
                for a in algorithms:
                    hits = [s for s in series if s[axis] == x and s["algorithm"] == a]
                    if hits:
                        cols += [f"{statistics.fmean(h['mean_ns'] for h in hits) / 1e6:.6f}",
                                 f"{statistics.fmean(h['median_ns'] for h in hits) / 1e6:.6f}"]
                    else:
                        cols += ["NaN", "NaN"]
                lines.append(" ".join(cols))
            dat.write_text("\n".join(lines) + "\n", encoding="utf-8")
            written.append(dat)
    return written


def read_bench_csv(path) -> list[BenchRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != BENCH_COLUMNS:
            raise ParseError(path, 1, 1, f"unexpected columns {reader.fieldnames}")
        return [
            BenchRecord(
                row["algorithm"], row["dataset"], int(row["n"]), int(row["m"]), int(row["rep"]),
                int(row["wall_time_ns"]), int(row["comparisons"]), int(row["fronts"]),
            )
            for row in reader
        ]
