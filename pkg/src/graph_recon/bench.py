"""Benchmark sweeps, CSV output and scaling-exponent fits."""

import asyncio
import csv
import logging
import math
import re
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, Iterable, List, Optional, TextIO, Tuple, Union

import numpy as np

from .errors import ArgumentError, IncorrectReconstructionError, InsufficientDataError
from .generators import generate
from .graph_types import GenSpec
from .recon_manager import ReconstructionManager
from .recon_types import BenchConfig, BenchRecord, FitResult, ReconAlgorithm
from .rng import derive_seed

logger = logging.getLogger(__name__)

CSV_HEADER = [
    "algo", "n", "delta", "seed", "f", "queries_distinct",
    "queries_raw", "correct", "worst_ratio", "wall_ms",
]

MIN_FIT_SIZES = 3

_CONST_RULE = re.compile(r"^const:(\S+)$")
_DIV_RULE = re.compile(r"^n/(\S+)$")


def parse_f_rule(rule: str, n: int) -> float:
    """Evaluate an f-rule (``const:<k>``, ``sqrt``, ``n/<k>`` or a number) at n.

    Raises:
        ArgumentError: unknown rule or a value below 1.
    """
    text = rule.strip()
    try:
        if text == "sqrt":
            f = math.sqrt(n)
        elif match := _CONST_RULE.match(text):
            f = float(match.group(1))
        elif match := _DIV_RULE.match(text):
            f = n / float(match.group(1))
        else:
            f = float(text)
    except (ValueError, ZeroDivisionError):
        raise ArgumentError(f"unrecognized f rule {rule!r}")
    if not f >= 1:
        raise ArgumentError(f"f rule {rule!r} gives f={f} < 1 at n={n}")
    return f


def run_bench_row(config: BenchConfig, n: int, rep: int) -> BenchRecord:
    """Generate one instance and reconstruct it. Runs inside worker processes.

    Raises:
        IncorrectReconstructionError: an exact algorithm got the edges wrong.
    """
    seed = derive_seed(config.master_seed, n, rep)
    graph = generate(GenSpec(kind=config.instance_kind(), n=n, delta=config.delta, seed=seed))
    manager = ReconstructionManager()

    started = time.perf_counter()
    if config.algo == ReconAlgorithm.APPROX:
        f = parse_f_rule(config.f_rule, n)
        report = manager.approximate(graph, f, seed)
        correct, worst = report.ok, report.worst_ratio
    else:
        overrides = {
            ReconAlgorithm.BOUNDED: config.center.model_dump(),
            ReconAlgorithm.OUTERPLANAR: config.partition.model_dump(),
        }.get(config.algo)
        report = manager.reconstruct(graph, config.algo, seed, overrides)
        if not report.correct:
            raise IncorrectReconstructionError(
                f"{config.algo.value} missed {report.missing_edges} and added "
                f"{report.extra_edges} edges at n={n} rep={rep} seed={seed}",
                seed=seed,
            )
        f, correct, worst = None, True, None
    wall_ms = (time.perf_counter() - started) * 1000

    return BenchRecord(
        algo=config.algo,
        n=n,
        delta=config.delta,
        seed=seed,
        f=f,
        queries_distinct=report.stats.distinct_count,
        queries_raw=report.stats.raw_count,
        correct=correct,
        worst_ratio=worst,
        wall_ms=wall_ms,
        rep=rep,
    )


class BenchRunner:
    """Runs the (n, rep) grid of a BenchConfig with bounded concurrency."""

    def __init__(self, config: BenchConfig, workers: Optional[int] = None):
        self.config = config
        self.workers = workers or config.workers
        self._semaphore: Optional[asyncio.Semaphore] = None

    def jobs(self) -> List[Tuple[int, int]]:
        return [(n, rep) for n in self.config.n_values for rep in range(self.config.reps)]

    async def _run_with_semaphore(self, loop, executor, n: int, rep: int) -> BenchRecord:
        async with self._semaphore:
            return await loop.run_in_executor(executor, run_bench_row, self.config, n, rep)

    async def run(self) -> List[BenchRecord]:
        """Run every row; rows come back sorted by (n, rep).

        The first failing row in (n, rep) order is re-raised once all rows
        have finished.
        """
        jobs = self.jobs()
        self._semaphore = asyncio.Semaphore(self.workers)
        loop = asyncio.get_running_loop()
        executor = ProcessPoolExecutor(max_workers=self.workers) if self.workers > 1 else None
        logger.info("bench %s: %d rows on %d workers", self.config.algo.value, len(jobs), self.workers)
        try:
            results = await asyncio.gather(
                *(self._run_with_semaphore(loop, executor, n, rep) for n, rep in jobs),
                return_exceptions=True,
            )
        finally:
            if executor is not None:
                executor.shutdown()

        records = []
        for (n, rep), result in sorted(zip(jobs, results), key=lambda item: item[0]):
            if isinstance(result, BaseException):
                raise result
            records.append(result)
        return records

    def run_sync(self) -> List[BenchRecord]:
        return asyncio.run(self.run())


def _csv_row(record: BenchRecord) -> Dict[str, str]:
    return {
        "algo": record.algo.value,
        "n": str(record.n),
        "delta": str(record.delta),
        "seed": str(record.seed),
        "f": "" if record.f is None else repr(record.f),
        "queries_distinct": str(record.queries_distinct),
        "queries_raw": str(record.queries_raw),
        "correct": "true" if record.correct else "false",
        "worst_ratio": "" if record.worst_ratio is None else repr(record.worst_ratio),
        "wall_ms": f"{record.wall_ms:.3f}",
    }


def write_csv(records: Iterable[BenchRecord], out: Union[str, Path, TextIO]) -> None:
    """Write rows under the fixed header."""
    if isinstance(out, (str, Path)):
        with open(out, "w", newline="") as fh:
            write_csv(records, fh)
        return
    writer = csv.DictWriter(out, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow(_csv_row(record))


def read_csv(path: Union[str, Path]) -> List[Dict[str, str]]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or not set(CSV_HEADER) <= set(reader.fieldnames):
                raise InsufficientDataError(f"{path} does not have the benchmark header")
            return list(reader)
    except OSError as e:
        raise InsufficientDataError(f"cannot read {path}: {e}")
    except (UnicodeDecodeError, csv.Error) as e:
        raise InsufficientDataError(f"{path} is not a readable CSV: {e}")


def fit_rows(rows: Iterable[Dict[str, str]], algo: Optional[ReconAlgorithm] = None) -> FitResult:
    """Least-squares slope of log2(median queries_distinct) against log2(n).

    Raises:
        InsufficientDataError: fewer than three distinct n values, or a row
            whose n or queries_distinct is not an integer.
    """
    by_n: Dict[int, List[int]] = defaultdict(list)
    for row in rows:
        if algo is not None and row["algo"] != algo.value:
            continue
        try:
            n, queries = int(row["n"]), int(row["queries_distinct"])
        except (TypeError, ValueError):
            raise InsufficientDataError(
                f"non-integer n or queries_distinct in row {row!r}"
            )
        by_n[n].append(queries)
    if len(by_n) < MIN_FIT_SIZES:
        raise InsufficientDataError(
            f"need at least {MIN_FIT_SIZES} distinct n values, got {len(by_n)}"
        )

    ns = sorted(by_n)
    medians = [float(np.median(by_n[n])) for n in ns]
    if min(medians) <= 0:
        raise InsufficientDataError("median query count must be positive to fit in log space")
    slope, intercept = np.polyfit(np.log2(ns), np.log2(medians), 1)
    return FitResult(
        algo=algo,
        slope=float(slope),
        intercept=float(intercept),
        n_values=ns,
        medians=medians,
        sample_sizes=[len(by_n[n]) for n in ns],
    )


def fit_csv(path: Union[str, Path], algo: Optional[ReconAlgorithm] = None) -> FitResult:
    return fit_rows(read_csv(path), algo)
