"""Random-matrix stream benchmark: heuristic vs exact, pruned vs unpruned.

Each record draws one matrix from the seeded stream, runs the analysis
phase, the full search with and without pruning, and the exhaustive
oracle, then compares.  The pass criterion of a stream is that the pruned
search returns exactly the oracle's minimal test set on every record.

CSV schema (one line per record):

    seed,m,n,density,mandatory_count,heuristic_t0,exact_t0,n_minimal_tests,
    subsets_pruned,subsets_total,ms_analyze,ms_search,ms_oracle

subsets_total is the number of subsets the unpruned search examined,
subsets_pruned is how many of those the pruned search avoided.  Under
deterministic mode the ms_* columns are written as 0.000 and the optional
timestamp comment is suppressed, so reruns are byte-identical.
"""

from __future__ import annotations

import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .generate import GenerationError, GeneratorConfig, derive_seeds, generate_matrix
from .heuristic import column_pair_stats, estimate_length, union_pair_stats
from .matrix import BooleanMatrix
from .mandatory import class_views, find_mandatory, partition_by_mandatory
from .oracle import OracleCeilingError, oracle_minimal_tests
from .search import SearchConfig, enumerate_minimal_tests

CSV_COLUMNS = (
    "seed",
    "m",
    "n",
    "density",
    "mandatory_count",
    "heuristic_t0",
    "exact_t0",
    "n_minimal_tests",
    "subsets_pruned",
    "subsets_total",
    "ms_analyze",
    "ms_search",
    "ms_oracle",
)


@dataclass(frozen=True)
class StreamConfig:
    count: int
    rows: tuple[int, ...] = (10,)
    cols: tuple[int, ...] = (8,)
    densities: tuple[float, ...] = (0.3, 0.5, 0.7)
    seed: int = 0
    deterministic: bool = False
    oracle_ceiling: int = 22
    workers: int = 1


@dataclass(frozen=True)
class ExperimentRecord:
    index: int
    seed: int
    m: int
    n: int
    density: float
    mandatory_count: int = 0
    heuristic_t0: int = 0
    exact_t0: int | None = None
    minimal_test_count: int = 0
    subsets_checked_with: int = 0
    subsets_checked_without: int = 0
    ms_analyze: float = 0.0
    ms_search: float = 0.0
    ms_oracle: float = 0.0
    mismatch: bool = False
    error: str | None = None

    @property
    def subsets_total(self) -> int:
        return self.subsets_checked_without

    @property
    def subsets_pruned(self) -> int:
        return self.subsets_checked_without - self.subsets_checked_with


@dataclass(frozen=True)
class BenchResult:
    records: tuple[ExperimentRecord, ...]
    mismatches: int
    failures: int

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


_PRUNED = SearchConfig()
_UNPRUNED = SearchConfig(seed_prune=False, pair_prune=False)


def bench_matrix(
    matrix: BooleanMatrix,
    index: int = 0,
    seed: int = 0,
    density: float = 0.0,
    oracle_ceiling: int = 22,
) -> ExperimentRecord:
    """One benchmark record for an already-built matrix."""
    t0 = time.perf_counter()
    mandatory = find_mandatory(matrix)
    partition = partition_by_mandatory(matrix, mandatory.columns)
    if partition.classes:
        local = estimate_length(union_pair_stats(class_views(matrix, partition)))
        heuristic_t0 = len(mandatory.columns) + local.t0
    else:
        heuristic_t0 = len(mandatory.columns)
    column_pair_stats(matrix)
    t1 = time.perf_counter()
    report = enumerate_minimal_tests(matrix, _PRUNED)
    t2 = time.perf_counter()
    bare = enumerate_minimal_tests(matrix, _UNPRUNED)
    t3 = time.perf_counter()
    exact_t0: int | None = None
    mismatch = bare.minimal_tests != report.minimal_tests
    ms_oracle = 0.0
    if matrix.col_count <= oracle_ceiling:
        t4 = time.perf_counter()
        oracle = oracle_minimal_tests(matrix, n_ceiling=oracle_ceiling)
        ms_oracle = (time.perf_counter() - t4) * 1000.0
        exact_t0 = oracle.min_length
        mismatch = mismatch or oracle.minimal_tests != report.minimal_tests
    return ExperimentRecord(
        index=index,
        seed=seed,
        m=matrix.row_count,
        n=matrix.col_count,
        density=density,
        mandatory_count=len(mandatory.columns),
        heuristic_t0=heuristic_t0,
        exact_t0=exact_t0,
        minimal_test_count=len(report.minimal_tests),
        subsets_checked_with=report.stats.subsets_checked,
        subsets_checked_without=bare.stats.subsets_checked,
        ms_analyze=(t1 - t0) * 1000.0,
        ms_search=(t2 - t1) * 1000.0,
        ms_oracle=ms_oracle,
        mismatch=mismatch,
    )


def _run_one(args: tuple[int, int, int, int, float, int]) -> ExperimentRecord:
    index, seed, m, n, density, ceiling = args
    try:
        matrix = generate_matrix(
            GeneratorConfig(rows=m, cols=n, ones_density=density, seed=seed)
        )
    except GenerationError as exc:
        return ExperimentRecord(
            index=index, seed=seed, m=m, n=n, density=density, error=str(exc)
        )
    try:
        return bench_matrix(
            matrix, index=index, seed=seed, density=density, oracle_ceiling=ceiling
        )
    except OracleCeilingError as exc:  # pragma: no cover - guarded by caller
        return ExperimentRecord(
            index=index, seed=seed, m=m, n=n, density=density, error=str(exc)
        )


def run_benchmark(config: StreamConfig) -> BenchResult:
    """Run the stream; individual record failures are recorded, not raised."""
    grid = [
        (m, n, d)
        for m in config.rows
        for n in config.cols
        for d in config.densities
    ]
    if not grid:
        raise ValueError("empty parameter grid")
    seeds = derive_seeds(config.seed, config.count)
    jobs = []
    for i in range(config.count):
        m, n, d = grid[i % len(grid)]
        jobs.append((i, seeds[i], m, n, d, config.oracle_ceiling))
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_run_one, jobs))
    else:
        records = [_run_one(j) for j in jobs]
    records.sort(key=lambda r: r.index)
    if config.deterministic:
        records = [
            replace(r, ms_analyze=0.0, ms_search=0.0, ms_oracle=0.0) for r in records
        ]
    return BenchResult(
        records=tuple(records),
        mismatches=sum(1 for r in records if r.mismatch),
        failures=sum(1 for r in records if r.error),
    )


def format_density(value: float) -> str:
    return f"{value:g}"


def write_csv(result: BenchResult, stream: io.TextIOBase, deterministic: bool) -> None:
    """Write the record table; errors become comment lines."""
    if not deterministic:
        stream.write(f"# generated {time.strftime('%Y-%m-%dT%H:%M:%S')}\n")
    stream.write(",".join(CSV_COLUMNS) + "\n")
    for r in result.records:
        if r.error:
            stream.write(f"# record {r.index} failed: {r.error}\n")
            continue
        fields = (
            str(r.seed),
            str(r.m),
            str(r.n),
            format_density(r.density),
            str(r.mandatory_count),
            str(r.heuristic_t0),
            "" if r.exact_t0 is None else str(r.exact_t0),
            str(r.minimal_test_count),
            str(r.subsets_pruned),
            str(r.subsets_total),
            f"{r.ms_analyze:.3f}",
            f"{r.ms_search:.3f}",
            f"{r.ms_oracle:.3f}",
        )
        stream.write(",".join(fields) + "\n")


def csv_text(result: BenchResult, deterministic: bool) -> str:
    buf = io.StringIO()
    write_csv(result, buf, deterministic)
    return buf.getvalue()


def summarize(result: BenchResult) -> dict:
    """Aggregate summary: heuristic error histogram and pruning speedup."""
    errors: dict[int, int] = {}
    speedups: list[float] = []
    for r in result.records:
        if r.error or r.exact_t0 is None:
            continue
        err = r.heuristic_t0 - r.exact_t0
        errors[err] = errors.get(err, 0) + 1
        if r.subsets_checked_with:
            speedups.append(r.subsets_checked_without / r.subsets_checked_with)
    return {
        "records": len(result.records),
        "failures": result.failures,
        "mismatches": result.mismatches,
        "heuristic_error_histogram": {str(k): errors[k] for k in sorted(errors)},
        "mean_subset_ratio": (
            round(sum(speedups) / len(speedups), 3) if speedups else None
        ),
    }
