"""End-to-end minimal-test enumeration with exact length correction.

The pipeline: sort rows, find the mandatory columns, partition the rows
into classes, estimate the local test length, then enumerate local column
subsets of that size.  The estimate only picks the starting size; the loop
holds a certificate before it ever accepts:

* a size L is accepted only when at least one local test of size L exists
  and an exhaustive sweep shows no local test of size L-1 exists (sizes
  below an already-refuted watermark are not re-swept);
* any test found that is not dead-end proves a shorter test exists; its
  dead-end reduction tells the loop where to jump.

Pruning never changes the outcome.  Multiplicity seeds only skip subsets
that are provably non-tests.  Subsets skipped for containing a paired
column can be tests, but only non-dead-end ones, and whether such a test
exists is decided by the same (L-1) sweep; the downward jump target is
always taken from the first non-dead-end test in plain subset order,
scanned without pruning, so every pruning configuration walks the same
sequence of sizes and reports identical results.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable

from .heuristic import (
    HeuristicEstimate,
    column_pair_stats,
    estimate_length,
    integral_length,
    union_pair_stats,
)
from .mandatory import (
    ClassSet,
    Partition,
    class_views,
    find_mandatory,
    partition_by_mandatory,
)
from .matrix import (
    BooleanMatrix,
    ColumnSet,
    RowPair,
    is_test,
    normalize_columns,
    sort_rows_by_binary_value,
)
from .oracle import OracleCeilingError, oracle_minimal_tests
from .pruning import (
    CycleCost,
    all_k_subsets_fail,
    cycle_costs,
    first_collision,
    iter_subsets_colex,
    multiplicity_seeds,
    paired_view_columns,
)


class SearchCeilingError(RuntimeError):
    """Exhaustive search refused: too many columns without the heuristic."""


@dataclass(frozen=True)
class SearchConfig:
    """Knobs of the enumeration; defaults give the full pruned search."""

    use_heuristic: bool = True
    seed_prune: bool = True
    pair_prune: bool = True
    first_only: bool = False
    initial_length: int | None = None
    union_classes: tuple[str, ...] | None = None
    no_heuristic_ceiling: int = 22


@dataclass(frozen=True)
class Correction:
    old_length: int
    new_length: int
    reason: str


@dataclass(frozen=True)
class SearchStats:
    class_count: int = 0
    free_columns: int = 0
    candidates_checked: int = 0
    sweep_checked: int = 0
    pruned_by_seeds: int = 0
    pruned_by_pairs: int = 0
    lengths_visited: tuple[int, ...] = ()
    cycle_cost: CycleCost | None = None

    @property
    def subsets_checked(self) -> int:
        return self.candidates_checked + self.sweep_checked


@dataclass(frozen=True)
class DeadendCheck:
    """Dead-end verdict: per-column witness pairs, or a removable column."""

    ok: bool
    witnesses: tuple[tuple[int, RowPair], ...]
    redundant: int | None = None

    def witness_for(self, column: int) -> RowPair | None:
        for c, pair in self.witnesses:
            if c == column:
                return pair
        return None


@dataclass(frozen=True)
class LocalReport:
    """Result of the local search on a class set."""

    local_length: int
    local_tests: tuple[ColumnSet, ...]
    mandatory: ColumnSet
    integral_length: int | None
    integral_tests: tuple[ColumnSet, ...]
    estimate: HeuristicEstimate | None
    stats: SearchStats
    corrections: tuple[Correction, ...]
    within_pair_total: int
    parent_pair_total: int | None


@dataclass(frozen=True)
class TestReport:
    """Full pipeline result: every minimal test, verified dead-end."""

    minimal_length: int
    mandatory: ColumnSet
    minimal_tests: tuple[ColumnSet, ...]
    deadend_verified: tuple[bool, ...]
    witnesses: tuple[tuple[tuple[int, RowPair], ...], ...]
    heuristic: HeuristicEstimate | None
    local_heuristic: HeuristicEstimate | None
    estimate_initial: int | None
    partition: Partition
    stats: SearchStats
    corrections: tuple[Correction, ...]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, default=_json_default)


@dataclass(frozen=True)
class TestVerdict:
    columns: ColumnSet
    test: bool
    deadend: bool | None
    minimal: str
    min_length: int | None
    note: str = ""


def _json_default(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


# ---------------------------------------------------------------------------
# dead-end checks on the full matrix


def is_deadend(matrix: BooleanMatrix, columns: Iterable[int]) -> DeadendCheck:
    """Check irredundancy: every column must separate some pair alone.

    For each column c of the test, rows are grouped by their projection
    onto the other test columns; a two-row group is a pair distinguished
    by c and nothing else in the test.  (Groups never exceed two rows in a
    test.)  A column with no such pair is redundant and the set minus that
    column is still a test; the highest-indexed redundant column is
    reported.  Witness choice is deterministic: the pair with the smallest
    shared projection value.
    """
    cols = normalize_columns(columns, matrix.col_count)
    if not is_test(matrix, cols):
        raise ValueError("dead-end check requires a test")
    witnesses: list[tuple[int, RowPair]] = []
    redundant: int | None = None
    for c in cols:
        rest_mask = matrix.column_mask(x for x in cols if x != c)
        groups: dict[int, list[int]] = {}
        for lab, row in zip(matrix.row_labels, matrix.rows):
            groups.setdefault(row & rest_mask, []).append(lab)
        pair = None
        for key in sorted(groups):
            labs = groups[key]
            if len(labs) == 2:
                pair = (min(labs), max(labs))
                break
        if pair is None:
            if redundant is None or c > redundant:
                redundant = c
        else:
            witnesses.append((c, pair))
    if redundant is not None:
        return DeadendCheck(ok=False, witnesses=tuple(witnesses), redundant=redundant)
    return DeadendCheck(ok=True, witnesses=tuple(witnesses))


def deadend_reduce(matrix: BooleanMatrix, columns: Iterable[int]) -> ColumnSet:
    """Strip redundant columns (highest index first) until dead-end."""
    current = normalize_columns(columns, matrix.col_count)
    while True:
        check = is_deadend(matrix, current)
        if check.ok:
            return current
        current = tuple(c for c in current if c != check.redundant)


def verify_test(
    matrix: BooleanMatrix,
    columns: Iterable[int],
    oracle_ceiling: int = 22,
) -> TestVerdict:
    """Structured verdict: test? dead-end? minimal?

    Minimality is decided by the exhaustive oracle when the matrix is
    small enough; otherwise it is reported unknown with the heuristic
    estimate as context.
    """
    cols = normalize_columns(columns, matrix.col_count)
    if not is_test(matrix, cols):
        return TestVerdict(
            columns=cols, test=False, deadend=None, minimal="no", min_length=None
        )
    deadend = is_deadend(matrix, cols).ok
    try:
        oracle = oracle_minimal_tests(matrix, n_ceiling=oracle_ceiling)
    except OracleCeilingError:
        est = estimate_length(column_pair_stats(matrix))
        return TestVerdict(
            columns=cols,
            test=True,
            deadend=deadend,
            minimal="unknown",
            min_length=None,
            note=f"matrix too wide for the oracle; heuristic estimate {est.t0}",
        )
    minimal = "yes" if len(cols) == oracle.min_length else "no"
    return TestVerdict(
        columns=cols,
        test=True,
        deadend=deadend,
        minimal=minimal,
        min_length=oracle.min_length,
    )


# ---------------------------------------------------------------------------
# local machinery on class sets


def local_deadend(class_set: ClassSet, columns: ColumnSet) -> DeadendCheck:
    """Dead-end check of a local test inside the class structure.

    The columns must already be a local test; witness pairs are the
    two-row groups that agree on everything in the set but one column.
    """
    witnesses: list[tuple[int, RowPair]] = []
    redundant: int | None = None
    for c in columns:
        rest_mask = class_set.mask(x for x in columns if x != c)
        pair: RowPair | None = None
        best_key: tuple[int, int] | None = None
        for idx, view in enumerate(class_set.classes):
            groups: dict[int, list[int]] = {}
            for lab, row in zip(view.row_labels, view.rows):
                groups.setdefault(row & rest_mask, []).append(lab)
            for key, labs in groups.items():
                if len(labs) == 2:
                    cand = (idx, key)
                    if best_key is None or cand < best_key:
                        best_key = cand
                        pair = (min(labs), max(labs))
        if pair is None:
            if redundant is None or c > redundant:
                redundant = c
        else:
            witnesses.append((c, pair))
    if redundant is not None:
        return DeadendCheck(ok=False, witnesses=tuple(witnesses), redundant=redundant)
    return DeadendCheck(ok=True, witnesses=tuple(witnesses))


def local_deadend_reduce(class_set: ClassSet, columns: ColumnSet) -> ColumnSet:
    current = tuple(sorted(columns))
    while True:
        check = local_deadend(class_set, current)
        if check.ok:
            return current
        current = tuple(c for c in current if c != check.redundant)


@dataclass
class _Counters:
    candidates_checked: int = 0
    sweep_checked: int = 0
    pruned_by_seeds: int = 0
    pruned_by_pairs: int = 0
    cycle_cost: CycleCost | None = None


def _pair_skip_masks(class_set: ClassSet, config: SearchConfig) -> list[int]:
    """Masks of locally-paired column pairs; candidates covering one are
    skipped.  A free column paired with a mandatory column is useless
    inside classes (the mandatory column is constant there), which the
    per-class pairing already captures, so only view columns appear here."""
    if not config.pair_prune:
        return []
    return [class_set.mask(pair) for pair in paired_view_columns(class_set)]


def _enumerate_size(
    class_set: ClassSet,
    size: int,
    config: SearchConfig,
    pair_masks: list[int],
    counters: _Counters,
) -> tuple[list[ColumnSet], int]:
    """All local tests of the given size, in colex order, under pruning.

    Returns the found tests and the number of candidates skipped by the
    paired-column rule (those and only those may hide non-dead-end tests).
    """
    seeds: list[int] = []
    if config.seed_prune and size >= 2:
        seeds = [
            class_set.mask(s.columns)
            for s in multiplicity_seeds(class_set, size - 1)
        ]
        seeds = sorted(set(seeds))
    found: list[ColumnSet] = []
    pair_skips = 0
    for subset in iter_subsets_colex(class_set.columns, size):
        mask = class_set.mask(subset)
        if pair_masks and any(pm & mask == pm for pm in pair_masks):
            counters.pruned_by_pairs += 1
            pair_skips += 1
            continue
        if seeds and any(sm & mask == sm for sm in seeds):
            counters.pruned_by_seeds += 1
            continue
        counters.candidates_checked += 1
        if first_collision(class_set, subset, mask) is None:
            found.append(subset)
            if config.first_only:
                break
    return found, pair_skips


def _first_non_deadend_test(
    class_set: ClassSet, size: int, counters: _Counters
) -> ColumnSet | None:
    """First subset in colex order that is a test but not dead-end.

    Scanned without any pruning so that every configuration derives the
    same downward jump target.
    """
    for subset in iter_subsets_colex(class_set.columns, size):
        counters.sweep_checked += 1
        if first_collision(class_set, subset) is None:
            if not local_deadend(class_set, subset).ok:
                return subset
    return None


def _search_local(
    class_set: ClassSet, start: int, config: SearchConfig
) -> tuple[int, tuple[ColumnSet, ...], SearchStats, tuple[Correction, ...]]:
    """The correction loop.  Returns the exact local length and all local
    tests of that length (just the colex-first one under first_only)."""
    free = class_set.columns
    n_free = len(free)
    t_ob = len(class_set.mandatory)
    counters = _Counters()
    pair_masks = _pair_skip_masks(class_set, config)
    corrections: list[Correction] = []
    visited: list[int] = []
    refuted = 0  # no local test of any size <= refuted exists
    length = max(1, min(start, n_free))

    def jump_down(found: list[ColumnSet], pair_skips: int, sweep_cex: ColumnSet | None):
        """Pick the pruning-independent witness and reduce it."""
        target: ColumnSet | None = None
        if pair_skips == 0:
            for t in found:
                if not local_deadend(class_set, t).ok:
                    target = t
                    break
        else:
            target = _first_non_deadend_test(class_set, length, counters)
        if target is None:
            target = sweep_cex
        assert target is not None
        return local_deadend_reduce(class_set, target)

    while True:
        visited.append(length)
        if len(visited) > n_free + 2:
            raise RuntimeError("length correction failed to terminate")
        found, pair_skips = _enumerate_size(
            class_set, length, config, pair_masks, counters
        )
        if found:
            all_dead = all(local_deadend(class_set, t).ok for t in found)
            if all_dead:
                if length - 1 <= refuted:
                    break
                cost = cycle_costs(
                    k=length - 1, p=2, n=n_free + t_ob, t_ob=t_ob, t0=t_ob + length
                )
                counters.cycle_cost = cost
                sweep = all_k_subsets_fail(
                    class_set,
                    free,
                    length - 1,
                    use_seeds=config.seed_prune and cost.chosen == "z2",
                )
                counters.sweep_checked += sweep.checked
                if sweep.all_fail:
                    refuted = max(refuted, length - 1)
                    break
                reduced = jump_down(found, pair_skips, sweep.counterexample)
                corrections.append(
                    Correction(
                        old_length=t_ob + length,
                        new_length=t_ob + len(reduced),
                        reason="a shorter test exists below the accepted size",
                    )
                )
                length = len(reduced)
            else:
                reduced = jump_down(found, pair_skips, None)
                corrections.append(
                    Correction(
                        old_length=t_ob + length,
                        new_length=t_ob + len(reduced),
                        reason="found test was not dead-end",
                    )
                )
                length = len(reduced)
        else:
            if pair_skips:
                target = _first_non_deadend_test(class_set, length, counters)
                if target is not None:
                    reduced = local_deadend_reduce(class_set, target)
                    corrections.append(
                        Correction(
                            old_length=t_ob + length,
                            new_length=t_ob + len(reduced),
                            reason="skipped subset hid a non-dead-end test",
                        )
                    )
                    length = len(reduced)
                    continue
            refuted = max(refuted, length)
            corrections.append(
                Correction(
                    old_length=t_ob + length,
                    new_length=t_ob + length + 1,
                    reason="no test of this length exists",
                )
            )
            length += 1
            if length > n_free:
                raise RuntimeError("no local test up to the full column set")

    stats = SearchStats(
        class_count=len(class_set.classes),
        free_columns=n_free,
        candidates_checked=counters.candidates_checked,
        sweep_checked=counters.sweep_checked,
        pruned_by_seeds=counters.pruned_by_seeds,
        pruned_by_pairs=counters.pruned_by_pairs,
        lengths_visited=tuple(visited),
        cycle_cost=counters.cycle_cost,
    )
    return length, tuple(sorted(found)), stats, tuple(corrections)


def enumerate_local_minimal_tests(
    class_set: ClassSet, config: SearchConfig = SearchConfig()
) -> LocalReport:
    """Minimal local tests of a class set (no parent matrix required)."""
    if not class_set.classes:
        raise ValueError("class set has no multi-row classes to separate")
    estimate: HeuristicEstimate | None = None
    start = 1
    if config.initial_length is not None:
        start = config.initial_length
    elif config.use_heuristic:
        estimate = estimate_length(union_pair_stats(class_set, config.union_classes))
        start = estimate.t0
    length, tests, stats, corrections = _search_local(class_set, start, config)
    mand = class_set.mandatory
    integral = tuple(tuple(sorted(mand + t)) for t in tests)
    return LocalReport(
        local_length=length,
        local_tests=tests,
        mandatory=mand,
        integral_length=integral_length(len(mand), length) if mand else length,
        integral_tests=integral,
        estimate=estimate,
        stats=stats,
        corrections=corrections,
        within_pair_total=class_set.within_pair_total,
        parent_pair_total=class_set.parent_pair_total,
    )


def enumerate_minimal_tests(
    matrix: BooleanMatrix, config: SearchConfig = SearchConfig()
) -> TestReport:
    """All minimal tests of a matrix (or the first, under first_only).

    Every reported set is a verified dead-end test containing every
    mandatory column; the report carries the estimates, corrections and
    search statistics that produced it.
    """
    if matrix.row_count < 2:
        raise ValueError("minimal tests need at least two rows")
    if not config.use_heuristic and matrix.col_count > config.no_heuristic_ceiling:
        raise SearchCeilingError(
            f"{matrix.col_count} columns exceed the ceiling of "
            f"{config.no_heuristic_ceiling} for heuristic-free search"
        )
    sorted_matrix = sort_rows_by_binary_value(matrix)
    mandatory = find_mandatory(sorted_matrix)
    partition = partition_by_mandatory(sorted_matrix, mandatory.columns)
    global_estimate = estimate_length(column_pair_stats(sorted_matrix))

    if not partition.classes:
        # The mandatory columns alone separate every pair.
        cols = mandatory.columns
        check = is_deadend(sorted_matrix, cols)
        return TestReport(
            minimal_length=len(cols),
            mandatory=cols,
            minimal_tests=(cols,),
            deadend_verified=(check.ok,),
            witnesses=(check.witnesses,),
            heuristic=global_estimate,
            local_heuristic=None,
            estimate_initial=None,
            partition=partition,
            stats=SearchStats(class_count=0, free_columns=0),
            corrections=(),
        )

    class_set = class_views(sorted_matrix, partition)
    local_estimate: HeuristicEstimate | None = None
    start = 1
    if config.initial_length is not None:
        start = config.initial_length
    elif config.use_heuristic:
        local_estimate = estimate_length(
            union_pair_stats(class_set, config.union_classes)
        )
        start = local_estimate.t0

    length, local_tests, stats, corrections = _search_local(class_set, start, config)
    integral = tuple(
        tuple(sorted(mandatory.columns + t)) for t in local_tests
    )
    checks = [is_deadend(sorted_matrix, t) for t in integral]
    return TestReport(
        minimal_length=len(mandatory.columns) + length,
        mandatory=mandatory.columns,
        minimal_tests=integral,
        deadend_verified=tuple(c.ok for c in checks),
        witnesses=tuple(c.witnesses for c in checks),
        heuristic=global_estimate,
        local_heuristic=local_estimate,
        estimate_initial=(
            integral_length(len(mandatory.columns), start)
            if (config.use_heuristic or config.initial_length is not None)
            else None
        ),
        partition=partition,
        stats=stats,
        corrections=corrections,
    )
