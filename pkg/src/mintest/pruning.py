"""Search-space reduction rules for the column-subset search.

Three independent facts shrink the search, all phrased over a ClassSet:

* Identical projections.  A column set that projects two rows of one class
  onto the same value is not a local test; the colliding pair is a
  reusable refutation witness.

* Multiplicity seeds.  If k columns project p >= 3 rows of one class onto
  a single value, no single extra column can finish separating them: a
  Boolean column splits p rows into two groups of sizes summing to p, so
  at most floor(p^2/4) of the p*(p-1)/2 colliding pairs get separated and
  at least p*(p-1)/2 - floor(p^2/4) >= 1 survive.  Hence every
  (k+1)-subset containing such a seed is a non-test and can be skipped
  without checking.

* Paired columns.  Two columns that are equal or complementary separate
  exactly the same row pairs, so one of them is redundant in any test that
  contains both: no dead-end (and so no minimal) test uses both.

The cycle-cost helper compares the work of refuting all (t-1)-subsets
directly against scanning (t-2)-subsets for multiplicity seeds first.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial, inf
from typing import Iterable, Iterator, Sequence

from .matrix import BooleanMatrix, ColumnSet, RowPair
from .mandatory import ClassSet, ClassView


@dataclass(frozen=True)
class IdenticalProjectionGroup:
    """Rows of one class that project identically onto a column set."""

    columns: ColumnSet
    class_name: str
    rows: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class SweepResult:
    """Outcome of refuting every k-subset of a candidate column pool."""

    all_fail: bool
    witnesses: dict[ColumnSet, tuple[str, RowPair]]
    counterexample: ColumnSet | None
    checked: int
    skipped_by_seed: int


@dataclass(frozen=True)
class CycleCost:
    """Work estimate of the two refutation strategies; smaller one wins."""

    z1: float
    z2: float

    @property
    def chosen(self) -> str:
        return "z1" if self.z1 <= self.z2 else "z2"


def iter_subsets_colex(items: Sequence[int], k: int) -> Iterator[ColumnSet]:
    """k-subsets of items in colexicographic order (by largest element last)."""
    if k < 0 or k > len(items):
        return
    if k == 0:
        yield ()
        return
    for last in range(k - 1, len(items)):
        for rest in combinations(items[:last], k - 1):
            yield rest + (items[last],)


def _class_groups(view: ClassView, mask: int) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = {}
    for lab, row in zip(view.row_labels, view.rows):
        groups.setdefault(row & mask, []).append(lab)
    return groups


def _classes_largest_first(class_set: ClassSet) -> list[ClassView]:
    return sorted(class_set.classes, key=lambda c: -c.size)


def identical_projection_groups(
    class_set: ClassSet, columns: Iterable[int]
) -> tuple[IdenticalProjectionGroup, ...]:
    """All >= 2-row identical-projection groups, per class, for a column set.

    An empty result is exactly the local-test property for the set.
    """
    cols = tuple(sorted(columns))
    mask = class_set.mask(cols)
    out = []
    for view in class_set.classes:
        for _, labs in sorted(_class_groups(view, mask).items()):
            if len(labs) >= 2:
                out.append(
                    IdenticalProjectionGroup(
                        columns=cols, class_name=view.name, rows=tuple(labs)
                    )
                )
    return tuple(out)


def first_collision(
    class_set: ClassSet, columns: Iterable[int], mask: int | None = None
) -> tuple[str, RowPair] | None:
    """First identical-projection pair, scanning largest classes first.

    Returns None exactly when the column set is a local test.  Large
    classes are scanned first because they reject non-tests fastest; the
    result is still deterministic for a fixed class set.
    """
    if mask is None:
        mask = class_set.mask(columns)
    for view in _classes_largest_first(class_set):
        seen: dict[int, int] = {}
        for lab, row in zip(view.row_labels, view.rows):
            v = row & mask
            if v in seen:
                return view.name, (seen[v], lab)
            seen[v] = lab
    return None


def is_local_test(class_set: ClassSet, columns: Iterable[int]) -> bool:
    """True iff the columns separate the rows inside every class."""
    return first_collision(class_set, columns) is None


def multiplicity_seeds(
    class_set: ClassSet, k: int, p_min: int = 3
) -> tuple[IdenticalProjectionGroup, ...]:
    """All k-subsets projecting >= p_min rows of some class onto one value.

    Each qualifying (subset, class) is reported once with the class's
    largest group (ties broken by smallest row labels).  Any single-column
    extension of a seed is a non-test, so seeds of size k prune the
    size-(k+1) search.
    """
    if p_min < 3:
        raise ValueError("multiplicity seeds need p_min >= 3")
    seeds = []
    for subset in iter_subsets_colex(class_set.columns, k):
        mask = class_set.mask(subset)
        for view in class_set.classes:
            if view.size < p_min:
                continue
            groups = _class_groups(view, mask)
            best = max(groups.values(), key=lambda g: (len(g), [-x for x in g]))
            if len(best) >= p_min:
                seeds.append(
                    IdenticalProjectionGroup(
                        columns=subset, class_name=view.name, rows=tuple(best)
                    )
                )
    return tuple(seeds)


def _seed_witness(
    class_set: ClassSet, seed: IdenticalProjectionGroup, subset: ColumnSet
) -> tuple[str, RowPair]:
    """A colliding pair certifying that subset (= seed + one column) fails.

    The seed's rows agree on the seed columns; on the one extra column
    they split into two value groups, and the larger one still holds a
    colliding pair.
    """
    extra = next(c for c in subset if c not in seed.columns)
    view = next(v for v in class_set.classes if v.name == seed.class_name)
    bit = class_set.mask((extra,))
    by_value: dict[int, list[int]] = {}
    for lab, row in zip(view.row_labels, view.rows):
        if lab in seed.rows:
            by_value.setdefault(1 if row & bit else 0, []).append(lab)
    group = max(by_value.values(), key=len)
    return seed.class_name, (group[0], group[1])


def all_k_subsets_fail(
    class_set: ClassSet,
    candidates: Sequence[int],
    k: int,
    use_seeds: bool = False,
) -> SweepResult:
    """Check whether every k-subset of the candidates fails as a local test.

    True means the minimal local test needs more than k columns.  Each
    failing subset gets a witness (class name and colliding row pair).
    With use_seeds, (k-1)-subsets are scanned for multiplicity seeds first
    and k-subsets containing one are refuted without a projection check;
    that shortcut only ever skips non-tests, so the sweep stays exact.
    The first k-subset that *is* a local test is returned as the
    counterexample and the sweep stops.
    """
    seed_index: list[tuple[int, IdenticalProjectionGroup]] = []
    if use_seeds and k >= 2:
        for seed in multiplicity_seeds(class_set, k - 1):
            seed_index.append((class_set.mask(seed.columns), seed))
    witnesses: dict[ColumnSet, tuple[str, RowPair]] = {}
    checked = 0
    skipped = 0
    if k == 0:
        collision = first_collision(class_set, ())
        if collision is None:
            return SweepResult(False, {}, (), 0, 0)
        return SweepResult(True, {(): collision}, None, 1, 0)
    for subset in iter_subsets_colex(tuple(candidates), k):
        mask = class_set.mask(subset)
        seed_hit = None
        for smask, seed in seed_index:
            if smask & mask == smask:
                seed_hit = seed
                break
        if seed_hit is not None:
            skipped += 1
            witnesses[subset] = _seed_witness(class_set, seed_hit, subset)
            continue
        checked += 1
        collision = first_collision(class_set, subset, mask)
        if collision is None:
            return SweepResult(False, witnesses, subset, checked, skipped)
        witnesses[subset] = collision
    return SweepResult(True, witnesses, None, checked, skipped)


def residual_pairs_lower_bound(p: int) -> int:
    """Colliding pairs that must survive one added column, given p >= 2
    identical projections: p*(p-1)/2 total minus at most floor(p^2/4)
    separable."""
    if p < 2:
        raise ValueError("need at least two identical rows")
    return p * (p - 1) // 2 - (p * p) // 4


def bijective_column_pairs(
    matrix: BooleanMatrix,
) -> tuple[tuple[int, int], ...]:
    """Column pairs that are equal or complementary over the whole matrix.

    Such columns separate identical sets of row pairs, so no dead-end test
    contains both members of a returned pair.
    """
    full = (1 << matrix.row_count) - 1
    cols = {c: matrix.column_bits(c) for c in range(1, matrix.col_count + 1)}
    out = []
    for a, b in combinations(range(1, matrix.col_count + 1), 2):
        if cols[a] == cols[b] or cols[a] == (cols[b] ^ full):
            out.append((a, b))
    return tuple(out)


def paired_view_columns(class_set: ClassSet) -> tuple[tuple[int, int], ...]:
    """View-column pairs that separate identical row pairs in every class.

    Per class the two columns must be equal or complementary (the polarity
    may differ between classes); this contains every whole-matrix
    equal/complement pair restricted to the view and is the form the local
    search can use soundly.
    """
    width = len(class_set.columns)
    out = []
    for i, j in combinations(range(width), 2):
        ok = True
        for view in class_set.classes:
            si, sj = width - 1 - i, width - 1 - j
            rel: int | None = None
            for row in view.rows:
                r = ((row >> si) & 1) ^ ((row >> sj) & 1)
                if rel is None:
                    rel = r
                elif rel != r:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append((class_set.columns[i], class_set.columns[j]))
    return tuple(out)


def cycle_costs(k: int, p: int, n: int, t_ob: int, t0: int) -> CycleCost:
    """Work estimates for the two (t0-1)-refutation strategies.

    z1 counts direct checks of all (t0-t_ob-1)-subsets of the free
    columns; z2 counts the (t0-t_ob-2)-subset seed scan.  k*p is the
    per-subset pair work of the strategy shape.  A strategy whose subset
    size is undefined (negative) costs infinity.
    """
    if min(k, p, n, t_ob, t0) < 0:
        raise ValueError("cycle cost arguments cannot be negative")
    if n < t_ob:
        raise ValueError("more mandatory columns than columns")
    free = n - t_ob

    def cost(size: int) -> float:
        if size < 0:
            return inf
        return k * p * comb(free, size)

    return CycleCost(z1=cost(t0 - t_ob - 1), z2=cost(t0 - t_ob - 2))


def cycle_cost_factorial_form(k: int, p: int, n: int, t_ob: int, t0: int) -> CycleCost:
    """The same two costs via factorials; equals cycle_costs wherever both
    are defined (kept for cross-checking the reduction to binomials)."""
    free = n - t_ob

    def cost(size: int) -> float:
        if size < 0 or free - size < 0:
            return inf
        return k * p * factorial(free) / (factorial(size) * factorial(free - size))

    return CycleCost(z1=cost(t0 - t_ob - 1), z2=cost(t0 - t_ob - 2))
