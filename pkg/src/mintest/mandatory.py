"""Mandatory columns and the row-class decomposition they induce.

A column is *mandatory* when some row pair differs in that column alone
(Hamming distance 1): no other column can separate that pair, so every
test must contain the column.  Rows sharing one value vector on the
mandatory columns form a *class*; any pair of rows from different classes
is already separated, so the remaining search only has to distinguish rows
inside each multi-row class using the non-mandatory columns.

Candidate pairs for the distance-1 scan come from popcount buckets: two
rows at Hamming distance 1 must differ in popcount by exactly 1, so only
adjacent buckets are crossed, never all m*(m-1)/2 pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .matrix import (
    BooleanMatrix,
    ColumnSet,
    MatrixFormatError,
    RowPair,
    normalize_columns,
    pair_count,
)


@dataclass(frozen=True)
class MandatoryResult:
    """Mandatory columns and, per column, the distance-1 pairs proving it."""

    columns: ColumnSet
    witnesses: dict[int, tuple[RowPair, ...]] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.columns)


@dataclass(frozen=True)
class PartitionClass:
    """Rows sharing one value vector on the mandatory columns."""

    key: tuple[int, ...]
    ordinal: int
    members: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"Q{self.ordinal}"

    @property
    def key_string(self) -> str:
        return "".join(str(b) for b in self.key)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Partition:
    """Multi-row classes plus the singleton rows that need no further work.

    Classes are ordered by key read as a binary number; ordinals number all
    distinct keys in that order, singletons included, so class names stay
    stable whether or not singletons are dropped.
    """

    mandatory: ColumnSet
    classes: tuple[PartitionClass, ...]
    dropped_singletons: tuple[int, ...]
    singleton_keys: tuple[tuple[int, ...], ...] = ()

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def within_pair_total(self) -> int:
        """Row pairs left to distinguish after the class decomposition."""
        return sum(pair_count(c.size) for c in self.classes)


@dataclass(frozen=True)
class ClassView:
    """One class projected onto the view columns, rows bit-packed."""

    name: str
    key: tuple[int, ...]
    row_labels: tuple[int, ...]
    rows: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class ClassSet:
    """A family of row classes over a common set of original column labels.

    This is the object the subset search actually runs on: a column set
    T (given by original labels) is a *local test* when inside every class
    the projections onto T are pairwise distinct.  When the classes come
    from a partition by mandatory columns, mandatory+local is a test of
    the whole matrix.
    """

    columns: ColumnSet
    classes: tuple[ClassView, ...]
    mandatory: ColumnSet = ()
    total_rows: int | None = None

    def mask(self, columns: Iterable[int]) -> int:
        """Bit mask of view positions for a set of original column labels."""
        width = len(self.columns)
        mask = 0
        for c in columns:
            try:
                pos = self.columns.index(c)
            except ValueError:
                raise ValueError(f"column {c} is not part of this view") from None
            mask |= 1 << (width - 1 - pos)
        return mask

    @property
    def within_pair_total(self) -> int:
        return sum(pair_count(c.size) for c in self.classes)

    @property
    def parent_pair_total(self) -> int | None:
        return pair_count(self.total_rows) if self.total_rows else None

    def union_rows(self, names: Sequence[str]) -> tuple[ClassView, ...]:
        by_name = {c.name: c for c in self.classes}
        missing = [n for n in names if n not in by_name]
        if missing:
            raise ValueError(f"unknown class name(s): {', '.join(missing)}")
        return tuple(by_name[n] for n in names)


def candidate_pairs(matrix: BooleanMatrix) -> tuple[RowPair, ...]:
    """All unordered row pairs whose popcounts differ by exactly one.

    Built from popcount buckets (each bucket crossed with the next one),
    then sorted lexicographically.  Only these pairs can be at Hamming
    distance 1.
    """
    buckets: dict[int, list[int]] = {}
    for lab in matrix.row_labels:
        buckets.setdefault(matrix.bits(lab).bit_count(), []).append(lab)
    pairs: list[RowPair] = []
    for r in sorted(buckets):
        if r + 1 not in buckets:
            continue
        for a in buckets[r]:
            for b in buckets[r + 1]:
                pairs.append((a, b) if a < b else (b, a))
    pairs.sort()
    return tuple(pairs)


def find_mandatory(matrix: BooleanMatrix) -> MandatoryResult:
    """Complete mandatory-column scan over the candidate pairs.

    A column is mandatory iff some pair of rows is distinguished by it
    alone; such a pair is at Hamming distance 1 and therefore appears
    among the candidate pairs.
    """
    witnesses: dict[int, list[RowPair]] = {}
    n = matrix.col_count
    for a, b in candidate_pairs(matrix):
        diff = matrix.bits(a) ^ matrix.bits(b)
        if diff.bit_count() == 1:
            column = n - diff.bit_length() + 1
            witnesses.setdefault(column, []).append((a, b))
    columns = tuple(sorted(witnesses))
    return MandatoryResult(
        columns=columns,
        witnesses={c: tuple(witnesses[c]) for c in columns},
    )


def partition_by_mandatory(
    matrix: BooleanMatrix, mandatory: Iterable[int]
) -> Partition:
    """Group rows by their value vector on the mandatory columns.

    Single-member groups are dropped from further search (their rows are
    already separated from everything) but recorded for reporting.  With
    no mandatory columns the partition is one class holding every row.
    """
    mand = normalize_columns(mandatory, matrix.col_count)
    n = matrix.col_count
    groups: dict[tuple[int, ...], list[int]] = {}
    for lab in sorted(matrix.row_labels):
        bits = matrix.bits(lab)
        key = tuple((bits >> (n - c)) & 1 for c in mand)
        groups.setdefault(key, []).append(lab)
    classes = []
    singles: list[int] = []
    single_keys: list[tuple[int, ...]] = []
    for ordinal, key in enumerate(sorted(groups), start=1):
        members = groups[key]
        if len(members) >= 2:
            classes.append(
                PartitionClass(key=key, ordinal=ordinal, members=tuple(members))
            )
        else:
            singles.extend(members)
            single_keys.append(key)
    return Partition(
        mandatory=mand,
        classes=tuple(classes),
        dropped_singletons=tuple(singles),
        singleton_keys=tuple(single_keys),
    )


def refine_mandatory(matrix: BooleanMatrix) -> tuple[MandatoryResult, Partition]:
    """Fixpoint variant: rescan inside classes and re-partition until stable.

    After the global scan, each multi-row class is searched for pairs
    distinguished by exactly one non-mandatory column; any such column is
    promoted and the partition rebuilt.  The loop terminates because the
    mandatory set grows monotonically, and it provably adds nothing beyond
    find_mandatory: a within-class single-column pair agrees on all
    mandatory columns, so it is a global distance-1 pair already seen.
    The path exists so that equivalence is testable, not because it finds
    more.
    """
    result = find_mandatory(matrix)
    columns = set(result.columns)
    witnesses = {c: list(ws) for c, ws in result.witnesses.items()}
    n = matrix.col_count
    while True:
        partition = partition_by_mandatory(matrix, columns)
        free_mask = matrix.column_mask(
            c for c in range(1, n + 1) if c not in columns
        )
        promoted = False
        for cls in partition.classes:
            pops = {lab: matrix.bits(lab).bit_count() for lab in cls.members}
            for a, b in combinations(cls.members, 2):
                if abs(pops[a] - pops[b]) != 1:
                    continue
                diff = (matrix.bits(a) ^ matrix.bits(b)) & free_mask
                if diff.bit_count() == 1:
                    column = n - diff.bit_length() + 1
                    if column not in columns:
                        columns.add(column)
                        promoted = True
                    witnesses.setdefault(column, [])
                    if (a, b) not in witnesses[column]:
                        witnesses[column].append((a, b))
        if not promoted:
            cols = tuple(sorted(columns))
            return (
                MandatoryResult(
                    columns=cols,
                    witnesses={c: tuple(witnesses.get(c, ())) for c in cols},
                ),
                partition,
            )


def class_views(
    matrix: BooleanMatrix,
    partition: Partition,
    columns: Iterable[int] | None = None,
) -> ClassSet:
    """Project the partition's multi-row classes onto the free columns.

    By default the view columns are all non-mandatory columns of the
    matrix, in ascending order.
    """
    if columns is None:
        cols = tuple(
            c
            for c in range(1, matrix.col_count + 1)
            if c not in partition.mandatory
        )
    else:
        cols = normalize_columns(columns, matrix.col_count)
    n = matrix.col_count
    shifts = [n - c for c in cols]
    views = []
    for cls in partition.classes:
        packed = []
        for lab in cls.members:
            bits = matrix.bits(lab)
            v = 0
            for s in shifts:
                v = (v << 1) | ((bits >> s) & 1)
            packed.append(v)
        views.append(
            ClassView(
                name=cls.name,
                key=cls.key,
                row_labels=cls.members,
                rows=tuple(packed),
            )
        )
    return ClassSet(
        columns=cols,
        classes=tuple(views),
        mandatory=partition.mandatory,
        total_rows=matrix.row_count,
    )


def parse_class_set(text: str) -> ClassSet:
    """Parse a class-set file.

    Format (UTF-8, '#' comments, blank lines ignored):

        columns: 1 5 8 9
        mandatory: 2 3 4 6 7 10
        parent-rows: 50
        class 101101
        33: 1111
        55: 1000
        class 101110
        ...

    ``columns`` gives the original 1-based labels of the view columns;
    each row line is ``<label>: <bits>`` over those columns.  ``mandatory``
    and ``parent-rows`` are optional context about the parent matrix.
    Class names are M1, M2, ... in file order.
    """
    columns: ColumnSet | None = None
    mandatory: ColumnSet = ()
    total_rows: int | None = None
    classes: list[ClassView] = []
    current_key: tuple[int, ...] | None = None
    current_rows: list[tuple[int, int]] = []
    seen_labels: set[int] = set()

    def flush() -> None:
        nonlocal current_key, current_rows
        if current_key is None:
            return
        if not current_rows:
            raise MatrixFormatError("class with no rows")
        labels = tuple(lab for lab, _ in current_rows)
        rows = tuple(bits for _, bits in current_rows)
        if len(set(rows)) != len(rows):
            raise MatrixFormatError(
                f"class {len(classes) + 1}: duplicate rows cannot be separated"
            )
        classes.append(
            ClassView(
                name=f"M{len(classes) + 1}",
                key=current_key,
                row_labels=labels,
                rows=rows,
            )
        )
        current_key, current_rows = None, []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("columns:"):
            columns = tuple(int(t) for t in line.split(":", 1)[1].split())
        elif line.startswith("mandatory:"):
            mandatory = tuple(int(t) for t in line.split(":", 1)[1].split())
        elif line.startswith("parent-rows:"):
            total_rows = int(line.split(":", 1)[1])
        elif line.startswith("class"):
            flush()
            key_text = line.split(None, 1)[1] if " " in line else ""
            if set(key_text) - {"0", "1"}:
                raise MatrixFormatError(f"line {lineno}: bad class key {key_text!r}")
            current_key = tuple(int(b) for b in key_text)
        elif ":" in line:
            if columns is None:
                raise MatrixFormatError("row before 'columns:' header")
            if current_key is None:
                raise MatrixFormatError(f"line {lineno}: row outside any class")
            label_text, bits_text = (t.strip() for t in line.split(":", 1))
            bits_text = bits_text.replace(" ", "")
            if set(bits_text) - {"0", "1"} or len(bits_text) != len(columns):
                raise MatrixFormatError(
                    f"line {lineno}: expected {len(columns)} bits of '0'/'1'"
                )
            label = int(label_text)
            if label in seen_labels:
                raise MatrixFormatError(f"line {lineno}: duplicate row label {label}")
            seen_labels.add(label)
            current_rows.append((label, int(bits_text, 2)))
        else:
            raise MatrixFormatError(f"line {lineno}: unrecognized line {line!r}")
    flush()
    if columns is None or not classes:
        raise MatrixFormatError("class-set file needs a 'columns:' header and classes")
    return ClassSet(
        columns=columns,
        classes=tuple(classes),
        mandatory=tuple(sorted(mandatory)),
        total_rows=total_rows,
    )


def load_class_set(path) -> ClassSet:
    """Read a class-set file (UTF-8) in the parse_class_set format."""
    with open(path, encoding="utf-8") as fh:
        return parse_class_set(fh.read())
