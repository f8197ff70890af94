"""Bit-packed Boolean matrices and the column-subset distinguishing predicate.

Each row is stored as one Python int with column 1 in the most significant
bit, so a row compared as an unsigned integer equals the row read as a
binary number left to right.  XOR and popcount over whole rows are single
int operations regardless of width.

A *test* is a set of columns whose projection leaves all rows pairwise
distinct; a test is *dead-end* (irredundant) when no proper subset is a
test, and *minimal* when no shorter test exists at all.  Rows carry stable
1-based labels that survive sorting, and columns are 1-based everywhere in
the public API.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

ColumnSet = tuple[int, ...]
RowPair = tuple[int, int]


class MatrixFormatError(ValueError):
    """Input text does not describe a valid Boolean matrix."""


class DuplicateColumnWarning(UserWarning):
    """Two columns are identical; no dead-end test will ever contain both."""


def pair_count(m: int) -> int:
    """Number of unordered row pairs, m*(m-1)/2."""
    return m * (m - 1) // 2


def iter_row_pairs(labels: Sequence[int]) -> Iterator[RowPair]:
    """Unordered label pairs in lexicographic (first, second) order."""
    return combinations(sorted(labels), 2)


def normalize_columns(columns: Iterable[int], col_count: int) -> ColumnSet:
    """Canonicalize a column collection: sorted, duplicate-free, range-checked."""
    cols = sorted({int(c) for c in columns})
    for c in cols:
        if not 1 <= c <= col_count:
            raise ValueError(f"column {c} out of range 1..{col_count}")
    return tuple(cols)


@dataclass(frozen=True)
class BooleanMatrix:
    """Immutable 0/1 matrix with pairwise-distinct rows and stable row labels."""

    col_count: int
    rows: tuple[int, ...]
    row_labels: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.col_count < 1:
            raise ValueError("matrix needs at least one column")
        if len(self.rows) != len(self.row_labels):
            raise ValueError("rows and row_labels differ in length")
        if sorted(self.row_labels) != list(range(1, len(self.rows) + 1)):
            raise ValueError("row_labels must be a permutation of 1..m")
        if len(set(self.rows)) != len(self.rows):
            raise ValueError("rows must be pairwise distinct")
        for r in self.rows:
            if not 0 <= r < (1 << self.col_count):
                raise ValueError("row value out of range for col_count")

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BooleanMatrix":
        """Build from '0'/'1' strings, labelling rows 1..m in the given order."""
        return parse_matrix("\n".join(lines))

    @property
    def row_count(self) -> int:
        return len(self.rows)

    @property
    def total_pairs(self) -> int:
        """Unordered row-pair count of the matrix."""
        return pair_count(self.row_count)

    def _index(self, label: int) -> int:
        try:
            return self.row_labels.index(label)
        except ValueError:
            raise KeyError(f"unknown row label {label}") from None

    def bits(self, label: int) -> int:
        """Packed row for a label (column 1 = most significant bit)."""
        return self.rows[self._index(label)]

    def cell(self, label: int, column: int) -> int:
        if not 1 <= column <= self.col_count:
            raise ValueError(f"column {column} out of range 1..{self.col_count}")
        return (self.bits(label) >> (self.col_count - column)) & 1

    def row_string(self, label: int) -> str:
        return format(self.bits(label), f"0{self.col_count}b")

    def column_mask(self, columns: Iterable[int]) -> int:
        """Bit mask selecting the given 1-based columns in packed rows."""
        mask = 0
        for c in normalize_columns(columns, self.col_count):
            mask |= 1 << (self.col_count - c)
        return mask

    def column_bits(self, column: int) -> int:
        """One column as an int over rows in current order (first row = MSB)."""
        if not 1 <= column <= self.col_count:
            raise ValueError(f"column {column} out of range 1..{self.col_count}")
        shift = self.col_count - column
        v = 0
        for r in self.rows:
            v = (v << 1) | ((r >> shift) & 1)
        return v


@dataclass(frozen=True)
class MatrixView:
    """Projection of a matrix onto a column subset; duplicate rows allowed."""

    columns: ColumnSet
    row_labels: tuple[int, ...]
    rows: tuple[int, ...]

    def row_string(self, label: int) -> str:
        i = self.row_labels.index(label)
        return format(self.rows[i], f"0{len(self.columns)}b")


def parse_matrix(text: str) -> BooleanMatrix:
    """Parse matrix text: one '0'/'1' row per line, '#' comments, blanks ignored.

    Rows are labelled 1..m in file order.  Raises MatrixFormatError for
    ragged lines, non-binary characters or duplicate rows; duplicate-row
    messages name the two offending 1-based line numbers.  Duplicate
    columns are legal input and only trigger a DuplicateColumnWarning.
    """
    rows: list[int] = []
    seen_at: dict[int, int] = {}
    width: int | None = None
    first_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if set(line) - {"0", "1"}:
            bad = next(ch for ch in line if ch not in "01")
            raise MatrixFormatError(
                f"line {lineno}: invalid character {bad!r}; rows must be '0'/'1' only"
            )
        if width is None:
            width = len(line)
            first_line = lineno
        elif len(line) != width:
            raise MatrixFormatError(
                f"line {lineno}: row has {len(line)} columns, "
                f"but line {first_line} has {width}"
            )
        value = int(line, 2)
        if value in seen_at:
            raise MatrixFormatError(
                f"duplicate rows at lines {seen_at[value]} and {lineno}: {line}"
            )
        rows.append(value)
        seen_at[value] = lineno
    if width is None:
        raise MatrixFormatError("no matrix rows found")
    matrix = BooleanMatrix(
        col_count=width,
        rows=tuple(rows),
        row_labels=tuple(range(1, len(rows) + 1)),
    )
    _warn_duplicate_columns(matrix)
    return matrix


def load_matrix(path) -> BooleanMatrix:
    """Read a matrix file (UTF-8) in the parse_matrix format."""
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def _warn_duplicate_columns(matrix: BooleanMatrix) -> None:
    seen: dict[int, int] = {}
    for c in range(1, matrix.col_count + 1):
        v = matrix.column_bits(c)
        if v in seen:
            warnings.warn(
                f"columns {seen[v]} and {c} are identical",
                DuplicateColumnWarning,
                stacklevel=3,
            )
        else:
            seen[v] = c


def row_popcounts(matrix: BooleanMatrix) -> dict[int, int]:
    """Number of ones in each row, keyed by row label."""
    return {lab: matrix.bits(lab).bit_count() for lab in matrix.row_labels}


def sort_rows_by_binary_value(matrix: BooleanMatrix) -> BooleanMatrix:
    """Rows in ascending order of their value as binary numbers (col 1 = MSB).

    Labels travel with their rows, so this is a pure reordering: no test
    property of the matrix changes.
    """
    order = sorted(range(matrix.row_count), key=lambda i: matrix.rows[i])
    return BooleanMatrix(
        col_count=matrix.col_count,
        rows=tuple(matrix.rows[i] for i in order),
        row_labels=tuple(matrix.row_labels[i] for i in order),
    )


def distinguishing_columns(matrix: BooleanMatrix, r1: int, r2: int) -> ColumnSet:
    """Columns where two rows differ.  Never empty: rows are distinct."""
    if r1 == r2:
        raise ValueError("need two different row labels")
    diff = matrix.bits(r1) ^ matrix.bits(r2)
    n = matrix.col_count
    return tuple(c for c in range(1, n + 1) if (diff >> (n - c)) & 1)


def is_test(matrix: BooleanMatrix, columns: Iterable[int]) -> bool:
    """True iff projections of all rows onto the columns are pairwise distinct.

    The empty set is a test only for a single-row matrix.
    """
    cols = normalize_columns(columns, matrix.col_count)
    if not cols:
        return matrix.row_count < 2
    mask = matrix.column_mask(cols)
    return len({r & mask for r in matrix.rows}) == matrix.row_count


def project(matrix: BooleanMatrix, columns: Iterable[int]) -> MatrixView:
    """Submatrix over the given columns, labels preserved, duplicates allowed."""
    cols = normalize_columns(columns, matrix.col_count)
    n = matrix.col_count
    shifts = [n - c for c in cols]
    packed = []
    for r in matrix.rows:
        v = 0
        for s in shifts:
            v = (v << 1) | ((r >> s) & 1)
        packed.append(v)
    return MatrixView(columns=cols, row_labels=matrix.row_labels, rows=tuple(packed))
