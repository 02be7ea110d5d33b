"""Sparse traffic matrix and its small algebra.

A traffic matrix counts packets per (source, destination) pair over some
window of records.  Rows are sources, columns are destinations, and only
nonzero cells are stored.  Labels are opaque strings ordered by first
appearance, so building the same record list twice gives byte-identical
results.  Matrices are immutable once built and safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import MalformedRecordError

U64_MAX = (1 << 64) - 1


@dataclass(frozen=True)
class CountVector:
    """Nonnegative integer values keyed by entity id, in a fixed order."""

    labels: tuple[str, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.values):
            raise ValueError("labels and values must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels in count vector")
        if any(v < 0 for v in self.values):
            raise ValueError("count vector values must be nonnegative")

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(zip(self.labels, self.values))

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.labels, self.values))

    def total(self) -> int:
        return sum(self.values)


class TrafficMatrix:
    """Sparse nonnegative-integer matrix with string row/column labels.

    Stored entries are always >= 1; explicit zeros are never kept.  Entries
    iterate in row-major order.
    """

    __slots__ = ("_rows", "_cols", "_data")

    def __init__(self, rows: dict[str, int], cols: dict[str, int],
                 data: dict[tuple[int, int], int]):
        # Internal constructor; use build_matrix() for record lists.
        self._rows = rows
        self._cols = cols
        self._data = data

    @property
    def row_labels(self) -> tuple[str, ...]:
        return tuple(self._rows)

    @property
    def col_labels(self) -> tuple[str, ...]:
        return tuple(self._cols)

    @property
    def n_rows(self) -> int:
        return len(self._rows)

    @property
    def n_cols(self) -> int:
        return len(self._cols)

    @property
    def nnz(self) -> int:
        """Number of stored (nonzero) entries."""
        return len(self._data)

    def entries(self) -> Iterator[tuple[int, int, int]]:
        """Yield (row_index, col_index, value) in row-major order."""
        for (i, j), v in self._data.items():
            yield i, j, v

    def labeled_entries(self) -> Iterator[tuple[str, str, int]]:
        """Yield (source, destination, value) in row-major order."""
        rows = self.row_labels
        cols = self.col_labels
        for (i, j), v in self._data.items():
            yield rows[i], cols[j], v

    def value(self, source: str, destination: str) -> int:
        """Packet count for a pair, 0 if the cell is not stored."""
        i = self._rows.get(source)
        j = self._cols.get(destination)
        if i is None or j is None:
            return 0
        return self._data.get((i, j), 0)

    def total_packets(self) -> int:
        return sum(self._data.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrafficMatrix):
            return NotImplemented
        return (self._rows == other._rows and self._cols == other._cols
                and self._data == other._data)

    def __repr__(self) -> str:
        return (f"TrafficMatrix({self.n_rows}x{self.n_cols}, "
                f"nnz={self.nnz}, packets={self.total_packets()})")


def build_matrix(records: Iterable[tuple[str, str, int]]) -> TrafficMatrix:
    """Aggregate (source, destination, packets) triples into a matrix.

    Entry (s, d) is the sum of packet counts over all records with that
    pair.  Label order is first appearance in the stream.  A record with a
    packet count below 1, or an aggregate exceeding the 64-bit unsigned
    range, raises MalformedRecordError naming the record index.
    """
    rows: dict[str, int] = {}
    cols: dict[str, int] = {}
    data: dict[tuple[int, int], int] = {}
    row_index = rows.setdefault
    col_index = cols.setdefault
    lookup = data.get
    for idx, (src, dst, pkts) in enumerate(records):
        if not isinstance(pkts, int) or not 1 <= pkts <= U64_MAX:
            if not isinstance(pkts, int):
                raise MalformedRecordError(idx, f"packet count {pkts!r} is not an integer")
            raise MalformedRecordError(idx, f"packet count {pkts} outside [1, 2^64)")
        if not src or not dst:
            raise MalformedRecordError(idx, "empty source or destination id")
        key = (row_index(src, len(rows)), col_index(dst, len(cols)))
        total = lookup(key, 0) + pkts
        if total > U64_MAX:
            raise MalformedRecordError(
                idx, f"aggregated packet count for ({src}, {dst}) exceeds the 64-bit range")
        data[key] = total
    return TrafficMatrix(rows, cols, dict(sorted(data.items())))


def zero_norm(a: TrafficMatrix) -> TrafficMatrix:
    """Replace every stored entry with 1, keeping the sparsity pattern."""
    return TrafficMatrix(a._rows, a._cols, {k: 1 for k in a._data})


def transpose(a: TrafficMatrix) -> TrafficMatrix:
    """Swap sources and destinations; entry (d, s) is entry (s, d) of the input."""
    data = {(j, i): v for (i, j), v in a._data.items()}
    return TrafficMatrix(a._cols, a._rows, dict(sorted(data.items())))


def row_sum(a: TrafficMatrix) -> CountVector:
    """Per-source packet totals (the matrix applied to an all-ones vector)."""
    sums = [0] * a.n_rows
    for i, _, v in a.entries():
        sums[i] += v
    return CountVector(a.row_labels, tuple(sums))


def col_sum(a: TrafficMatrix) -> CountVector:
    """Per-destination packet totals (an all-ones row vector times the matrix)."""
    sums = [0] * a.n_cols
    for _, j, v in a.entries():
        sums[j] += v
    return CountVector(a.col_labels, tuple(sums))
