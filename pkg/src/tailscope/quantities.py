"""Network-theoretic quantities of a traffic matrix.

Source fan-out counts the distinct destinations each source talks to,
destination fan-in the distinct sources each destination hears from, and
the packet variants sum volumes instead of counting partners.  Fan-out and
fan-in are the row and column sums of the zero-normed matrix, which is how
they are computed from the sparse representation here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .matrix import CountVector, TrafficMatrix, col_sum, row_sum


@dataclass(frozen=True)
class ScalarSummary:
    """Whole-matrix aggregates."""

    valid_packets: int
    unique_links: int
    unique_sources: int
    unique_destinations: int

    def as_dict(self) -> dict[str, int]:
        return {
            "valid_packets": self.valid_packets,
            "unique_links": self.unique_links,
            "unique_sources": self.unique_sources,
            "unique_destinations": self.unique_destinations,
        }


@dataclass(frozen=True)
class QuantityReport:
    """All per-entity quantities plus the scalar aggregates for one matrix."""

    source_packets: CountVector
    source_fanout: CountVector
    dest_packets: CountVector
    dest_fanin: CountVector
    scalars: ScalarSummary


def source_packets(a: TrafficMatrix) -> CountVector:
    """Packets sent per source."""
    return row_sum(a)


def dest_packets(a: TrafficMatrix) -> CountVector:
    """Packets received per destination."""
    return col_sum(a)


def source_fanout(a: TrafficMatrix) -> CountVector:
    """Distinct destinations contacted per source; packet volume is ignored."""
    counts = [0] * a.n_rows
    for i, _, _ in a.entries():
        counts[i] += 1
    return CountVector(a.row_labels, tuple(counts))


def dest_fanin(a: TrafficMatrix) -> CountVector:
    """Distinct sources contacting each destination."""
    counts = [0] * a.n_cols
    for _, j, _ in a.entries():
        counts[j] += 1
    return CountVector(a.col_labels, tuple(counts))


def scalars(a: TrafficMatrix) -> ScalarSummary:
    """Total packets, stored links, and counts of active sources/destinations."""
    rows_seen = [False] * a.n_rows
    cols_seen = [False] * a.n_cols
    packets = 0
    for i, j, v in a.entries():
        rows_seen[i] = True
        cols_seen[j] = True
        packets += v
    return ScalarSummary(
        valid_packets=packets,
        unique_links=a.nnz,
        unique_sources=sum(rows_seen),
        unique_destinations=sum(cols_seen),
    )


def quantity_report(a: TrafficMatrix) -> QuantityReport:
    return QuantityReport(
        source_packets=source_packets(a),
        source_fanout=source_fanout(a),
        dest_packets=dest_packets(a),
        dest_fanin=dest_fanin(a),
        scalars=scalars(a),
    )


def brightness_rank(v: CountVector, k: int) -> list[tuple[str, int]]:
    """Top-k entities by value, descending; ties keep first-appearance order.

    Brightness can be measured on any of the per-entity vectors (fan-in,
    fan-out, or packet volumes), so the vector is a parameter rather than a
    fixed choice.
    """
    if k < 1:
        raise DomainError(f"quantities: rank size k must be >= 1, got {k}")
    order = sorted(range(len(v.labels)), key=lambda i: (-v.values[i], i))
    return [(v.labels[i], v.values[i]) for i in order[:k]]
