"""Power-of-2 logarithmic binning and empirical CCDFs.

Counted quantities like fan-in span several orders of magnitude, so
frequencies are collected over bins [2^d, 2^(d+1)).  The bin exponent is
computed with integer bit arithmetic, never floating-point logs, so exact
powers of two always land in their own lower bin.  The CCDF uses the
inclusive tail convention P(X >= x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import DomainError


class BinCount(NamedTuple):
    lower: int
    upper: int
    count: int


@dataclass(frozen=True)
class LogBinnedHistogram:
    """Frequencies over contiguous power-of-2 bins.

    Bins cover the occupied exponent range; interior bins with no values are
    kept with count 0 so the bin list is gap-free.
    """

    bins: tuple[BinCount, ...]
    total: int


@dataclass(frozen=True)
class EmpiricalCCDF:
    """Tail probabilities P(X >= x) at each distinct observed x, ascending."""

    points: tuple[tuple[float, float], ...]
    n: int


def log_bin(values: Iterable[int]) -> LogBinnedHistogram:
    """Bin positive integers by the rule 2^d <= n < 2^(d+1).

    The exponent d = floor(log2 n) comes from the integer bit length, so
    boundary values are classified exactly.  Values below 1 are a domain
    error; a zero-degree entity never appears in a sparse matrix.
    """
    counts: dict[int, int] = {}
    total = 0
    for v in values:
        if v < 1:
            raise DomainError(f"binning: value {v} is below 1")
        d = int(v).bit_length() - 1
        counts[d] = counts.get(d, 0) + 1
        total += 1
    if not counts:
        return LogBinnedHistogram(bins=(), total=0)
    d_min = min(counts)
    d_max = max(counts)
    bins = tuple(BinCount(1 << d, 1 << (d + 1), counts.get(d, 0))
                 for d in range(d_min, d_max + 1))
    return LogBinnedHistogram(bins=bins, total=total)


def bin_representatives(hist: LogBinnedHistogram, representative: str = "lower",
                        density: bool = False) -> list[tuple[float, float]]:
    """One (x, y) point per nonempty bin, for plotting and fitting.

    The abscissa is the lower edge 2^d by default, or the geometric midpoint
    sqrt(lower * upper).  With `density` the count is divided by the bin
    width, which is what exponent-recovery fits should use.
    """
    if representative not in ("lower", "geometric"):
        raise DomainError(f"binning: unknown representative {representative!r}")
    points = []
    for lower, upper, count in hist.bins:
        if count == 0:
            continue
        x = float(math.sqrt(lower * upper)) if representative == "geometric" else lower
        y = count / (upper - lower) if density else count
        points.append((x, y))
    return points


def ccdf(values: Sequence[float]) -> EmpiricalCCDF:
    """Empirical complementary CDF of a positive sample.

    For each distinct observed x in ascending order the value is
    #{v : v >= x} / n, so the curve starts at exactly 1 and is nonincreasing.
    """
    n = len(values)
    if n == 0:
        raise DomainError("binning: ccdf of an empty sample")
    ordered = sorted(values)
    if ordered[0] <= 0:
        raise DomainError(f"binning: ccdf values must be positive, got {ordered[0]}")
    points = []
    i = 0
    while i < n:
        x = ordered[i]
        points.append((x, (n - i) / n))
        i += 1
        while i < n and ordered[i] == x:
            i += 1
    return EmpiricalCCDF(points=tuple(points), n=n)
