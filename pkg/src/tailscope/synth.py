"""Seeded synthetic traffic for oracles, tests and demos.

Randomness comes from a counter-based splitmix64 generator, fully specified
by its recurrence so any implementation can reproduce the streams bit for
bit.  Output k (counting from 1) for seed s is mix64(s + k * 0x9E3779B97F4A7C15)
where all arithmetic is modulo 2^64 and

    mix64(z): z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
              z ^= z >> 27;  z *= 0x94D049BB133111EB
              z ^= z >> 31;  return z

Because output k depends only on (seed, k), draws can be produced scalar or
as numpy blocks with identical results; both paths are exposed and tested
against each other.

Three traffic models are provided.  `zipf(alpha)` makes destination fan-in
follow a power-law frequency histogram with exponent alpha: destination
popularity over ranks r = 1..n_destinations is proportional to
r^(-1/(alpha-1)), the rank exponent dual to a size-frequency exponent of
alpha, and sources are drawn uniformly.  `uniform` draws both endpoints
uniformly, giving light-tailed (binomial-like) degrees.  `fixed-degree(k)`
gives every source exactly k possible destinations.

Each record consumes a fixed number of draws laid out in blocks: all source
draws, then all destination draws, then all packet draws (fixed-degree skips
the source block; sources rotate round-robin so every source appears).
Packet counts are 1 + (u mod 8).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .ingest import TrafficRecord

U64_MASK = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_1 = 0xBF58476D1CE4E5B9
_MIX_2 = 0x94D049BB133111EB
_WEIGHT_SCALE = 1 << 53


def mix64(z: int) -> int:
    """The splitmix64 finalizer on one 64-bit word."""
    z &= U64_MASK
    z = ((z ^ (z >> 30)) * _MIX_1) & U64_MASK
    z = ((z ^ (z >> 27)) * _MIX_2) & U64_MASK
    return z ^ (z >> 31)


class SplitMix64:
    """Counter-based splitmix64 stream (see the module docstring)."""

    def __init__(self, seed: int):
        self._seed = seed & U64_MASK
        self._counter = 0

    def next_u64(self) -> int:
        self._counter += 1
        return mix64((self._seed + self._counter * GOLDEN_GAMMA) & U64_MASK)

    def take(self, n: int) -> np.ndarray:
        """The next n outputs as a uint64 array (same stream as next_u64)."""
        ks = np.arange(self._counter + 1, self._counter + n + 1, dtype=np.uint64)
        self._counter += n
        z = ks * np.uint64(GOLDEN_GAMMA) + np.uint64(self._seed)
        z ^= z >> np.uint64(30)
        z *= np.uint64(_MIX_1)
        z ^= z >> np.uint64(27)
        z *= np.uint64(_MIX_2)
        z ^= z >> np.uint64(31)
        return z

    def take_below(self, n: int, bound: int) -> np.ndarray:
        """n draws reduced modulo bound, as int64."""
        if not 0 < bound <= (1 << 63):
            raise DomainError(f"synth: modulus {bound} out of range")
        return (self.take(n) % np.uint64(bound)).astype(np.int64)

    def take_unit(self, n: int) -> np.ndarray:
        """n floats in the open interval (0, 1): ((u >> 11) + 0.5) * 2^-53."""
        return ((self.take(n) >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0 ** -53


class ZipfSampler:
    """Inverse-CDF sampling of ranks 1..size with weight rank^(-exponent).

    Weights are integerized as floor(2^53 * rank^(-exponent)) so the
    cumulative table, the modulus draw and the binary search are all exact
    integer operations.  For whole-number exponents the weights themselves
    are computed in integer arithmetic.
    """

    def __init__(self, exponent: float, size: int):
        if size < 1:
            raise DomainError("synth: rank table needs size >= 1")
        if exponent < 0:
            raise DomainError("synth: rank exponent must be nonnegative")
        if float(exponent).is_integer():
            e = int(exponent)
            weights = [_WEIGHT_SCALE // (k ** e) for k in range(1, size + 1)]
        else:
            weights = [int(_WEIGHT_SCALE * k ** (-exponent)) for k in range(1, size + 1)]
        cum = []
        acc = 0
        for w in weights:
            acc += w
            cum.append(acc)
        if acc >= (1 << 63):
            raise DomainError("synth: rank table too heavy; reduce size or raise the exponent")
        self.exponent = exponent
        self.size = size
        self._cum = cum
        self._cum_np = np.array(cum, dtype=np.uint64)
        self._total = acc

    def sample(self, rng: SplitMix64, count: int) -> np.ndarray:
        """count ranks in 1..size, as int64."""
        r = rng.take(count) % np.uint64(self._total)
        return np.searchsorted(self._cum_np, r, side="right").astype(np.int64) + 1

    def sample_one(self, rng: SplitMix64) -> int:
        """Scalar reference path; consumes one draw, identical to sample()."""
        r = rng.next_u64() % self._total
        return bisect_right(self._cum, r) + 1


@dataclass(frozen=True)
class SynthSpec:
    """Parameters of one synthetic record stream."""

    seed: int
    n_records: int
    n_sources: int
    n_destinations: int
    model: str = "zipf"  # "zipf" | "uniform" | "fixed-degree"
    alpha: float = 2.0   # zipf: target fan-in histogram exponent
    degree: int = 1      # fixed-degree: destinations per source

    def __post_init__(self):
        if self.n_records < 1 or self.n_sources < 1 or self.n_destinations < 1:
            raise DomainError("synth: record and id-space sizes must be >= 1")
        if self.model not in ("zipf", "uniform", "fixed-degree"):
            raise DomainError(f"synth: unknown model {self.model!r}")
        if self.model == "zipf" and not self.alpha > 1.0:
            raise DomainError("synth: zipf needs alpha > 1")
        if self.model == "fixed-degree" and not 1 <= self.degree <= self.n_destinations:
            raise DomainError("synth: fixed-degree needs 1 <= degree <= n_destinations")


def _labels(prefix: str, indices: np.ndarray, space: int) -> list[str]:
    width = len(str(space - 1)) if space > 1 else 1
    idx = indices.tolist()
    if space <= 2 * len(idx):  # small id space: format each id once
        table = [f"{prefix}{i:0{width}d}" for i in range(space)]
        return [table[i] for i in idx]
    return [f"{prefix}{i:0{width}d}" for i in idx]


def generate(spec: SynthSpec) -> list[TrafficRecord]:
    """Produce the record stream for a spec; identical for identical specs."""
    rng = SplitMix64(spec.seed)
    n = spec.n_records
    if spec.model == "fixed-degree":
        src_idx = np.arange(n, dtype=np.int64) % spec.n_sources
        choice = rng.take_below(n, spec.degree)
        dst_idx = (src_idx * spec.degree + choice) % spec.n_destinations
    elif spec.model == "uniform":
        src_idx = rng.take_below(n, spec.n_sources)
        dst_idx = rng.take_below(n, spec.n_destinations)
    else:  # zipf
        src_idx = rng.take_below(n, spec.n_sources)
        rank_exponent = 1.0 / (spec.alpha - 1.0)
        sampler = ZipfSampler(rank_exponent, spec.n_destinations)
        dst_idx = sampler.sample(rng, n) - 1  # ranks are 1-based
    packets = (rng.take_below(n, 8) + 1).tolist()
    sources = _labels("S", src_idx, spec.n_sources)
    dests = _labels("D", dst_idx, spec.n_destinations)
    return list(map(TrafficRecord, range(n), sources, dests, packets))


def sample_zipf_values(seed: int, alpha: float, support: int, count: int) -> np.ndarray:
    """count iid draws from the discrete power-law pmf p(v) = v^(-alpha) / Z
    over v = 1..support.  Handy as an independent oracle for exponent
    recovery: the frequency histogram of the sample has log-log slope
    -alpha once counts are density-normalized.
    """
    if not alpha > 1.0:
        raise DomainError("synth: value sampling needs alpha > 1")
    return ZipfSampler(alpha, support).sample(SplitMix64(seed), count)
