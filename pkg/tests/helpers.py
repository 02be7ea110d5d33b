"""Deterministic sample generators shared across tests.

Everything is seeded through the package's own counter-based PRNG so test
data is identical on every run and platform.
"""

import numpy as np

from tailscope import SplitMix64


def unit_samples(seed: int, n: int) -> np.ndarray:
    return SplitMix64(seed).take_unit(n)


def exp_samples(seed: int, n: int, rate: float = 1.0) -> np.ndarray:
    """Inverse-CDF exponential deviates, strictly positive."""
    return -np.log1p(-unit_samples(seed, n)) / rate


def pareto_samples(seed: int, n: int, tail_index: float, x_min: float = 1.0) -> np.ndarray:
    """Pareto deviates with P(X > x) = (x_min / x)^tail_index."""
    return x_min * np.power(1.0 - unit_samples(seed, n), -1.0 / tail_index)


def normal_samples(seed: int, n: int, mu: float, sigma: float) -> np.ndarray:
    """Box-Muller normal deviates."""
    rng = SplitMix64(seed)
    u1 = rng.take_unit(n)
    u2 = rng.take_unit(n)
    z = np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
    return mu + sigma * z


def random_triples(seed: int, n: int, n_src: int, n_dst: int,
                   max_pkts: int = 9) -> list[tuple[str, str, int]]:
    """Uniform random (source, destination, packets) triples for oracles."""
    rng = SplitMix64(seed)
    src = rng.take_below(n, n_src)
    dst = rng.take_below(n, n_dst)
    pkts = rng.take_below(n, max_pkts) + 1
    return [(f"s{a}", f"d{b}", int(p)) for a, b, p in zip(src, dst, pkts)]


def aggregate_oracle(triples) -> dict[tuple[str, str], int]:
    """Plain hash-map aggregation, the independent route to matrix entries."""
    agg: dict[tuple[str, str], int] = {}
    for s, d, p in triples:
        agg[(s, d)] = agg.get((s, d), 0) + p
    return agg
