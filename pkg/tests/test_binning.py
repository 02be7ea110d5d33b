import math

import pytest

from tailscope import DomainError, SplitMix64, bin_representatives, ccdf, log_bin


def test_one_lands_in_unit_bin():
    h = log_bin([1])
    assert h.bins == ((1, 2, 1),)
    assert h.total == 1


def test_five_lands_in_four_eight():
    h = log_bin([5])
    assert h.bins[0].lower == 4
    assert h.bins[0].upper == 8
    assert h.bins[0].count == 1


def test_exact_powers_of_two_get_their_own_lower_bin():
    for d in range(0, 40):
        h = log_bin([1 << d])
        nonzero = [b for b in h.bins if b.count]
        assert nonzero == [(1 << d, 1 << (d + 1), 1)]


def test_rejects_nonpositive_values():
    with pytest.raises(DomainError):
        log_bin([3, 0])
    with pytest.raises(DomainError):
        log_bin([-2])


def test_counts_match_bit_length_oracle():
    values = (SplitMix64(44).take_below(10_000, 1_000_000) + 1).tolist()
    h = log_bin(values)
    oracle: dict[int, int] = {}
    for v in values:
        oracle[v.bit_length() - 1] = oracle.get(v.bit_length() - 1, 0) + 1
    got = {int(math.log2(b.lower)): b.count for b in h.bins if b.count}
    assert got == oracle
    assert h.total == len(values)


def test_each_value_in_exactly_one_bin():
    values = (SplitMix64(45).take_below(2_000, 100_000) + 1).tolist()
    bins = log_bin(values).bins
    for v in values[:500]:
        holders = [b for b in bins if b.lower <= v < b.upper]
        assert len(holders) == 1


def test_bins_contiguous_with_zero_interior():
    h = log_bin([1, 100])
    lowers = [b.lower for b in h.bins]
    assert lowers == [1 << d for d in range(0, 7)]
    assert sum(b.count for b in h.bins) == 2


def test_permutation_invariance():
    values = (SplitMix64(46).take_below(500, 10_000) + 1).tolist()
    assert log_bin(values) == log_bin(list(reversed(values)))


def test_empty_input_gives_empty_histogram():
    h = log_bin([])
    assert h.bins == () and h.total == 0
    assert bin_representatives(h) == []


def test_representative_lower_edge():
    h = log_bin([4, 5, 6])
    assert bin_representatives(h) == [(4, 3)]


def test_representative_geometric_midpoint():
    h = log_bin([4, 5, 6])
    [(x, y)] = bin_representatives(h, representative="geometric")
    assert x == pytest.approx(math.sqrt(32), abs=1e-12)
    assert y == 3


def test_representative_density_divides_by_width():
    h = log_bin([4, 5, 6, 9])
    pts = bin_representatives(h, density=True)
    assert pts == [(4, 3 / 4), (8, 1 / 8)]


def test_representative_mode_validated():
    with pytest.raises(DomainError):
        bin_representatives(log_bin([1]), representative="upper")


def test_ccdf_small_example():
    c = ccdf([1, 2, 3])
    assert c.points == ((1, 1.0), (2, 2 / 3), (3, 1 / 3))
    assert c.n == 3


def test_ccdf_degenerate_sample():
    c = ccdf([7, 7, 7])
    assert c.points == ((7, 1.0),)


def test_ccdf_starts_at_one_and_never_increases():
    values = (SplitMix64(47).take_below(3_000, 500) + 1).tolist()
    c = ccdf(values)
    assert c.points[0][1] == 1.0
    probs = [p for _, p in c.points]
    assert all(a > b for a, b in zip(probs, probs[1:]))
    xs = [x for x, _ in c.points]
    assert xs == sorted(set(values))


def test_ccdf_matches_quadratic_oracle():
    values = (SplitMix64(48).take_below(1_000, 300) + 1).tolist()
    c = ccdf(values)
    n = len(values)
    for x, p in c.points:
        assert p == sum(1 for v in values if v >= x) / n


def test_ccdf_rejects_empty_and_nonpositive():
    with pytest.raises(DomainError):
        ccdf([])
    with pytest.raises(DomainError):
        ccdf([0, 1])
