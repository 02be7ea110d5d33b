#!/usr/bin/env python3
"""Power-of-2 binning and the empirical CCDF.

Fan-in values span orders of magnitude, so raw histograms are useless.
Binning by 2^d <= n < 2^(d+1) groups them logarithmically; the CCDF
P(X >= x) shows how slowly the tail decays.
"""

from tailscope import (SynthSpec, bin_representatives, build_matrix, ccdf,
                       dest_fanin, generate, log_bin)

spec = SynthSpec(seed=7, n_records=50_000, n_sources=100_000,
                 n_destinations=5_000, model="zipf", alpha=2.0)
A = build_matrix((r.source, r.destination, r.packets) for r in generate(spec))
fanin = dest_fanin(A)

hist = log_bin(fanin.values)
print(f"{hist.total} destinations over {len(hist.bins)} bins:")
for lower, upper, count in hist.bins:
    bar = "#" * max(1, count.bit_length() * 2) if count else ""
    print(f"  [{lower:6d}, {upper:6d}) {count:6d} {bar}")

print("\nbin representatives (lower edge, raw count):")
print(" ", bin_representatives(hist))
print("density-normalized (count / bin width), the right y for slope fits:")
print(" ", [(x, round(y, 4)) for x, y in bin_representatives(hist, density=True)])

c = ccdf(fanin.values)
print(f"\nCCDF over {c.n} destinations, first/last points:")
for x, p in list(c.points)[:3] + list(c.points)[-3:]:
    print(f"  P(fan-in >= {x:6.0f}) = {p:.6f}")
# A straight CCDF on log-log axes is the visual signature of a power law.
