#!/usr/bin/env python3
"""The empirical heavy-tail diagnostic.

A distribution is heavy-tailed when its CCDF decays more slowly than every
exponential envelope.  No finite sample can verify that limit, so the
diagnostic fits the best exponential to the upper half of the data and
watches the ratio ccdf(x) / exp(-mu_hat * x): exploding ratio means heavy,
a ratio pinned at or below 1 means light.
"""

import numpy as np

from tailscope import SplitMix64, ccdf, heavy_tail_diagnostic

n = 10_000

u = SplitMix64(21).take_unit(n)
exponential = -np.log1p(-u)
d = heavy_tail_diagnostic(ccdf(exponential.tolist()))
print(f"exponential(1) sample: verdict = {d.verdict!r}, mu_hat = {d.mu_hat:.3f}")
print(f"  ratio at the largest x: {d.ratio_curve[-1][1]:.3g}")

u = SplitMix64(22).take_unit(n)
pareto = np.power(1.0 - u, -1.0 / 1.5)
d = heavy_tail_diagnostic(ccdf(pareto.tolist()))
print(f"\nPareto(1.5) sample:    verdict = {d.verdict!r}, mu_hat = {d.mu_hat:.3f}")
print(f"  ratio at the largest x: {d.ratio_curve[-1][1]:.3g}  (threshold is {d.threshold_M})")
print("  the ratio curve along the tail:")
step = max(1, len(d.ratio_curve) // 8)
for x, r in d.ratio_curve[::step]:
    print(f"    x = {x:12.2f}   ratio = {r:.4g}")

tiny = heavy_tail_diagnostic(ccdf(pareto[:30].tolist()))
print(f"\nonly 30 samples: verdict = {tiny.verdict!r} (too little data, by design)")
