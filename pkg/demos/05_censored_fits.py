#!/usr/bin/env python3
"""Interval-censored MLE: light-tailed families vs binned heavy-tailed data.

Once data is logarithmically binned, each observation is only known up to
its bin: the data is censored.  The censored likelihood sums
count_b * log(F(upper_b) - F(lower_b)) over bins, and each family is
maximized with a derivative-free simplex.  Ranking by AIC shows how badly
light-tailed families lose on heavy-tailed data.
"""

import numpy as np

from tailscope import (CensoredBins, FAMILY_NAMES, SplitMix64, compare_models,
                       fit_censored, fit_power_law)

# Heavy-tailed sample: Pareto with tail index 1.5 via inverse CDF
u = SplitMix64(11).take_unit(20_000)
heavy = np.power(1.0 - u, -1.0 / 1.5)
bins = CensoredBins.from_values(heavy)
print(f"Pareto(1.5) sample binned into {len(bins.intervals)} power-of-2 intervals")

fits = [fit_censored(bins, family) for family in FAMILY_NAMES]
for f in fits:
    params = ", ".join(f"{p:.4g}" for p in f.params)
    print(f"  {f.family:12s} params=({params})  loglik={f.log_likelihood:12.1f}  "
          f"converged={f.converged} in {f.iterations} iterations")

points = [(lo, c / (up - lo)) for lo, up, c in bins.intervals]
pl = fit_power_law(points, exclude_top=1)
print(f"\npower-law line: n = {pl.slope_n:+.3f} (true exponent is -2.5 in density)")

ranking = compare_models(fits, pl, bins, density=True)
print("\nAIC ranking (lower is better):")
for s in ranking:
    print(f"  {s.model:12s} AIC = {s.aic:14.1f}")
print("the power law wins by a huge margin: every light-tailed family has to")
print("starve the deep-tail bins of probability, and pays for each tail count")

# The same machinery recovers parameters when the family is right:
light = -np.log1p(-SplitMix64(12).take_unit(50_000))  # exponential, rate 1
fit = fit_censored(CensoredBins.from_values(light), "exponential")
print(f"\nexponential data, exponential fit: lambda-hat = {fit.params[0]:.4f} (true 1.0)")
