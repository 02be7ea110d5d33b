import math

import numpy as np
import pytest

from tailscope import (CensoredBins, DomainError, FAMILY_NAMES,
                       InsufficientDataError, bin_representatives, ccdf,
                       censored_log_likelihood, compare_models, fit_censored,
                       fit_power_law, heavy_tail_diagnostic, log_bin,
                       power_law_bin_loglik, sample_zipf_values)
from tailscope.fitting import _FAMILIES, _moment_init, get_family
from helpers import exp_samples, pareto_samples


# --- power law ----------------------------------------------------------------

def test_exact_line_recovered_to_machine_precision():
    pts = [(x, 100.0 * x ** -2) for x in (1, 2, 4, 8)]
    fit = fit_power_law(pts)
    assert fit.slope_n == pytest.approx(-2.0, abs=1e-12)
    assert fit.intercept_log10k == pytest.approx(2.0, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.points_used == 4


def test_count_scaling_shifts_only_the_intercept():
    pts = [(x, 100.0 * x ** -2) for x in (1, 2, 4, 8)]
    scaled = [(x, 10.0 * y) for x, y in pts]
    a, b = fit_power_law(pts), fit_power_law(scaled)
    assert b.slope_n == pytest.approx(a.slope_n, abs=1e-12)
    assert b.intercept_log10k - a.intercept_log10k == pytest.approx(1.0, abs=1e-12)


def test_exclude_top_drops_highest_x():
    pts = [(1, 100.0), (2, 25.0), (4, 6.25), (8, 1e6)]  # outlier at the top
    fit = fit_power_law(pts, exclude_top=1)
    assert fit.slope_n == pytest.approx(-2.0, abs=1e-12)
    assert fit.points_used == 3
    assert fit.excluded_top_bins == 1


def test_too_few_points_raise():
    with pytest.raises(InsufficientDataError):
        fit_power_law([(1, 10.0)])
    with pytest.raises(InsufficientDataError):
        fit_power_law([(1, 10.0), (2, 5.0), (4, 2.0)], exclude_top=2)


def test_zero_counts_are_a_domain_error():
    with pytest.raises(DomainError):
        fit_power_law([(1, 10.0), (2, 0.0)])
    with pytest.raises(DomainError):
        fit_power_law([(0, 10.0), (2, 5.0)])


def test_zipf_samples_recover_their_exponent():
    values = sample_zipf_values(seed=909, alpha=2.0, support=1_000_000, count=100_000)
    hist = log_bin(values.tolist())
    pts = bin_representatives(hist, density=True)
    fit = fit_power_law(pts, exclude_top=1)
    assert -2.15 <= fit.slope_n <= -1.85
    assert fit.r_squared > 0.95


# --- censored MLE ---------------------------------------------------------------

def test_uniform_single_interval_attains_the_supremum():
    bins = CensoredBins(((0.0, 8.0, 100),))
    r = fit_censored(bins, "uniform")
    a, b = r.params
    # all mass inside [0, 8) means likelihood 1 per observation
    assert r.log_likelihood == pytest.approx(0.0, abs=1e-9)
    assert 0.0 <= a < b <= 8.0 + 1e-9
    assert r.aic == pytest.approx(4.0, abs=1e-8)


def test_exponential_rate_recovered_from_binned_samples():
    x = exp_samples(seed=4242, n=100_000)
    r = fit_censored(CensoredBins.from_values(x), "exponential")
    (lam,) = r.params
    assert 0.95 <= lam <= 1.05
    assert r.converged


def test_normal_symmetric_intervals_center_the_mean():
    bins = CensoredBins(((0.0, 4.0, 500), (6.0, 10.0, 500)))
    r = fit_censored(bins, "normal")
    mu, sigma = r.params
    assert mu == pytest.approx(5.0, abs=1e-3)
    assert sigma > 0


def test_half_normal_rejects_negative_bounds():
    with pytest.raises(DomainError):
        fit_censored(CensoredBins(((-1.0, 1.0, 10),)), "half-normal")


def test_single_observation_is_insufficient():
    with pytest.raises(InsufficientDataError):
        fit_censored(CensoredBins(((1.0, 2.0, 1),)), "exponential")


def test_unknown_family_rejected():
    with pytest.raises(DomainError):
        fit_censored(CensoredBins(((1.0, 2.0, 5),)), "cauchy")


def test_censored_bins_validation():
    with pytest.raises(DomainError):
        CensoredBins(())
    with pytest.raises(DomainError):
        CensoredBins(((2.0, 1.0, 5),))
    with pytest.raises(DomainError):
        CensoredBins(((0.0, 2.0, 5), (1.0, 3.0, 5)))  # overlap
    with pytest.raises(DomainError):
        CensoredBins(((0.0, 2.0, 0),))


def test_fit_never_regresses_below_its_start():
    x = pareto_samples(seed=77, n=2_000, tail_index=1.5)
    bins = CensoredBins.from_values(x)
    m, s = _moment_init(bins)
    for name in FAMILY_NAMES:
        fam = _FAMILIES[name]
        start = tuple(float(p) for p in fam.unpack(fam.init(m, s)))
        ll0 = censored_log_likelihood(bins, name, start)
        r = fit_censored(bins, name)
        assert r.log_likelihood >= ll0 - 1e-9, name


def test_fitted_mass_over_disjoint_bins_is_at_most_one():
    x = exp_samples(seed=88, n=5_000, rate=0.7)
    bins = CensoredBins.from_values(x)
    lo = np.array([iv[0] for iv in bins.intervals])
    up = np.array([iv[1] for iv in bins.intervals])
    for name in FAMILY_NAMES:
        r = fit_censored(bins, name)
        fam = get_family(name)
        mass = float(np.sum(fam.cdf(r.params, up) - fam.cdf(r.params, lo)))
        assert mass <= 1.0 + 1e-9, name


def test_aic_consistent_with_loglik_and_param_count():
    x = exp_samples(seed=99, n=3_000)
    bins = CensoredBins.from_values(x)
    for name in FAMILY_NAMES:
        r = fit_censored(bins, name)
        assert r.aic == pytest.approx(2 * len(r.params) - 2 * r.log_likelihood, rel=1e-12)


# --- model comparison ---------------------------------------------------------

def test_ranking_is_a_stable_total_order():
    x = exp_samples(seed=111, n=2_000)
    bins = CensoredBins.from_values(x)
    r = fit_censored(bins, "exponential")
    twice = compare_models([r, r], None, bins)
    assert [s.model for s in twice] == ["exponential", "exponential"]
    assert twice[0].aic == twice[1].aic


def test_pareto_data_ranks_power_law_first():
    x = pareto_samples(seed=222, n=10_000, tail_index=1.5)
    bins = CensoredBins.from_values(x)
    fits = [fit_censored(bins, f) for f in FAMILY_NAMES]
    pts = [(lo, c / (up - lo)) for lo, up, c in bins.intervals]
    pl = fit_power_law(pts, exclude_top=1)
    ranking = compare_models(fits, pl, bins, density=True)
    assert ranking[0].model == "power-law"


def test_exponential_data_ranks_exponential_above_power_law():
    x = exp_samples(seed=333, n=10_000)
    bins = CensoredBins.from_values(x)
    fits = [fit_censored(bins, f) for f in FAMILY_NAMES]
    pts = [(lo, c / (up - lo)) for lo, up, c in bins.intervals]
    pl = fit_power_law(pts, exclude_top=1)
    ranking = compare_models(fits, pl, bins, density=True)
    order = [s.model for s in ranking]
    assert order.index("exponential") < order.index("power-law")


def test_power_law_loglik_normalizes_over_occupied_bins():
    bins = CensoredBins(((1.0, 2.0, 10), (2.0, 4.0, 5), (4.0, 8.0, 2)))
    pl = fit_power_law([(lo, c) for lo, _, c in bins.intervals])
    ll = power_law_bin_loglik(pl, bins)
    xs = np.array([1.0, 2.0, 4.0])
    w = xs ** pl.slope_n
    p = w / w.sum()
    expected = float(np.dot([10, 5, 2], np.log(p)))
    assert ll == pytest.approx(expected, rel=1e-12)


# --- heavy-tail diagnostic ------------------------------------------------------

def test_exponential_sample_is_light():
    d = heavy_tail_diagnostic(ccdf(exp_samples(seed=444, n=10_000).tolist()))
    assert d.verdict == "light"
    assert d.mu_hat > 0


def test_pareto_sample_is_heavy():
    d = heavy_tail_diagnostic(ccdf(pareto_samples(seed=555, n=10_000, tail_index=1.5).tolist()))
    assert d.verdict == "heavy"
    assert d.ratio_curve[-1][1] > d.threshold_M


def test_small_samples_are_inconclusive():
    d = heavy_tail_diagnostic(ccdf(pareto_samples(seed=666, n=30, tail_index=1.5).tolist()))
    assert d.verdict == "inconclusive"


def test_degenerate_tail_is_inconclusive():
    d = heavy_tail_diagnostic(ccdf([5.0] * 100))
    assert d.verdict == "inconclusive"


def test_ratio_curve_is_ascending_in_x():
    d = heavy_tail_diagnostic(ccdf(exp_samples(seed=777, n=1_000).tolist()))
    xs = [x for x, _ in d.ratio_curve]
    assert xs == sorted(xs)


def test_diagnostic_parameter_validation():
    c = ccdf(exp_samples(seed=888, n=100).tolist())
    with pytest.raises(DomainError):
        heavy_tail_diagnostic(c, tail_fraction=0.0)
    with pytest.raises(DomainError):
        heavy_tail_diagnostic(c, tail_fraction=1.0)
    with pytest.raises(DomainError):
        heavy_tail_diagnostic(c, threshold_m=0.0)
