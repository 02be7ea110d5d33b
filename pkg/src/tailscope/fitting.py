"""Distribution fitting and the heavy-tail diagnostic.

Three kinds of evidence about tail behavior are produced here:

* an ordinary least-squares power-law fit on log-log binned points,
  optionally dropping the highest bins, which often hold lone outliers;
* interval-censored maximum-likelihood fits of five light-tailed families
  (uniform, normal, half-normal, exponential, Laplace) to binned counts,
  where only the bin of each observation is known;
* a finite-sample surrogate for the heavy-tail criterion that compares the
  empirical tail against the best exponential envelope fitted to it.

Censored fits maximize  sum_b count_b * log(F(upper_b) - F(lower_b))  with
a derivative-free simplex over an unconstrained reparameterization (scale
parameters are optimized in log space).  Initialization is method-of-moments
on interval midpoints, so fitting is fully deterministic.  Model comparison
is by AIC, with the power law scored as a censored multinomial model over
the same bins so all candidates are on one footing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import optimize, special

from .binning import EmpiricalCCDF, LogBinnedHistogram
from .errors import DomainError, InsufficientDataError

PROB_FLOOR = 1e-300       # bin probabilities below this get the flat penalty
LOG_PENALTY = -700.0      # per-observation stand-in for log(0)
_LOG_RATIO_CAP = 690.0    # keeps exp() finite when reporting ratio curves

FAMILY_NAMES = ("uniform", "normal", "half-normal", "exponential", "laplace")


@dataclass(frozen=True)
class PowerLawFit:
    """Log-log linear fit y = k * x^n."""

    slope_n: float
    intercept_log10k: float
    r_squared: float
    points_used: int
    excluded_top_bins: int

    def evaluate(self, x: float) -> float:
        """Model prediction at x, in the space the fit was done in."""
        return 10.0 ** (self.intercept_log10k + self.slope_n * math.log10(x))


@dataclass(frozen=True)
class CensoredBins:
    """Disjoint ascending intervals [lower, upper) with positive counts."""

    intervals: tuple[tuple[float, float, int], ...]

    def __post_init__(self):
        if not self.intervals:
            raise DomainError("fitting: censored data needs at least one interval")
        prev_upper = -math.inf
        for lo, up, count in self.intervals:
            if not lo < up:
                raise DomainError(f"fitting: empty interval [{lo}, {up})")
            if lo < prev_upper:
                raise DomainError("fitting: intervals must be ascending and non-overlapping")
            if count < 1:
                raise DomainError(f"fitting: interval count {count} is below 1")
            prev_upper = up

    def total(self) -> int:
        return sum(c for _, _, c in self.intervals)

    @classmethod
    def from_histogram(cls, hist: LogBinnedHistogram) -> "CensoredBins":
        """Nonempty power-of-2 bins of an integer histogram, as real intervals."""
        ivals = tuple((float(lo), float(up), c) for lo, up, c in hist.bins if c > 0)
        return cls(ivals)

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "CensoredBins":
        """Bin positive reals into power-of-2 intervals [2^d, 2^(d+1)).

        Unlike integer binning, d may be negative here.  Exponents come from
        frexp, so boundary classification is exact.
        """
        counts: dict[int, int] = {}
        for v in values:
            if v <= 0:
                raise DomainError(f"fitting: values must be positive, got {v}")
            mant, exp = math.frexp(v)  # v = mant * 2^exp, 0.5 <= mant < 1
            d = exp - 1
            counts[d] = counts.get(d, 0) + 1
        ivals = tuple((2.0 ** d, 2.0 ** (d + 1), counts[d]) for d in sorted(counts))
        return cls(ivals)


@dataclass(frozen=True)
class CensoredFitResult:
    family: str
    params: tuple[float, ...]
    log_likelihood: float
    aic: float
    converged: bool
    iterations: int


@dataclass(frozen=True)
class ModelScore:
    """One row of a model-comparison ranking."""

    model: str
    aic: float
    log_likelihood: float
    n_params: int


@dataclass(frozen=True)
class TailDiagnostic:
    """Verdict of the empirical heavy-tail test.

    `ratio_curve` holds the empirical CCDF divided by the fitted exponential
    envelope exp(-mu_hat * x) at each distinct tail point, capped so the
    values stay finite.
    """

    mu_hat: float
    ratio_curve: tuple[tuple[float, float], ...]
    verdict: str  # "heavy" | "light" | "inconclusive"
    threshold_M: float
    tail_fraction: float


def fit_power_law(points: Iterable[tuple[float, float]], exclude_top: int = 0) -> PowerLawFit:
    """Least squares for log10(y) = n * log10(x) + log10(k).

    `points` are (x, y) pairs, typically bin representatives.  The
    `exclude_top` highest-x points are dropped before fitting; the top bins
    of heavy-tailed data frequently hold a single extreme entity that
    distorts the slope.
    """
    if exclude_top < 0:
        raise DomainError("fitting: exclude_top must be nonnegative")
    pts = sorted(points, key=lambda p: p[0])
    if exclude_top:
        pts = pts[:len(pts) - exclude_top]
    if len(pts) < 2:
        raise InsufficientDataError(
            f"fitting: need at least 2 points after exclusions, have {len(pts)}")
    for x, y in pts:
        if x <= 0:
            raise DomainError(f"fitting: nonpositive x value {x}")
        if y <= 0:
            raise DomainError(f"fitting: nonpositive y value {y} (zero-count bins cannot be fit)")
    lx = [math.log10(x) for x, _ in pts]
    ly = [math.log10(y) for _, y in pts]
    if max(lx) == min(lx):
        raise InsufficientDataError("fitting: all points share one x value")
    n = len(pts)
    mx = sum(lx) / n
    my = sum(ly) / n
    sxx = sum((v - mx) ** 2 for v in lx)
    sxy = sum((u - mx) * (v - my) for u, v in zip(lx, ly))
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_res = sum((v - (intercept + slope * u)) ** 2 for u, v in zip(lx, ly))
    ss_tot = sum((v - my) ** 2 for v in ly)
    if ss_tot > 0.0:
        r2 = 1.0 - ss_res / ss_tot
    else:
        r2 = 1.0 if ss_res <= 1e-30 else 0.0
    return PowerLawFit(slope_n=slope, intercept_log10k=intercept, r_squared=r2,
                       points_used=n, excluded_top_bins=exclude_top)


# --- censored maximum likelihood ------------------------------------------

@dataclass(frozen=True)
class _Family:
    name: str
    param_names: tuple[str, ...]
    init: Callable[[float, float], list[float]]          # (mean, std) -> theta0
    unpack: Callable[[Sequence[float]], tuple[float, ...]]
    cdf: Callable[[tuple[float, ...], np.ndarray], np.ndarray]
    pdf: Callable[[tuple[float, ...], np.ndarray], np.ndarray]
    nonnegative_support: bool = False

    @property
    def n_params(self) -> int:
        return len(self.param_names)


def _exp_clip(t: float) -> float:
    return math.exp(min(t, 300.0))


def _uniform_cdf(params, x):
    a, b = params
    return np.clip((x - a) / (b - a), 0.0, 1.0)


def _uniform_pdf(params, x):
    a, b = params
    return np.where((x >= a) & (x < b), 1.0 / (b - a), 0.0)


def _normal_cdf(params, x):
    mu, sigma = params
    return special.ndtr((x - mu) / sigma)


def _normal_pdf(params, x):
    mu, sigma = params
    z = (x - mu) / sigma
    return np.exp(-0.5 * z * z) / (sigma * math.sqrt(2.0 * math.pi))


def _halfnorm_cdf(params, x):
    (sigma,) = params
    return special.erf(np.maximum(x, 0.0) / (sigma * math.sqrt(2.0)))


def _halfnorm_pdf(params, x):
    (sigma,) = params
    z = np.maximum(x, 0.0) / sigma
    return np.where(x >= 0.0,
                    math.sqrt(2.0 / math.pi) / sigma * np.exp(-0.5 * z * z), 0.0)


def _expon_cdf(params, x):
    (lam,) = params
    return -np.expm1(-lam * np.maximum(x, 0.0))


def _expon_pdf(params, x):
    (lam,) = params
    return np.where(x >= 0.0, lam * np.exp(-lam * np.maximum(x, 0.0)), 0.0)


def _laplace_cdf(params, x):
    mu, b = params
    z = (x - mu) / b
    lower = 0.5 * np.exp(np.minimum(z, 0.0))
    upper = 1.0 - 0.5 * np.exp(np.minimum(-z, 0.0))
    return np.where(z < 0.0, lower, upper)


def _laplace_pdf(params, x):
    mu, b = params
    return np.exp(-np.abs(x - mu) / b) / (2.0 * b)


_FAMILIES: dict[str, _Family] = {
    "uniform": _Family(
        name="uniform",
        param_names=("a", "b"),
        init=lambda m, s: [m - math.sqrt(3.0) * s, math.log(2.0 * math.sqrt(3.0) * s)],
        unpack=lambda th: (th[0], th[0] + _exp_clip(th[1])),
        cdf=_uniform_cdf,
        pdf=_uniform_pdf,
    ),
    "normal": _Family(
        name="normal",
        param_names=("mu", "sigma"),
        init=lambda m, s: [m, math.log(s)],
        unpack=lambda th: (th[0], _exp_clip(th[1])),
        cdf=_normal_cdf,
        pdf=_normal_pdf,
    ),
    "half-normal": _Family(
        name="half-normal",
        param_names=("sigma",),
        init=lambda m, s: [0.5 * math.log(m * m + s * s)],
        unpack=lambda th: (_exp_clip(th[0]),),
        cdf=_halfnorm_cdf,
        pdf=_halfnorm_pdf,
        nonnegative_support=True,
    ),
    "exponential": _Family(
        name="exponential",
        param_names=("lam",),
        init=lambda m, s: [-math.log(m)],
        unpack=lambda th: (_exp_clip(th[0]),),
        cdf=_expon_cdf,
        pdf=_expon_pdf,
    ),
    "laplace": _Family(
        name="laplace",
        param_names=("mu", "b"),
        init=lambda m, s: [m, math.log(s / math.sqrt(2.0))],
        unpack=lambda th: (th[0], _exp_clip(th[1])),
        cdf=_laplace_cdf,
        pdf=_laplace_pdf,
    ),
}


def get_family(name: str) -> _Family:
    try:
        return _FAMILIES[name]
    except KeyError:
        raise DomainError(f"fitting: unknown family {name!r}, "
                          f"expected one of {', '.join(FAMILY_NAMES)}") from None


def _interval_arrays(bins: CensoredBins) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    lo = np.array([iv[0] for iv in bins.intervals], dtype=float)
    up = np.array([iv[1] for iv in bins.intervals], dtype=float)
    counts = np.array([iv[2] for iv in bins.intervals], dtype=float)
    return lo, up, counts


def _penalized_loglik(probs: np.ndarray, counts: np.ndarray) -> float:
    probs = np.maximum(probs, 0.0)
    ok = probs >= PROB_FLOOR
    terms = np.where(ok, np.log(np.where(ok, probs, 1.0)), LOG_PENALTY)
    return float(np.dot(counts, terms))


def censored_log_likelihood(bins: CensoredBins, family: str,
                            params: tuple[float, ...]) -> float:
    """sum_b count_b * log(F(upper_b) - F(lower_b)) with the log(0) guard."""
    fam = get_family(family)
    lo, up, counts = _interval_arrays(bins)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        probs = fam.cdf(params, up) - fam.cdf(params, lo)
    return _penalized_loglik(probs, counts)


def _moment_init(bins: CensoredBins) -> tuple[float, float]:
    """Count-weighted mean and stdev of interval midpoints."""
    lo, up, counts = _interval_arrays(bins)
    mids = 0.5 * (lo + up)
    n = counts.sum()
    m = float(np.dot(counts, mids) / n)
    var = float(np.dot(counts, (mids - m) ** 2) / n)
    s = math.sqrt(var)
    if s == 0.0:
        # single occupied interval: fall back to its own spread
        s = (bins.intervals[-1][1] - bins.intervals[0][0]) / math.sqrt(12.0)
    return m, s


def fit_censored(bins: CensoredBins, family: str) -> CensoredFitResult:
    """Interval-censored MLE of one family over binned counts.

    Runs Nelder-Mead (absolute function tolerance 1e-10, parameter tolerance
    1e-8, at most 2000 iterations) from the method-of-moments start.  A fit
    that exhausts the budget is returned with converged=False rather than
    raising.  The returned log-likelihood never falls below the value at the
    initialization point.
    """
    fam = get_family(family)
    if bins.total() < 2:
        raise InsufficientDataError("fitting: censored fit needs a total count of at least 2")
    if fam.nonnegative_support and bins.intervals[0][0] < 0.0:
        raise DomainError(f"fitting: {family} requires nonnegative interval bounds")
    lo, up, counts = _interval_arrays(bins)

    def neg_ll(theta: np.ndarray) -> float:
        params = fam.unpack(theta)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            probs = fam.cdf(params, up) - fam.cdf(params, lo)
        if not np.all(np.isfinite(probs)):
            return -LOG_PENALTY * float(counts.sum())
        return -_penalized_loglik(probs, counts)

    theta0 = np.array(fam.init(*_moment_init(bins)), dtype=float)
    f0 = neg_ll(theta0)
    res = optimize.minimize(
        neg_ll, theta0, method="Nelder-Mead",
        options={"fatol": 1e-10, "xatol": 1e-8, "maxiter": 2000, "maxfev": 20000})
    theta, fval, converged = res.x, float(res.fun), bool(res.success)
    if fval > f0:  # simplex must never regress below its start
        theta, fval, converged = theta0, f0, False
    params = tuple(float(p) for p in fam.unpack(theta))
    ll = -fval
    return CensoredFitResult(
        family=family,
        params=params,
        log_likelihood=ll,
        aic=2.0 * fam.n_params - 2.0 * ll,
        converged=converged,
        iterations=int(res.nit),
    )


def fit_all_families(bins: CensoredBins, workers: int = 1) -> tuple[CensoredFitResult, ...]:
    """Fit every family; results always come back in the fixed family order."""
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return tuple(pool.map(lambda f: fit_censored(bins, f), FAMILY_NAMES))
    return tuple(fit_censored(bins, f) for f in FAMILY_NAMES)


def power_law_bin_loglik(pl: PowerLawFit, bins: CensoredBins,
                         representative: str = "lower", density: bool = False) -> float:
    """Censored multinomial log-likelihood of a fitted power law.

    The fitted line is turned into expected bin counts proportional to
    k * x_rep^n (times the bin width when the fit was done in density
    space), normalized over the occupied bins.
    """
    lo, up, counts = _interval_arrays(bins)
    if representative == "geometric":
        xrep = np.sqrt(lo * up)
    elif representative == "lower":
        xrep = lo
    else:
        raise DomainError(f"fitting: unknown representative {representative!r}")
    with np.errstate(over="ignore", under="ignore"):
        weights = xrep ** pl.slope_n
        if density:
            weights = weights * (up - lo)
    total = weights.sum()
    if not math.isfinite(total) or total <= 0.0:
        return LOG_PENALTY * float(counts.sum())
    return _penalized_loglik(weights / total, counts)


def compare_models(results: Sequence[CensoredFitResult], pl: PowerLawFit | None,
                   bins: CensoredBins, representative: str = "lower",
                   density: bool = False) -> tuple[ModelScore, ...]:
    """Rank censored fits and the power law by ascending AIC.

    Ties keep the input order (censored results first, power law last), so
    the ranking is a deterministic total order.
    """
    scores = [ModelScore(model=r.family, aic=r.aic, log_likelihood=r.log_likelihood,
                         n_params=len(r.params))
              for r in results]
    if pl is not None:
        ll = power_law_bin_loglik(pl, bins, representative=representative, density=density)
        scores.append(ModelScore(model="power-law", aic=2.0 * 2 - 2.0 * ll,
                                 log_likelihood=ll, n_params=2))
    return tuple(sorted(scores, key=lambda s: s.aic))


# --- heavy-tail diagnostic --------------------------------------------------

def heavy_tail_diagnostic(c: EmpiricalCCDF, tail_fraction: float = 0.5,
                          threshold_m: float = 10.0) -> TailDiagnostic:
    """Empirical surrogate for the slower-than-exponential tail criterion.

    An exponential rate mu_hat is fitted by maximum likelihood to the upper
    `tail_fraction` of the sample (treated as an unshifted exponential
    sample, which deliberately yields a conservative, slowly decaying
    envelope).  The curve r(x) = ccdf(x) / exp(-mu_hat * x) is then examined
    over the tail:

    * heavy: r exceeds `threshold_m` at the largest observed x and the
      least-squares trend of log r over the last quartile of tail points is
      nondecreasing;
    * light: r stays at or below 1 over that quartile;
    * inconclusive: anything else, a degenerate tail, or a sample smaller
      than 50.
    """
    if not 0.0 < tail_fraction < 1.0:
        raise DomainError("fitting: tail_fraction must be in (0, 1)")
    if threshold_m <= 0.0:
        raise DomainError("fitting: threshold_m must be positive")
    n = c.n
    xs = np.array([p[0] for p in c.points], dtype=float)
    n_ge = np.array([round(p[1] * n) for p in c.points], dtype=float)

    # tail = every observation >= the m-th largest value (ties included)
    m = max(1, math.floor(n * tail_fraction))
    start = int(np.max(np.nonzero(n_ge >= m)[0]))
    txs = xs[start:]
    tge = n_ge[start:]
    tcounts = tge - np.append(tge[1:], 0.0)  # multiplicity of each distinct tail value
    mu_hat = float(tge[0] / np.dot(tcounts, txs))

    log_r = np.log(tge / n) + mu_hat * txs
    curve = tuple((float(x), float(math.exp(min(v, _LOG_RATIO_CAP))))
                  for x, v in zip(txs, log_r))

    verdict = "inconclusive"
    if n >= 50 and len(txs) >= 2:
        q = max(2, math.ceil(len(txs) / 4))
        qx = txs[-q:]
        qy = log_r[-q:]
        xbar = qx.mean()
        denom = float(np.sum((qx - xbar) ** 2))
        trend = float(np.dot(qx - xbar, qy - qy.mean()) / denom) if denom > 0 else 0.0
        if log_r[-1] > math.log(threshold_m) and trend >= 0.0:
            verdict = "heavy"
        elif np.all(qy <= 0.0):
            verdict = "light"
    return TailDiagnostic(mu_hat=mu_hat, ratio_curve=curve, verdict=verdict,
                          threshold_M=threshold_m, tail_fraction=tail_fraction)
