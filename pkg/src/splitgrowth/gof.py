"""Kolmogorov-Smirnov goodness of fit with Monte-Carlo p-values.

The p-value follows the refit bootstrap: synthetic data sets are drawn
from the fitted law, each is refitted, and its KS distance is measured
against its own fit. The p-value is the fraction of synthetic distances
at least as large as the observed one (ties count against the model).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analytic import in_cdf, in_pmf_table, out_cdf, sample_in, sample_out
from .fit import GAMMA_HI, DegenerateData, Kind, fit
from .histogram import DegreeHistogram
from .rng import DEFAULT_SEED, make_rng

DEFAULT_NSYNTH = 1000


@dataclass(frozen=True)
class GofResult:
    D: float
    p_value: float
    n_synth: int
    seed: int
    gamma_hat: float
    kind: Kind
    sample_size: int
    synthetic_D: np.ndarray = field(repr=False, compare=False, default=None)


def model_cdf(gamma, kind, x):
    if Kind(kind) is Kind.OUT:
        return out_cdf(gamma, x)
    return in_cdf(gamma, x)


def ks_statistic(hist, gamma, kind):
    """``max_x |S(x) - F(x)|`` over all integers ``1..max degree``.

    ``S`` is constant between observed degrees while ``F`` only grows, so
    it is enough to look at each observed degree and the integer just
    before it.
    """
    if hist.is_empty():
        raise DegenerateData("empty histogram")
    x = hist.degrees
    s = np.cumsum(hist.counts) / hist.k
    s_before = np.concatenate([[0.0], s[:-1]])
    f_at = model_cdf(gamma, kind, x)
    below = x - 1
    f_below = np.where(below >= 1, model_cdf(gamma, kind, np.maximum(below, 1)), 0.0)
    return float(max(np.max(np.abs(s - f_at)), np.max(np.abs(s_before - f_below))))


class _Sampler:
    """Draws synthetic degree samples from one fitted law."""

    def __init__(self, gamma, kind):
        self.gamma = gamma
        self.kind = Kind(kind)
        self.in_dist = in_pmf_table(gamma) if self.kind is Kind.IN else None

    def __call__(self, n, rng):
        if self.kind is Kind.OUT:
            return sample_out(self.gamma, rng, n)
        return sample_in(self.in_dist, rng, n)


def sample_dataset(gamma, kind, n_nodes, rng, sampler=None):
    """Histogram of ``n_nodes`` independent draws from the fitted law."""
    if int(n_nodes) != n_nodes or n_nodes < 1:
        raise ValueError("n_nodes must be a positive integer")
    sampler = sampler or _Sampler(gamma, kind)
    return DegreeHistogram.from_degrees(sampler(int(n_nodes), rng))


def _refit_gamma(hist, kind):
    try:
        return fit(hist, kind).gamma_hat
    except DegenerateData:
        # every synthetic degree is 1: the likelihood peaks at the bracket edge
        return GAMMA_HI


def pvalue(data_D, synthetic_D):
    synthetic_D = np.asarray(synthetic_D)
    return float(np.count_nonzero(synthetic_D >= data_D)) / len(synthetic_D)


def mc_pvalue(hist, kind, n_synth=DEFAULT_NSYNTH, seed=DEFAULT_SEED, *, workers=1, refit=True):
    """Fit ``hist``, then estimate the KS p-value from ``n_synth`` replicas.

    Replica ``i`` draws from its own stream derived from ``(seed, i)``, so
    the result does not depend on ``workers``. Synthetic sets have the
    same node count as the data. ``refit=False`` compares each replica
    against the data's fit instead of its own; that is not a calibrated
    test and exists only for comparison.
    """
    kind = Kind(kind)
    if n_synth < 1:
        raise ValueError("n_synth must be positive")
    res = fit(hist, kind)
    g = res.gamma_hat
    data_D = ks_statistic(hist, g, kind)
    sampler = _Sampler(g, kind)
    n = hist.k

    def replica(i):
        rng = make_rng(seed, i)
        synth = sample_dataset(g, kind, n, rng, sampler)
        gi = _refit_gamma(synth, kind) if refit else g
        return ks_statistic(synth, gi, kind)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            synth_D = np.fromiter(ex.map(replica, range(n_synth)), float, n_synth)
    else:
        synth_D = np.fromiter(map(replica, range(n_synth)), float, n_synth)
    return GofResult(data_D, pvalue(data_D, synth_D), n_synth, int(seed), g, kind, n, synth_D)
