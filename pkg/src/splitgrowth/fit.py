"""Maximum-likelihood estimation of the splitting probability from degree data."""

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, zeta

from .analytic import in_g1, log_gamma_ratio, tail_exponent
from .histogram import DegreeHistogram

GAMMA_LO = 1e-6
GAMMA_HI = 1.0 - 1e-6
GAMMA_TOL = 1e-6

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class Kind(str, enum.Enum):
    OUT = "out"
    IN = "in"


class Method(str, enum.Enum):
    ANALYTIC = "analytic"
    NUMERIC = "numeric"


class DegenerateData(ValueError):
    """The histogram admits no maximum-likelihood estimate inside (0, 1)."""


@dataclass(frozen=True)
class FitResult:
    gamma_hat: float
    loglik: float
    kind: Kind
    kt_ratio: float
    method: Method
    k: int
    t: int
    dropped_zeros: int = 0


def _require(hist):
    if not isinstance(hist, DegreeHistogram):
        raise TypeError("expected a DegreeHistogram")
    if hist.is_empty():
        raise DegenerateData("histogram has no nodes of positive degree")


def _check_gamma(gamma):
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")


def loglik(hist, gamma, kind):
    """Log-likelihood ``sum_i h_i log f(x_i, gamma)`` of a histogram."""
    _check_gamma(gamma)
    kind = Kind(kind)
    if kind is Kind.OUT:
        k, t = hist.k, hist.t
        return k * math.log(gamma) + (t - k) * math.log1p(-gamma)
    a = tail_exponent(gamma)
    x = hist.degrees.astype(float)
    logg = math.log(in_g1(gamma)) + gammaln(2.0 + a) - log_gamma_ratio(x + 1.0, a)
    logg = np.where(x == 1.0, math.log(in_g1(gamma)), logg)
    return float(np.dot(hist.counts, logg))


def golden_max(f, lo, hi, tol=GAMMA_TOL, max_iter=200):
    """Maximise a unimodal ``f`` on ``[lo, hi]`` by golden-section search.

    Returns ``(x, f(x))``. The bracket ends are compared against the
    interior optimum so a maximum on the boundary is still found.
    """
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    it = 0
    while b - a > tol and it < max_iter:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
        it += 1
    best_x, best_f = (x1, f1) if f1 >= f2 else (x2, f2)
    for edge in (lo, hi):
        fe = f(edge)
        if fe > best_f:
            best_x, best_f = edge, fe
    return best_x, best_f


def fit_out(hist):
    """Closed-form estimate ``gamma_hat = k / t`` for the geometric law."""
    _require(hist)
    k, t = hist.k, hist.t
    if t == k:
        raise DegenerateData("all degrees equal 1: the estimate k/t = 1 lies outside (0, 1)")
    g = k / t
    return FitResult(g, loglik(hist, g, Kind.OUT), Kind.OUT, g, Method.ANALYTIC,
                     k, t, hist.dropped_zeros)


def fit_numeric(hist, kind, lo=GAMMA_LO, hi=GAMMA_HI, tol=GAMMA_TOL):
    """Numerical maximiser of the log-likelihood over ``[lo, hi]``."""
    _require(hist)
    kind = Kind(kind)
    g, ll = golden_max(lambda x: loglik(hist, x, kind), lo, hi, tol)
    return FitResult(g, ll, kind, hist.k / hist.t, Method.NUMERIC,
                     hist.k, hist.t, hist.dropped_zeros)


def fit_in(hist):
    """Numerical estimate for the in-degree law.

    ``kt_ratio`` carries ``k / t`` alongside; the two need not coincide.
    """
    return fit_numeric(hist, Kind.IN)


def fit(hist, kind):
    return fit_out(hist) if Kind(kind) is Kind.OUT else fit_in(hist)


# -- power-law tail -----------------------------------------------------------


@dataclass(frozen=True)
class TailFit:
    alpha: float
    xmin: int
    n_tail: int
    ks: float

    @property
    def stderr(self):
        return (self.alpha - 1.0) / math.sqrt(self.n_tail)


def _tail_alpha(x, c, xmin, lo=1.01, hi=12.0):
    n = c.sum()
    slog = float(np.dot(c, np.log(x)))

    def ll(alpha):
        return -n * math.log(zeta(alpha, xmin)) - alpha * slog

    alpha, _ = golden_max(ll, lo, hi, tol=1e-6)
    return alpha


def fit_tail(hist, xmin=None, min_tail=50):
    """Discrete power-law fit to the upper tail of a histogram.

    For each candidate ``xmin`` the exponent maximises the Hurwitz-zeta
    likelihood of degrees ``>= xmin``; without an explicit ``xmin`` the
    candidate minimising the KS distance of the tail is kept. Candidates
    leaving fewer than ``min_tail`` nodes are skipped.
    """
    _require(hist)
    d, c = hist.degrees, hist.counts
    if xmin is not None:
        candidates = [int(xmin)]
    else:
        tail_n = np.cumsum(c[::-1])[::-1]
        candidates = [int(x) for x, n in zip(d, tail_n) if n >= min_tail and x > 1] or [int(d[0])]
    best = None
    for xm in candidates:
        sel = d >= xm
        x, cc = d[sel].astype(float), c[sel]
        if cc.sum() < 2 or len(x) < 2:
            continue
        alpha = _tail_alpha(x, cc, xm)
        # KS on the tail support
        emp = np.cumsum(cc) / cc.sum()
        norm = zeta(alpha, xm)
        model = 1.0 - zeta(alpha, x + 1.0) / norm
        ks = float(np.max(np.abs(emp - model)))
        if best is None or ks < best.ks:
            best = TailFit(alpha, xm, int(cc.sum()), ks)
    if best is None:
        raise DegenerateData("tail too small to fit")
    return best
