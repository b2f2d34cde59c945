"""Stationary degree distributions of the splitting model.

Out-degree: geometric, ``f_m = gamma (1 - gamma)**(m - 1)`` for ``m >= 1``.

In-degree: with ``a = 2 / (1 - gamma)``,

    g_n / g_{n-1} = (1 - gamma) n / (2 + (1 - gamma) n)
    g_n = Gamma(n + 1) Gamma(2 + a) / Gamma(n + 1 + a) * g_1
    g_1 = (a - 1) / (a + 1)

which has a power-law tail ``g_n ~ c n**(-a)``. Its survival function has
the closed form ``P(X >= n) = Gamma(a + 1) Gamma(n + 1) / Gamma(n + a)``,
so tail masses and tail sums beyond a finite table are exact.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import gammaln

DEFAULT_TAIL_TOL = 1e-9
MAX_TABLE_LEN = 2**22

_STIRLING_MIN = 100.0


def _check_gamma(gamma):
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")


def _check_support(n):
    n = np.asarray(n)
    if np.any(n < 1):
        raise ValueError("degree must be a positive integer")
    return n


def _stirling_tail(z):
    z2 = z * z
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * z2)) / z2) / z2) / z


def log_gamma_ratio(x, a):
    """``lgamma(x + a) - lgamma(x)`` for ``x, a > 0``, accurate for large ``x``.

    Plain ``gammaln`` differences lose about ``eps * lgamma(x)`` absolute
    accuracy (1e-9 at x ~ 1e6); above ``x = 100`` the Stirling expansions
    are subtracted analytically instead.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty(np.broadcast(x, a).shape)
    big = np.broadcast_to(x >= _STIRLING_MIN, out.shape)
    xb = np.broadcast_to(x, out.shape)
    ab = np.broadcast_to(np.asarray(a, dtype=float), out.shape)
    xs, as_ = xb[~big], ab[~big]
    out[~big] = gammaln(xs + as_) - gammaln(xs)
    xl, al = xb[big], ab[big]
    out[big] = (al * np.log(xl) + (xl + al - 0.5) * np.log1p(al / xl) - al
                + _stirling_tail(xl + al) - _stirling_tail(xl))
    return out if out.ndim else float(out)


# -- out-degree ---------------------------------------------------------------


def out_pmf(gamma, m):
    _check_gamma(gamma)
    m = _check_support(m)
    return gamma * (1.0 - gamma) ** (m - 1)


def out_sf(gamma, m):
    """``P(X >= m)`` for the geometric out-degree law."""
    _check_gamma(gamma)
    return (1.0 - gamma) ** (np.asarray(m) - 1)


def out_cdf(gamma, m):
    _check_gamma(gamma)
    return -np.expm1(np.asarray(m) * np.log1p(-gamma))


def decay_rate(gamma):
    """``beta`` in ``f_m = gamma / (1 - gamma) * exp(-beta m)``."""
    _check_gamma(gamma)
    return -math.log1p(-gamma)


@dataclass(frozen=True)
class OutDist:
    gamma: float

    def __post_init__(self):
        _check_gamma(self.gamma)

    def pmf(self, m):
        return out_pmf(self.gamma, m)

    def cdf(self, m):
        return out_cdf(self.gamma, m)

    def sf(self, m):
        return out_sf(self.gamma, m)

    def mean(self):
        return 1.0 / self.gamma

    def sample(self, rng, size=None):
        return sample_out(self.gamma, rng, size)


def sample_out(gamma, rng, size=None):
    """Inverse-CDF draw(s) from the geometric out-degree law."""
    _check_gamma(gamma)
    u = rng.random(size)
    m = np.ceil(np.log1p(-u) / math.log1p(-gamma))
    m = np.maximum(m, 1).astype(np.int64)
    return int(m) if size is None else m


# -- in-degree ----------------------------------------------------------------


def tail_exponent(gamma):
    """Power-law exponent of the in-degree tail, ``2 / (1 - gamma)``."""
    _check_gamma(gamma)
    return 2.0 / (1.0 - gamma)


def in_g1(gamma):
    a = tail_exponent(gamma)
    return (a - 1.0) / (a + 1.0)


def log_in_pmf(gamma, n):
    a = tail_exponent(gamma)
    n = _check_support(n)
    lg = math.log(in_g1(gamma)) + gammaln(2.0 + a) - log_gamma_ratio(n + 1.0, a)
    return lg


def in_pmf_closed(gamma, n):
    """In-degree probability of degree ``n`` via log-gamma arithmetic."""
    n = _check_support(n)
    p = np.exp(log_in_pmf(gamma, n))
    p = np.where(n == 1, in_g1(gamma), p)
    return p if p.ndim else float(p)


def log_in_sf(gamma, n):
    """``log P(X >= n)`` for the in-degree law (``n >= 1``)."""
    a = tail_exponent(gamma)
    n = np.asarray(n, dtype=float)
    out = gammaln(a + 1.0) - log_gamma_ratio(n + 1.0, a - 1.0)
    return np.where(n <= 1, 0.0, out)


def in_sf(gamma, n):
    r = np.exp(log_in_sf(gamma, n))
    return r if r.ndim else float(r)


def in_cdf(gamma, n):
    """``P(X <= n)``."""
    r = -np.expm1(log_in_sf(gamma, np.asarray(n) + 1))
    return r if r.ndim else float(r)


@dataclass(frozen=True)
class InDist:
    """Tabulated in-degree law with an exactly accounted tail.

    ``pmf_table[i]`` is ``g_{i+1}``; ``tail_mass`` is the probability of
    degrees beyond the table.
    """

    gamma: float
    a: float
    pmf_table: np.ndarray
    tail_mass: float
    cdf_table: np.ndarray

    @property
    def size(self):
        return len(self.pmf_table)

    def pmf(self, n):
        n = _check_support(n)
        inside = n <= self.size
        idx = np.clip(n - 1, 0, self.size - 1)
        out = np.where(inside, self.pmf_table[idx], in_pmf_closed(self.gamma, np.maximum(n, 1)))
        return out if out.ndim else float(out)

    def cdf(self, n):
        return in_cdf(self.gamma, n)

    def sf(self, n):
        return in_sf(self.gamma, n)

    def mean(self):
        """Mean from the table plus the exact tail contribution."""
        N = self.size
        n = np.arange(1, N + 1, dtype=float)
        gN = self.pmf_table[-1]
        a = self.a
        tail = gN * ((N + 1.0) * (N + 2.0) / (a - 2.0) - (N + 1.0) / (a - 1.0))
        return float(np.dot(n, self.pmf_table) + tail)

    def extend(self, length):
        """Table continued by the ratio recurrence to at least ``length`` entries."""
        if length <= self.size:
            return self
        n = np.arange(self.size + 1, length + 1, dtype=float)
        c = 1.0 - self.gamma
        more = self.pmf_table[-1] * np.cumprod(c * n / (2.0 + c * n))
        table = np.concatenate([self.pmf_table, more])
        return _make_in(self.gamma, self.a, table)

    def with_table(self, table):
        """Same law with a replaced PMF table (for perturbation checks)."""
        table = np.asarray(table, dtype=float)
        return replace(self, pmf_table=table, cdf_table=np.cumsum(table))

    def sample(self, rng, size=None):
        return sample_in(self, rng, size)


def _make_in(gamma, a, table):
    table.setflags(write=False)
    tail = float(in_sf(gamma, len(table) + 1))
    cdf = np.cumsum(table)
    cdf.setflags(write=False)
    return InDist(gamma, a, table, tail, cdf)


def _table_length(gamma, tail_tol, max_len, min_len):
    # smallest N with P(X > N) < tail_tol, by exponential then binary search
    log_tol = math.log(tail_tol)

    def ok(N):
        return float(log_in_sf(gamma, N + 1)) < log_tol

    hi = max(min_len, 1)
    while not ok(hi) and hi < max_len:
        hi = min(hi * 2, max_len)
    if not ok(hi):
        return max_len
    lo = max(min_len, hi // 2)
    if ok(lo):
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def in_pmf_table(gamma, tail_tol=DEFAULT_TAIL_TOL, *, max_len=MAX_TABLE_LEN, min_len=1):
    """Build the in-degree table by the ratio recurrence.

    The table grows until the exact remaining tail mass drops below
    ``tail_tol`` or reaches ``max_len`` entries. Past the cap the tail mass
    is still exact, so table plus tail always sums to one.
    """
    _check_gamma(gamma)
    if not 0.0 < tail_tol <= 1e-6:
        raise ValueError("tail_tol must lie in (0, 1e-6]")
    a = tail_exponent(gamma)
    N = _table_length(gamma, tail_tol, max_len, min_len)
    c = 1.0 - gamma
    n = np.arange(2, N + 1, dtype=float)
    ratios = c * n / (2.0 + c * n)
    table = in_g1(gamma) * np.concatenate([[1.0], np.cumprod(ratios)])
    return _make_in(gamma, a, table)


def _tail_search(gamma, q, start):
    # smallest n > start with P(X > n) <= q
    log_q = math.log(q) if q > 0 else -math.inf

    def ok(n):
        return float(log_in_sf(gamma, n + 1)) <= log_q

    lo, hi = start, max(2 * start, start + 1)
    while not ok(hi):
        lo, hi = hi, hi * 2
        if hi > 2**62:
            return hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def sample_in(dist, rng, size=None):
    """Inverse-CDF draw(s) from an ``InDist``.

    Draws falling past the table are resolved exactly against the
    closed-form survival function.
    """
    u = rng.random(size)
    flat = np.atleast_1d(u)
    idx = np.searchsorted(dist.cdf_table, flat, side="right")
    out = idx.astype(np.int64) + 1
    for j in np.flatnonzero(idx >= dist.size):
        out[j] = _tail_search(dist.gamma, 1.0 - flat[j], dist.size)
    return int(out[0]) if size is None else out.reshape(np.shape(u))


# -- master-equation residuals -----------------------------------------------


def check_stationarity(dist, n_max):
    """Largest absolute residual of the stationary balance equations.

    For ``OutDist`` this checks
    ``(1 + m - 2 gamma) f_m = (1 - gamma)(m - 1) f_{m-1} + 2 gamma sum_{r > m} f_r``;
    for ``InDist``
    ``g_n [2 (n - 1)/n + (1 - gamma) n] = 2 sum_{l > n} g_l / l + (1 - gamma)(n - 1) g_{n-1}``,
    over ``2 <= m <= n_max``. Sums past ``n_max`` (or past the table) use
    exact tail identities.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    gamma = dist.gamma
    c = 1.0 - gamma
    m = np.arange(1, n_max + 1, dtype=float)
    if isinstance(dist, OutDist):
        f = dist.pmf(m.astype(np.int64))
        # above[i] = sum_{r > m_i} f_r
        beyond = c**n_max
        above = np.concatenate([np.cumsum(f[::-1])[::-1][1:], [0.0]]) + beyond
        lhs = (1.0 + m - 2.0 * gamma) * f
        rhs = np.empty_like(f)
        rhs[1:] = c * (m[1:] - 1.0) * f[:-1] + 2.0 * gamma * above[1:]
        return float(np.max(np.abs(lhs[1:] - rhs[1:])))
    if isinstance(dist, InDist):
        dist = dist.extend(n_max + 1)
        g = dist.pmf_table
        N = len(g)
        l = np.arange(1, N + 1, dtype=float)
        # sum_{l > N} g_l / l == g_N / a exactly
        weighted = g / l
        above = np.concatenate([np.cumsum(weighted[::-1])[::-1][1:], [0.0]]) + g[-1] / dist.a
        gm = g[:n_max]
        lhs = gm * (2.0 * (m - 1.0) / m + c * m)
        rhs = np.empty_like(gm)
        rhs[1:] = 2.0 * above[1:n_max] + c * (m[1:] - 1.0) * gm[:-1]
        return float(np.max(np.abs(lhs[1:] - rhs[1:])))
    raise TypeError(f"unsupported distribution {type(dist).__name__}")
