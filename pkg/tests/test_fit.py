import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import zeta

from splitgrowth.analytic import in_pmf_table, out_pmf, sample_in, sample_out
from splitgrowth.fit import (GAMMA_HI, GAMMA_LO, DegenerateData, Kind, Method, fit, fit_in,
                             fit_numeric, fit_out, fit_tail, golden_max, loglik)
from splitgrowth.histogram import DegreeHistogram
from splitgrowth.rng import make_rng

H = DegreeHistogram.from_mapping


def direct_loglik(hist, gamma, kind):
    # term by term; the in-degree terms in 30-digit arithmetic since the
    # pmf itself underflows to subnormals for large degrees
    if kind == "out":
        return math.fsum(c * math.log(out_pmf(gamma, int(d)))
                         for d, c in zip(hist.degrees, hist.counts))
    with mpmath.workdps(30):
        g = mpmath.mpf(gamma)
        a = 2 / (1 - g)
        total = mpmath.mpf(0)
        for d, c in zip(hist.degrees.tolist(), hist.counts.tolist()):
            total += c * (mpmath.log((a - 1) / (a + 1)) + mpmath.loggamma(2 + a)
                          + mpmath.loggamma(d + 1) - mpmath.loggamma(d + 1 + a))
        return float(total)


def grid_argmax(hist, kind, step=1e-4):
    grid = np.arange(step, 1.0, step)
    ll = np.array([loglik(hist, g, kind) for g in grid])
    return grid[np.argmax(ll)]


@pytest.fixture(scope="module")
def in_sample():
    d = in_pmf_table(0.3)
    return DegreeHistogram.from_degrees(sample_in(d, make_rng(21), 10**5))


# -- likelihood ---------------------------------------------------------------


def test_loglik_single_point():
    assert loglik(H({1: 1}), 0.5, "out") == pytest.approx(math.log(0.5), abs=1e-15)


@given(st.dictionaries(st.integers(1, 60), st.integers(1, 50), min_size=1, max_size=12),
       st.floats(0.01, 0.99))
def test_out_loglik_closed_form_matches_sum(bins, gamma):
    h = H(bins)
    closed = h.k * math.log(gamma) + (h.t - h.k) * math.log1p(-gamma)
    assert loglik(h, gamma, "out") == pytest.approx(direct_loglik(h, gamma, "out"), rel=1e-10)
    assert loglik(h, gamma, "out") == pytest.approx(closed, rel=1e-12)


@given(st.dictionaries(st.integers(1, 10**6), st.integers(1, 50), min_size=1, max_size=12),
       st.floats(0.01, 0.99))
def test_in_loglik_matches_sum(bins, gamma):
    h = H(bins)
    assert loglik(h, gamma, "in") == pytest.approx(direct_loglik(h, gamma, "in"), rel=1e-9)


def test_in_loglik_finite_on_bracket():
    h = H({1: 4, 2: 3, 17: 1, 5000: 2})
    for g in (GAMMA_LO, 1e-3, 0.5, 0.999, GAMMA_HI):
        assert math.isfinite(loglik(h, g, "in"))


def test_loglik_domain_error():
    for g in (0.0, 1.0, -0.2):
        with pytest.raises(ValueError):
            loglik(H({1: 1}), g, "out")


# -- out-degree estimator -----------------------------------------------------


def test_fit_out_example():
    r = fit_out(H({1: 3, 2: 2, 3: 1}))
    assert (r.k, r.t) == (6, 10)
    assert r.gamma_hat == pytest.approx(0.6, abs=1e-15)
    assert r.method is Method.ANALYTIC and r.kind is Kind.OUT
    assert r.loglik <= 0


def test_fit_out_recovery():
    h = DegreeHistogram.from_degrees(sample_out(0.25, make_rng(5), 10**5))
    assert 0.24 <= fit_out(h).gamma_hat <= 0.26


@given(st.dictionaries(st.integers(1, 40), st.integers(1, 30), min_size=2, max_size=10))
def test_fit_out_is_optimal(bins):
    h = H(bins)
    g = fit_out(h).gamma_hat
    for d in (-0.01, 0.01):
        if 0 < g + d < 1:
            assert loglik(h, g, "out") >= loglik(h, g + d, "out")


@given(st.dictionaries(st.integers(1, 40), st.integers(1, 30), min_size=2, max_size=10))
def test_analytic_and_numeric_out_agree(bins):
    h = H(bins)
    assert fit_numeric(h, "out").gamma_hat == pytest.approx(fit_out(h).gamma_hat, abs=1e-6)


def test_fit_out_degenerate():
    with pytest.raises(DegenerateData):
        fit_out(H({1: 7}))
    with pytest.raises(DegenerateData):
        fit_out(H({}, 3))


@given(st.dictionaries(st.integers(1, 40), st.integers(1, 30), min_size=1, max_size=10))
def test_adding_degree_one_node_raises_out_estimate(bins):
    h = H(bins)
    if h.t == h.k:
        return
    assert fit_out(h.with_node(1)).gamma_hat > fit_out(h).gamma_hat


# -- in-degree estimator ------------------------------------------------------


def test_fit_in_recovery(in_sample):
    r = fit_in(in_sample)
    assert 0.28 <= r.gamma_hat <= 0.32
    assert r.method is Method.NUMERIC
    assert r.kt_ratio == pytest.approx(in_sample.k / in_sample.t)


def test_fit_in_matches_grid(in_sample):
    assert fit_in(in_sample).gamma_hat == pytest.approx(grid_argmax(in_sample, "in"), abs=2e-4)


@pytest.mark.parametrize("bins", [{1: 5, 2: 2, 9: 1}, {3: 1, 4: 2}, {1: 10, 50: 1}])
def test_fit_in_matches_grid_small(bins):
    h = H(bins)
    g = fit_in(h).gamma_hat
    g_grid = grid_argmax(h, "in")
    # on a flat or boundary optimum compare likelihoods instead of locations
    assert abs(g - g_grid) <= 2e-4 or loglik(h, g, "in") >= loglik(h, g_grid, "in") - 1e-9


def test_fit_in_single_point():
    # g_1 grows towards 1 as gamma -> 1, so the maximiser sits at the upper edge
    h = H({1: 1})
    r = fit_in(h)
    assert r.gamma_hat == pytest.approx(grid_argmax(h, "in"), abs=2e-4) or r.gamma_hat > 0.999
    assert loglik(h, r.gamma_hat, "in") >= loglik(h, 0.9999, "in") - 1e-9
    assert 0 < r.gamma_hat < 1


def test_scale_invariance(in_sample):
    small = H({1: 40, 2: 12, 3: 7, 8: 2, 30: 1})
    for h in (small, in_sample):
        for kind in ("out", "in"):
            assert fit(h.scaled(3), kind).gamma_hat == pytest.approx(fit(h, kind).gamma_hat,
                                                                   abs=2e-6)


def test_fit_rejects_empty():
    with pytest.raises(DegenerateData):
        fit_in(H({}, 2))


def test_fit_result_invariants(in_sample):
    for kind in ("out", "in"):
        r = fit(in_sample, kind)
        assert 0 < r.gamma_hat < 1 and r.loglik <= 0


@pytest.mark.slow
def test_recovery_consistency():
    rng = make_rng(31)
    d = in_pmf_table(0.3)
    for kind in ("out", "in"):
        est = []
        for _ in range(50):
            x = sample_out(0.3, rng, 10**4) if kind == "out" else sample_in(d, rng, 10**4)
            est.append(fit(DegreeHistogram.from_degrees(x), kind).gamma_hat)
        assert abs(np.mean(est) - 0.3) < 0.01


# -- optimiser ----------------------------------------------------------------


def test_golden_max_interior_and_boundary():
    x, fx = golden_max(lambda g: -(g - 0.37) ** 2, 0.0, 1.0, tol=1e-9)
    assert x == pytest.approx(0.37, abs=1e-8) and fx <= 0
    x, _ = golden_max(lambda g: g, 0.0, 1.0)
    assert x == 1.0


# -- tail exponent helper -----------------------------------------------------


def test_fit_tail_recovers_zeta_exponent():
    # exact discrete power law from inverse transform on the Hurwitz zeta CDF
    alpha, xmin = 3.0, 5
    n = np.arange(xmin, 200000)
    pmf = n.astype(float) ** -alpha / zeta(alpha, xmin)
    cdf = np.cumsum(pmf)
    u = make_rng(9).random(20000) * cdf[-1]
    x = n[np.searchsorted(cdf, u, side="right")]
    r = fit_tail(DegreeHistogram.from_degrees(x), xmin=xmin)
    assert r.alpha == pytest.approx(alpha, abs=4 * r.stderr)
