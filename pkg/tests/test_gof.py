import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitgrowth.analytic import in_pmf_closed, in_pmf_table, out_pmf, sample_in
from splitgrowth.fit import fit
from splitgrowth.gof import ks_statistic, mc_pvalue, pvalue, sample_dataset
from splitgrowth.histogram import DegreeHistogram
from splitgrowth.rng import make_rng

H = DegreeHistogram.from_mapping


def brute_ks(hist, gamma, kind):
    # every integer 1..max degree, model CDF by plain summation of the pmf
    pmf = out_pmf if kind == "out" else in_pmf_closed
    x = np.arange(1, hist.max_degree + 1)
    f = np.cumsum([pmf(gamma, int(i)) for i in x])
    counts = np.zeros(len(x))
    counts[hist.degrees - 1] = hist.counts
    s = np.cumsum(counts) / hist.k
    return float(np.max(np.abs(s - f)))


def misfit_fixture():
    # heavy-tailed small sample: the geometric law fits it badly but not absurdly
    return DegreeHistogram.from_degrees(sample_in(in_pmf_table(0.6), make_rng(4), 100))


# -- KS statistic -------------------------------------------------------------


def test_ks_single_point():
    assert ks_statistic(H({1: 1}), 0.5, "out") == pytest.approx(0.5, abs=1e-15)


def test_ks_hand_enumerated():
    assert ks_statistic(H({1: 5, 2: 5}), 0.5, "out") == pytest.approx(0.25, abs=1e-15)


def test_ks_zero_when_cdf_matches():
    # a finite sample has S(max) = 1 while F(max) < 1, so D = 0 holds only in
    # the limit where the model puts all its mass on the sample's support
    assert ks_statistic(H({1: 1}), 1 - 1e-12, "out") == pytest.approx(0.0, abs=1e-11)
    # S matches F at x=1 and x=2; the only gap is the remaining mass at x=3
    h = H({1: 4, 2: 2, 3: 2})
    assert ks_statistic(h, 0.5, "out") == pytest.approx(0.125, abs=1e-15)
    assert ks_statistic(h, 0.5, "out") == pytest.approx(brute_ks(h, 0.5, "out"), abs=1e-15)


@given(st.dictionaries(st.integers(1, 80), st.integers(1, 40), min_size=1, max_size=10),
       st.floats(0.02, 0.98), st.sampled_from(["out", "in"]))
@settings(max_examples=150)
def test_ks_matches_brute_force(bins, gamma, kind):
    h = H(bins)
    assert ks_statistic(h, gamma, kind) == pytest.approx(brute_ks(h, gamma, kind), abs=1e-12)


@given(st.dictionaries(st.integers(1, 80), st.integers(1, 40), min_size=1, max_size=10),
       st.floats(0.02, 0.98), st.sampled_from(["out", "in"]))
def test_ks_in_unit_interval(bins, gamma, kind):
    assert 0.0 <= ks_statistic(H(bins), gamma, kind) <= 1.0


# -- synthetic data -----------------------------------------------------------


def test_sample_dataset_rejects_zero():
    with pytest.raises(ValueError):
        sample_dataset(0.3, "out", 0, make_rng(1))


@pytest.mark.parametrize("kind", ["out", "in"])
def test_sample_dataset_size(kind):
    assert sample_dataset(0.3, kind, 1234, make_rng(2)).k == 1234


def test_sample_dataset_dkw():
    # DKW: P(D > 0.007) <= 2 exp(-2 * 1e5 * 0.007^2) ~ 1.1e-4
    h = sample_dataset(0.3, "out", 10**5, make_rng(3))
    assert ks_statistic(h, 0.3, "out") < 0.007
    h = sample_dataset(0.3, "in", 10**5, make_rng(3))
    assert ks_statistic(h, 0.3, "in") < 0.007


# -- bootstrap p-value --------------------------------------------------------


@pytest.fixture(scope="module")
def null_out():
    return sample_dataset(0.3, "out", 500, make_rng(10))


def test_p_granularity(null_out):
    r = mc_pvalue(null_out, "out", 1000, seed=1)
    assert r.n_synth == 1000
    assert r.p_value * 1000 == pytest.approx(round(r.p_value * 1000), abs=1e-9)
    assert r.p_value == np.count_nonzero(r.synthetic_D >= r.D) / 1000


def test_result_fields(null_out):
    r = mc_pvalue(null_out, "out", 50, seed=2)
    assert r.gamma_hat == fit(null_out, "out").gamma_hat
    assert r.D == ks_statistic(null_out, r.gamma_hat, "out")
    assert r.sample_size == null_out.k and r.seed == 2
    assert 0 <= r.D <= 1 and 0 <= r.p_value <= 1


@pytest.mark.parametrize("kind", ["out", "in"])
def test_reproducible_across_workers(kind, null_out):
    a = mc_pvalue(null_out, kind, 60, seed=7)
    b = mc_pvalue(null_out, kind, 60, seed=7, workers=4)
    assert a == b
    np.testing.assert_array_equal(a.synthetic_D, b.synthetic_D)
    assert mc_pvalue(null_out, kind, 60, seed=8).synthetic_D.tolist() != a.synthetic_D.tolist()


@given(st.lists(st.floats(0, 1), min_size=1, max_size=50), st.floats(0, 1), st.floats(0, 1))
def test_pvalue_monotone_in_data_D(synth, d1, d2):
    lo, hi = sorted((d1, d2))
    assert pvalue(hi, synth) <= pvalue(lo, synth)


def test_ties_count_against_model():
    assert pvalue(0.2, [0.2, 0.1, 0.3, 0.05]) == 0.5


def test_misfit_rejected():
    # power-law sample tested against the geometric law
    h = DegreeHistogram.from_degrees(sample_in(in_pmf_table(0.3), make_rng(12), 10**4))
    assert mc_pvalue(h, "out", 200, seed=1).p_value < 0.01


def test_refit_rule_is_observable():
    h = misfit_fixture()
    refit = mc_pvalue(h, "out", 1000, seed=5)
    fixed = mc_pvalue(h, "out", 1000, seed=5, refit=False)
    assert refit.D == fixed.D
    # without refitting, replicas look worse than they should and p is inflated
    assert refit.p_value < 0.01 < fixed.p_value
    assert np.mean(refit.synthetic_D) < np.mean(fixed.synthetic_D)


def test_invalid_nsynth(null_out):
    with pytest.raises(ValueError):
        mc_pvalue(null_out, "out", 0)
