import json
import math

import numpy as np
import pytest
from scipy import stats

from wrji.distributions import GEE, Exponential, LogLogistic, WeibullRate
from wrji.errors import FitError, UnknownFamilyError
from wrji.fitting import (
    FAMILY_TAGS,
    comparison_csv,
    fit_table,
    load_dataset,
    log_likelihood,
    make_distribution,
    mle,
    read_values,
    start_points,
    wrji_model_comparison,
    ks_pvalue,
    ks_statistic,
)
from wrji.measures import weighted_residual_extropy, wrji


@pytest.fixture(scope="module")
def bladder():
    return load_dataset("bladder_cancer_128").values


@pytest.fixture(scope="module")
def guinea():
    return load_dataset("guinea_pigs_72").values


# --- data ----------------------------------------------------------------


def test_datasets_as_printed():
    b = load_dataset("bladder_cancer_128")
    g = load_dataset("guinea_pigs_72")
    assert b.n == 128 and g.n == 72
    assert b.raw[:3] == (2.09, 3.48, 6.94)
    assert g.raw[-2:] == (2.54, 0.77)
    assert np.all(np.diff(b.values) >= 0) and np.all(b.values > 0) and np.all(g.values > 0)
    with pytest.raises(KeyError):
        load_dataset("iris")


def test_read_values():
    np.testing.assert_array_equal(read_values("# x\n1.5\n\n2\n 3e-1 \n"), [1.5, 2.0, 0.3])
    with pytest.raises(ValueError):
        read_values("1\nabc\n")


# --- likelihood ----------------------------------------------------------


def test_loglik_exponential_as_weibull():
    assert log_likelihood("WEI", (1.0, 1.0), [1.0, 1.0]) == pytest.approx(-2.0, abs=1e-14)


@pytest.mark.parametrize("family", FAMILY_TAGS)
def test_loglik_is_pointwise_sum(family, bladder):
    p = start_points(family, bladder)[0]
    d = make_distribution(family, p)
    expected = sum(math.log(float(d.pdf(x))) for x in bladder)
    assert log_likelihood(family, p, bladder) == pytest.approx(expected, rel=1e-12)


def test_loglik_local_maximum_at_published_ll(bladder):
    p = (1.7251, 6.0898)
    base = log_likelihood("LL", p, bladder)
    for i in range(2):
        for f in (0.99, 1.01):
            q = list(p)
            q[i] *= f
            assert log_likelihood("LL", q, bladder) <= base


def test_loglik_invalid_and_zero_density():
    with pytest.raises(ValueError):
        log_likelihood("LL", (-1.0, 1.0), [1.0])
    with pytest.raises(ValueError):
        log_likelihood("LL", (1.0, 1.0), [0.0, 1.0])
    # evaluated in log space, so a far observation stays finite
    assert math.isfinite(log_likelihood("EEG", (2.0, 50.0, 0.5), [1.0, 1e5]))


def test_family_lookup():
    assert make_distribution("wei", (0.5, 2.0)) == WeibullRate(0.5, 2.0)
    with pytest.raises(UnknownFamilyError):
        make_distribution("normal", (0, 1))
    with pytest.raises(ValueError):
        make_distribution("LL", (1.0,))


# --- maximum likelihood -------------------------------------------------


def test_ll_fit(bladder):
    r = mle("LL", bladder)
    assert r.converged
    assert r.params == pytest.approx((1.7251, 6.0898), rel=0.01)
    # scipy's fisk is the same law with c = alpha, scale = lam
    c, _, scale = stats.fisk.fit(bladder, floc=0)
    assert r.params == pytest.approx((c, scale), rel=1e-3)


def test_wei_fit(guinea):
    r = mle("WEI", guinea)
    rate, shape = r.params
    assert (shape, rate) == pytest.approx((1.7962, 0.2934), rel=0.01)
    c, _, scale = stats.weibull_min.fit(guinea, floc=0)
    assert shape == pytest.approx(c, rel=1e-3)
    assert rate == pytest.approx(scale ** (-c), rel=1e-3)


def test_eeg_fit(guinea):
    r = mle("EEG", guinea)
    assert r.params == pytest.approx((3.5144, 1.1081, 0.0343), rel=0.05)


def test_exll_and_gee_fits(bladder, guinea):
    assert mle("ExLL", bladder).params == pytest.approx((1.4276, 20.0321, 2.0701), rel=0.01)
    assert mle("GEE", guinea).params == pytest.approx((1.2899, 3.4676, 0.9118), rel=0.01)


@pytest.mark.parametrize("family", ["LL", "WEI", "GEE"])
def test_mle_not_below_any_start(family, guinea):
    r = mle(family, guinea)
    for s in start_points(family, guinea):
        assert r.loglik >= log_likelihood(family, s, guinea) - 1e-12
    assert len(r.starts) == 5


def test_exponential_data_recover_rate():
    x = Exponential(0.5).sample(4000, seed=2)
    r = mle("WEI", x)
    assert r.params[1] == pytest.approx(1.0, abs=0.05)
    assert r.params[0] == pytest.approx(0.5, rel=0.1)


def test_fit_errors():
    with pytest.raises(FitError):
        mle("LL", [1.0, 2.0], starts=[(-1.0, 1.0)])
    with pytest.raises(ValueError):
        mle("LL", [])
    with pytest.raises(ValueError):
        mle("LL", [1.0, -2.0])


def test_report_serialisation(bladder):
    r = mle("LL", bladder)
    d = json.loads(json.dumps(r.as_dict()))
    assert d["family"] == "LL" and set(d["params"]) == {"alpha", "lam"}
    assert r.distribution == LogLogistic(*r.params)
    table = fit_table([r, mle("ExLL", bladder)])
    lines = table.splitlines()
    assert lines[0].split()[:3] == ["parameter", "LL", "ExLL"]
    labels = [l.split()[0] for l in lines[2:]]
    assert labels == ["alpha", "lam", "a", "loglik", "K-S", "p-value"]


# --- Kolmogorov-Smirnov --------------------------------------------------


def test_ks_at_midpoint_quantiles():
    n = 20
    d = Exponential(1.3)
    x = d.quantile((np.arange(1, n + 1) - 0.5) / n)
    assert ks_statistic(x, d) == pytest.approx(0.5 / n, abs=1e-12)
    assert ks_statistic(x[::-1], d.cdf) == pytest.approx(0.5 / n, abs=1e-12)


def test_ks_matches_scipy():
    x = Exponential(1.0).sample(300, seed=3)
    d = WeibullRate(0.9, 1.1)
    assert ks_statistic(x, d) == pytest.approx(stats.kstest(x, d.cdf).statistic, abs=1e-14)


def test_ks_invariant_under_increasing_map():
    x = Exponential(1.0).sample(100, seed=4)
    d = Exponential(1.2)
    a = ks_statistic(x, d.cdf)
    b = ks_statistic(x**2, lambda y: d.cdf(np.sqrt(y)))
    assert b == pytest.approx(a, abs=1e-14)


def test_ks_pvalue_examples():
    assert ks_pvalue(0.0, 50) == 1.0
    assert ks_pvalue(0.0399, 128) == pytest.approx(0.9870, abs=0.01)
    assert ks_pvalue(0.0351, 128) == pytest.approx(0.9975, abs=0.005)
    assert ks_pvalue(1.0, 100) == pytest.approx(0.0, abs=1e-12)
    # the asymptotic tail is scipy's kstwobign survival
    for D, n in ((0.05, 128), (0.1, 72), (0.2, 40), (0.04, 200)):
        assert ks_pvalue(D, n) == pytest.approx(stats.kstwobign.sf(math.sqrt(n) * D), abs=1e-10)


def test_ks_pvalue_strictly_decreasing():
    p = [ks_pvalue(D, 100) for D in np.linspace(0.04, 0.4, 200)]
    assert np.all(np.diff(p) < 0)
    with pytest.raises(ValueError):
        ks_pvalue(1.5, 10)


def test_published_ks_values(bladder, guinea):
    assert ks_statistic(bladder, LogLogistic(1.7251, 6.0898)) == pytest.approx(0.0399, abs=0.005)
    assert ks_statistic(guinea, GEE(1.2899, 3.4676, 0.9118)) == pytest.approx(0.0870, abs=0.005)


# --- WRJI comparison -----------------------------------------------------


def test_comparison_self_curve_and_layout(guinea):
    ts = [0.0, 0.5, 1.0, 1.5]
    rep = wrji_model_comparison(guinea, "GEE", ["WEI", "GEE"], ts, seed=11)
    X = rep.fits["GEE"].distribution
    for t, v in zip(rep.ts, rep.curves["GEE"]["parametric"]):
        assert v == pytest.approx(weighted_residual_extropy(X, t).value, abs=1e-10)
    W = rep.fits["WEI"].distribution
    assert rep.curves["WEI"]["parametric"][1] == pytest.approx(wrji(X, W, 0.5).value, abs=1e-10)
    assert set(rep.curves) == {"GEE", "WEI"}
    lines = comparison_csv(rep).splitlines()
    assert lines[0] == "t,candidate,parametric,J_n,J_h"
    assert len(lines) == 1 + 2 * len(ts)
    assert math.isfinite(rep.closeness("WEI"))
    # fixed seed gives the same report
    again = wrji_model_comparison(guinea, "GEE", ["WEI"], ts, seed=11, fits=rep.fits)
    assert again.curves["WEI"] == rep.curves["WEI"]


def test_comparison_omits_dead_ages():
    x = Exponential(1.0).sample(40, seed=5)
    rep = wrji_model_comparison(x, "WEI", ["LL"], [0.5, 1e4], seed=1)
    assert rep.ts == (0.5,)
    assert rep.notes and "1e4" in rep.notes[0].replace("10000.0", "1e4")
