import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from wrji.distributions import (
    Beta,
    Exponential,
    Gamma,
    Lindley,
    LogLogistic,
    PhrPair,
    PowerOnUnit,
    Transformed,
    Uniform,
    WeibullRate,
)
from wrji.errors import SurvivalZeroError
from wrji.measures import (
    bound_suite,
    crj,
    curve,
    dynamic_survival_extropy,
    extropy,
    mrl,
    past_wji,
    phr_forms,
    phr_gamma,
    residual_extropy,
    vitality,
    weighted_discrimination,
    weighted_extropy,
    weighted_residual_extropy,
    wji,
    wji_of_transform,
    wrdj,
    wrdj_direct,
    wrji,
    wrji_phr_closed,
    wrji_relation_constants,
)


def oracle_wrji(X, Y, t):
    """Plain scipy evaluation of the defining integral."""
    hi = min(X.support[1], Y.support[1])
    f = lambda x: x * X.pdf(x) * Y.pdf(x)
    if math.isinf(hi):
        m = max(float(X.isf(1e-3 * X.sf(t))), t + 1.0)
        val = integrate.quad(f, t, m, limit=500, epsabs=1e-13)[0] + integrate.quad(f, m, np.inf, limit=500)[0]
    else:
        pts = [p for p in set(X.breakpoints) | set(Y.breakpoints) if t < p < hi]
        val = integrate.quad(f, t, hi, points=pts or None, limit=500, epsabs=1e-13)[0]
    return -0.5 * val / (X.sf(t) * Y.sf(t))


PAIRS = [
    (Exponential(1.0), Exponential(2.0)),
    (WeibullRate(0.5, 2.0), WeibullRate(1.5, 2.0)),
    (Exponential(1.3), Lindley(0.7)),
    (Gamma(2.0, 1.0), Exponential(2.0)),
    (LogLogistic(2.5, 1.5), WeibullRate(0.8, 1.3)),
    (Uniform(0.0, 1.0), PowerOnUnit(2.0)),
    (Beta(2.0, 3.0), Beta(3.0, 2.0)),
]


# --- single-law measures -------------------------------------------------


def test_extropy_values():
    assert extropy(Uniform(0.0, 1.0)).value == pytest.approx(-0.5, abs=1e-12)
    assert extropy(Exponential(1.0)).value == pytest.approx(-0.25, abs=1e-12)
    assert extropy(Exponential(2.0)).value == pytest.approx(-0.5, abs=1e-12)


def test_weighted_extropy_values():
    assert weighted_extropy(Uniform(0.0, 1.0)).value == pytest.approx(-0.25, abs=1e-12)
    assert weighted_extropy(Exponential(1.0)).value == pytest.approx(-1 / 8, abs=1e-12)
    assert weighted_extropy(PowerOnUnit(2.0)).value == pytest.approx(-0.5, abs=1e-12)


@pytest.mark.parametrize("theta", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("t", [0.0, 0.5, 1.0])
def test_weighted_residual_extropy_exponential(theta, t):
    assert weighted_residual_extropy(Exponential(theta), t).value == pytest.approx(-(2 * t * theta + 1) / 8, abs=1e-12)
    q = weighted_residual_extropy(Exponential(theta), t, route="quadrature").value
    assert q == pytest.approx(-(2 * t * theta + 1) / 8, abs=1e-9)


def test_weighted_residual_extropy_examples():
    assert weighted_residual_extropy(Exponential(1.0), 1.0).value == pytest.approx(-3 / 8)
    assert weighted_residual_extropy(Exponential(5.0), 0.1).value == pytest.approx(-0.25)
    # sf 1 - x**2: (t**2 + 1)/(2 t**2 - 2)
    for t in (0.0, 0.3, 0.7):
        assert weighted_residual_extropy(PowerOnUnit(2.0), t).value == pytest.approx((t * t + 1) / (2 * t * t - 2))


@pytest.mark.parametrize("lam", [0.4, 1.0, 2.5])
@pytest.mark.parametrize("t", [0.0, 0.5, 2.0])
def test_lindley_weighted_residual_extropy_formula(lam, t):
    printed = -((4 * t**3 + 8 * t**2 + 4 * t) * lam**3 + (6 * t**2 + 8 * t + 2) * lam**2 + (6 * t + 4) * lam + 3) / (
        16 * ((t + 1) * lam + 1) ** 2
    )
    d = Lindley(lam)
    assert weighted_residual_extropy(d, t, route="quadrature").value == pytest.approx(printed, abs=1e-9)
    assert oracle_wrji(d, d, t) == pytest.approx(printed, abs=1e-9)


def test_residual_extropy():
    for t in (0.0, 1.0, 3.0):
        assert residual_extropy(Exponential(1.0), t).value == pytest.approx(-0.25, abs=1e-10)
    assert residual_extropy(Uniform(0.0, 1.0), 0.0).value == pytest.approx(-0.5)
    assert residual_extropy(Uniform(0.0, 1.0), 0.5).value == pytest.approx(-1.0)


def test_survival_measures():
    assert crj(Exponential(1.0)).value == pytest.approx(-0.25, abs=1e-10)
    assert crj(Uniform(0.0, 1.0)).value == pytest.approx(-1 / 6, abs=1e-12)
    for theta in (0.5, 2.0):
        for t in (0.0, 1.0, 2.0):
            assert dynamic_survival_extropy(Exponential(theta), t).value == pytest.approx(-1 / (4 * theta), rel=1e-9)


def test_mrl_and_vitality():
    for t in (0.0, 1.0, 4.0):
        assert mrl(Exponential(2.0), t) == pytest.approx(0.5, rel=1e-9)
        assert vitality(Exponential(3.0), t) == pytest.approx(t + 1 / 3, rel=1e-9)
    assert mrl(Uniform(0.0, 1.0), 0.5) == pytest.approx(0.25)
    assert vitality(Uniform(0.0, 1.0), 0.0) == pytest.approx(0.5)
    d = Gamma(2.5, 1.2)
    assert mrl(d, 0.0) == pytest.approx(d.mean(), rel=1e-9)
    for t in np.linspace(0.1, 5.0, 8):
        assert vitality(d, t) - t == pytest.approx(mrl(d, t), rel=1e-8)


# --- two-law measures ----------------------------------------------------


def test_wji_examples():
    U = Uniform(0.0, 1.0)
    assert wji(U, PowerOnUnit(2.0)).value == pytest.approx(-1 / 3, abs=1e-12)
    for theta in (0.3, 1.0, 4.0):
        assert wji(Exponential(theta), Exponential(2 * theta)).value == pytest.approx(-1 / 9, abs=1e-12)
        assert wji(Exponential(theta), Exponential(5 * theta)).value == pytest.approx(-5 / 72, abs=1e-12)
        assert wji(Exponential(theta), Exponential(theta)).value == pytest.approx(-1 / 8, abs=1e-12)


@pytest.mark.parametrize("theta", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("t", [0.0, 0.5, 1.0])
def test_wrji_exponential_residual_formulas(theta, t):
    E = Exponential
    assert wrji(E(theta), E(theta), t).value == pytest.approx(-(2 * t * theta + 1) / 8, abs=1e-12)
    assert wrji(E(2 * theta), E(2 * theta), t).value == pytest.approx(-(4 * t * theta + 1) / 8, abs=1e-12)
    assert wrji(E(5 * theta), E(5 * theta), t).value == pytest.approx(-(10 * t * theta + 1) / 8, abs=1e-12)
    assert wrji(E(2 * theta), E(5 * theta), t).value == pytest.approx(-(35 * t * theta + 5) / 49, abs=1e-12)
    assert wrji(E(theta), E(5 * theta), t).value == pytest.approx(-(30 * t * theta + 5) / 72, abs=1e-12)


def test_wrji_power_vs_uniform():
    for t in (0.0, 0.5, 0.9):
        expected = (t * t + t + 1) / (3 * t * t - 3)
        assert wrji(PowerOnUnit(2.0), Uniform(0.0, 1.0), t).value == pytest.approx(expected, abs=1e-12)
        assert wrdj(PowerOnUnit(2.0), Uniform(0.0, 1.0), t).value == pytest.approx(-(t - 1) / (6 * t + 6), abs=1e-12)


def test_gamma_exponential_example():
    X, Y = Gamma(2.0, 1.0), Exponential(2.0)
    for t in (0.0, 0.5, 1.0, 3.0):
        assert wrji(X, Y, t).value == pytest.approx(-(9 * t * t + 6 * t + 2) / (27 * (t + 1)), abs=1e-10)
        expected = -(36 * t**3 + 78 * t**2 - 34 * t - 49) / (432 * t**2 + 864 * t + 432)
        assert wrdj(X, Y, t).value == pytest.approx(expected, abs=1e-10)
    assert wrdj(X, Y, 0.0).value == pytest.approx(49 / 432, abs=1e-10)


@pytest.mark.parametrize("theta,lam", [(1.3, 0.7), (0.5, 2.0), (2.0, 2.0)])
@pytest.mark.parametrize("t", [0.0, 0.5, 2.0])
def test_exponential_lindley_formula(theta, lam, t):
    printed = -(
        theta * lam**2
        * ((t * t + t) * lam**2 + ((2 * t * t + 2 * t) * theta + 2 * t + 1) * lam + (t * t + t) * theta**2 + (2 * t + 1) * theta + 2)
    ) / (2 * (lam + theta) ** 3 * ((t + 1) * lam + 1))
    X, Y = Exponential(theta), Lindley(lam)
    assert wrji(X, Y, t).value == pytest.approx(printed, abs=1e-12)
    assert oracle_wrji(X, Y, t) == pytest.approx(printed, abs=1e-9)


def test_wrji_errors_on_zero_survival():
    U = Uniform(0.0, 1.0)
    with pytest.raises(SurvivalZeroError):
        wrji(U, U, 1.0)
    with pytest.raises(SurvivalZeroError):
        weighted_residual_extropy(U, 2.0)
    with pytest.raises(SurvivalZeroError):
        wrji(Exponential(1.0), Exponential(1.0), 800.0)


def test_weighted_discrimination():
    U = Uniform(0.0, 1.0)
    assert weighted_discrimination(U, U).value == pytest.approx(0.0, abs=1e-14)
    assert weighted_discrimination(U, PowerOnUnit(2.0)).value == pytest.approx(1 / 12, abs=1e-12)
    assert weighted_discrimination(Exponential(1.0), Exponential(2.0)).value == pytest.approx(-1 / 72, abs=1e-12)


def test_past_wji():
    U = Uniform(0.0, 1.0)
    assert past_wji(U, U, 1.0).value == pytest.approx(-0.25, abs=1e-12)
    X, Y = Exponential(1.0), Exponential(2.0)
    assert past_wji(X, Y, 60.0).value == pytest.approx(wji(X, Y).value, abs=1e-10)


@pytest.mark.parametrize("X,Y", PAIRS, ids=lambda d: d.spec())
def test_wrji_matches_direct_integral(X, Y):
    for t in (0.0, 0.2, 0.6):
        assert wrji(X, Y, t).value == pytest.approx(oracle_wrji(X, Y, t), abs=1e-8)


@pytest.mark.parametrize("X,Y", PAIRS, ids=lambda d: d.spec())
def test_structural_identities(X, Y):
    hi = min(X.isf(0.05), Y.isf(0.05))
    for t in np.linspace(0.0, hi, 7):
        r = wrji(X, Y, t).value
        assert r <= 0.0
        assert wrji(Y, X, t).value == pytest.approx(r, abs=1e-10)
        # decomposition and direct WRDJ integral
        assert weighted_residual_extropy(X, t).value + wrdj(X, Y, t).value == pytest.approx(r, abs=1e-12)
        assert wrdj_direct(X, Y, t).value == pytest.approx(wrdj(X, Y, t).value, abs=1e-8)
        assert wrji(X, X, t).value == pytest.approx(weighted_residual_extropy(X, t).value, abs=1e-8)
    assert wrji(X, Y, 0.0).value == pytest.approx(wji(X, Y).value, abs=1e-10)


@pytest.mark.parametrize("X,Y", PAIRS[:5], ids=lambda d: d.spec())
def test_three_measure_relation(X, Y):
    rng = np.random.default_rng(11)
    for t in rng.uniform(0.05, 2.0, 4):
        rel = wrji_relation_constants(X, Y, t)
        lhs = wji(X, Y).value
        rhs = X.cdf(t) * Y.cdf(t) * rel.past + X.sf(t) * Y.sf(t) * rel.wrji
        assert rhs == pytest.approx(lhs, abs=1e-8)
        assert abs(rel.residual_ac) < 1e-8
        assert abs(rel.residual_k) < 1e-8


def test_relation_constants_examples():
    rel = wrji_relation_constants(Exponential(1.0), Exponential(2.0), 0.0)
    assert rel.a == 1.0 and rel.c == 0.0
    for X, Y, t in [(Exponential(1.0), Exponential(2.0), 0.5), (Uniform(0.0, 1.0), PowerOnUnit(2.0), 0.25)]:
        assert abs(wrji_relation_constants(X, Y, t).residual_ac) < 1e-8


def test_non_positivity():
    for X in (Exponential(2.0), Beta(2.0, 5.0), LogLogistic(3.0, 1.0)):
        assert extropy(X).value <= 0
        assert weighted_extropy(X).value <= 0
        assert crj(X).value <= 0
        assert dynamic_survival_extropy(X, 0.3).value <= 0


def test_curve_kinds():
    X, Y = Exponential(2.0), Exponential(5.0)
    ts = np.linspace(0, 2, 21)
    vals = [m.value for m in curve("wrji", X, Y, ts)]
    np.testing.assert_allclose(vals, -(35 * ts + 5) / 49, atol=1e-12)
    with pytest.raises(ValueError):
        curve("bogus", X, Y, ts)


# --- transform theorem --------------------------------------------------


def test_transform_identity_map():
    X = Gamma(2.0, 1.5)
    v = wji_of_transform(X, lambda x: x, lambda x: np.ones_like(x)).value
    assert v == pytest.approx(weighted_extropy(X).value, abs=1e-10)


@pytest.mark.parametrize(
    "X,phi,dphi,inv",
    [
        (Exponential(1.0), lambda x: 2 * x, lambda x: 2 + 0 * x, lambda y: y / 2),
        (Uniform(0.0, 1.0), lambda x: x**2, lambda x: 2 * x, np.sqrt),
        (WeibullRate(1.0, 1.5), lambda x: np.exp(x) - 1, np.exp, np.log1p),
    ],
)
def test_transform_two_routes(X, phi, dphi, inv):
    via = wji_of_transform(X, phi, dphi).value
    direct = weighted_extropy(Transformed(X, phi, dphi, inv)).value
    assert via == pytest.approx(direct, abs=1e-8)


def test_transform_scaling_matches_exponential():
    # 2 X has rate 1/2
    v = wji_of_transform(Exponential(1.0), lambda x: 2 * x, lambda x: 2 + 0 * x).value
    assert v == pytest.approx(weighted_extropy(Exponential(0.5)).value, abs=1e-10)


def test_transform_rejects_decreasing_map():
    with pytest.raises(ValueError):
        wji_of_transform(Uniform(0.0, 1.0), lambda x: 1 - x, lambda x: -1 + 0 * x)


# --- PHR model ----------------------------------------------------------


def test_phr_closed_examples():
    assert wrji_phr_closed(Uniform(0.0, 1.0), 1.0, 0.0).value == pytest.approx(-0.25)
    assert wrji_phr_closed(Exponential(1.0), 1.0, 0.0).value == pytest.approx(-1 / 8)
    assert wrji_phr_closed(Exponential(1.0), 3.0, 0.5).value == pytest.approx(-9 / 32)
    q = wrji(Exponential(1.0), PhrPair(Exponential(1.0), 3.0), 0.5, route="quadrature").value
    assert q == pytest.approx(-9 / 32, abs=1e-9)


@pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0, 4.0])
@pytest.mark.parametrize("d,t", [(1.0, 0.0), (2.0, 0.5), (3.0, 2.5)])
def test_uniform_phr_characterization(gamma, d, t):
    closed = wrji_phr_closed(Uniform(0.0, d), gamma, t).value
    assert closed == pytest.approx((gamma * t + d) / (2 * (gamma + 1) * (t - d)), rel=1e-12)
    q = wrji(Uniform(0.0, d), PhrPair(Uniform(0.0, d), gamma), t, route="quadrature").value
    assert q == pytest.approx(closed, abs=1e-7)


@pytest.mark.parametrize("k", [1, 2, 3, 6])
@pytest.mark.parametrize("t", [0.0, 0.5, 1.5])
def test_series_system(k, t):
    theta = 0.8
    expected = -k * ((k + 1) * t * theta + 1) / (2 * (k * k + 2 * k + 1))
    assert wrji_phr_closed(Exponential(theta), k, t).value == pytest.approx(expected, abs=1e-12)
    # maximum form
    alt = -(k / (2 * (k + 1))) * (theta * t + 1 / (k + 1))
    assert wrji_phr_closed(Exponential(theta), k, t).value == pytest.approx(alt, abs=1e-12)


def test_phr_gamma_detection():
    assert phr_gamma(Exponential(1.0), Exponential(3.0)) == pytest.approx(3.0)
    assert phr_gamma(WeibullRate(1.0, 2.0), WeibullRate(0.5, 2.0)) == pytest.approx(0.5)
    assert phr_gamma(Exponential(1.0), Gamma(2.0, 1.0)) is None


@pytest.mark.parametrize("base", [Exponential(1.2), WeibullRate(0.7, 1.8), LogLogistic(2.0, 1.0)], ids=lambda d: d.spec())
@pytest.mark.parametrize("gamma", [0.5, 2.0, 3.0])
def test_phr_rewrites_agree(base, gamma):
    for t in (0.0, 0.7):
        forms = phr_forms(base, gamma, t)
        ref = forms["direct"]
        for key in ("hazard_form", "density_form", "remark_identity"):
            assert forms[key] == pytest.approx(ref, abs=1e-8), key
        assert forms["wrdj_form"] == pytest.approx(forms["wrdj_direct"], abs=1e-8)


def test_uniqueness_of_exponential_curves():
    ts = np.linspace(0, 3, 31)
    a = [wrji_phr_closed(Exponential(1.0), 2.0, t).value for t in ts]
    b = [wrji_phr_closed(Exponential(1.1), 2.0, t).value for t in ts]
    assert np.max(np.abs(np.subtract(a, b))) > 1e-6


# --- bounds -------------------------------------------------------------


def _by_name(checks):
    return {c.name: c for c in checks}


def test_bounds_exponential_pair():
    X, Y = Exponential(1.0), Exponential(2.0)
    for t in (0.0, 0.5, 1.0):
        b = _by_name(bound_suite(X, Y, t))
        r = wrji(X, Y, t).value
        assert b["theorem_p2_i"].applicable and b["theorem_p2_i"].holds
        assert b["theorem_p2_i"].bound == pytest.approx(2 * weighted_residual_extropy(X, t).value)
        assert not b["theorem_p2_ii"].applicable
        assert b["vitality_decreasing_hazard"].holds
        assert b["vitality_decreasing_hazard"].bound == pytest.approx(-0.5 * 2.0 * vitality(X, t), rel=1e-9)
        for name in ("mode", "p4_ii", "prop24_hazard_density", "a_t_lower", "remark_wrdj_upper", "theorem25_mrl"):
            assert b[name].holds, name
        assert b["a_t_lower"].measure == pytest.approx(r)


def test_survival_product_bound_is_tight_at_zero():
    for X, Y in PAIRS:
        b = _by_name(bound_suite(X, Y, 0.0))["prop4_survival_product"]
        assert b.bound == pytest.approx(b.measure, abs=1e-12)
        assert b.holds


def test_theorem_p2_second_branch():
    X = WeibullRate(1.0, 1.5)
    b = _by_name(bound_suite(X, PhrPair(X, 0.5), 0.4))
    assert b["theorem_p2_ii"].applicable and b["theorem_p2_ii"].holds
    assert not b["theorem_p2_i"].applicable


def test_inapplicable_bounds_are_skipped():
    b = _by_name(bound_suite(Uniform(0.0, 1.0), PowerOnUnit(2.0), 0.3))
    assert b["mode"].applicable is False and b["mode"].holds is None
    assert b["a_t_lower"].holds


@settings(max_examples=25, deadline=None)
@given(
    theta=st.floats(0.2, 5.0),
    gamma=st.floats(0.2, 6.0),
    t=st.floats(0.0, 3.0),
)
def test_exponential_phr_closed_form_vs_quadrature(theta, gamma, t):
    closed = wrji_phr_closed(Exponential(theta), gamma, t).value
    quad = wrji(Exponential(theta), PhrPair(Exponential(theta), gamma), t, route="quadrature").value
    assert quad == pytest.approx(closed, abs=1e-8, rel=1e-8)
