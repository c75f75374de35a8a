"""Printed values that direct integration does not reproduce.

Each test asserts the value obtained by integrating the stated laws and
records the printed value next to it, so a regression toward the printed
number shows up as a failure.
"""

import math

import numpy as np
import pytest
from scipy import integrate

from wrji.distributions import (
    APLL,
    Exponential,
    PhrPair,
    PowerOnUnit,
    Uniform,
    WeibullRate,
    example32_x,
    example32_y,
)
from wrji.fitting import load_dataset, log_likelihood, mle
from wrji.measures import wji, wrdj, wrdj_direct, wrji


def test_uniform_against_cubic_power_law():
    # X uniform on (0,1), Z with sf 1 - x**3
    printed = -0.5
    oracle = -0.5 * integrate.quad(lambda x: x * 3 * x * x, 0, 1)[0]
    assert oracle == pytest.approx(-3 / 8, abs=1e-14)
    value = wji(Uniform(0.0, 1.0), PowerOnUnit(3.0)).value
    assert value == pytest.approx(-3 / 8, abs=1e-12)
    assert abs(value - printed) > 0.1
    # the neighbouring printed values are reproduced
    assert wji(Uniform(0.0, 1.0), Uniform(0.0, 1.0)).value == pytest.approx(-0.25)
    assert round(wji(Uniform(0.0, 1.0), PowerOnUnit(2.0)).value, 2) == -0.33


def _example32_wji_oracle():
    # f = x on [0,1), x/3 on [1,2); g = (2x+1)/4 on [0,1), 1/2 on [1,2)
    a = integrate.quad(lambda x: x * x * (2 * x + 1) / 4, 0, 1)[0]
    b = integrate.quad(lambda x: x * (x / 3) * 0.5, 1, 2)[0]
    return -0.5 * (a + b)


def test_piecewise_example_overall_value():
    printed = -17 / 48
    oracle = _example32_wji_oracle()
    assert oracle == pytest.approx(-43 / 144, abs=1e-14)
    value = wji(example32_x(), example32_y()).value
    assert value == pytest.approx(-43 / 144, abs=1e-10)
    assert abs(value - printed) > 0.05


def _example32_printed(t):
    if t < 1:
        return -(4 - 4 * (4 * t**3 - 3 * t**2)) / (3 * (2 - t * t) * (4 - t * t - t)) - 3 / (2 * (4 - t * t) * (2 - t))
    return -(4 - t * t) / (2 * (4 - t * t) * (2 - t))


@pytest.mark.parametrize(
    "t,oracle",
    [(0.5, -0.407204), (1.0, -0.777778), (1.5, -1.761905)],
)
def test_piecewise_example_residual_curve(t, oracle):
    X, Y = example32_x(), example32_y()
    value = wrji(X, Y, t).value
    assert value == pytest.approx(oracle, abs=1e-6)
    # independent evaluation from the written densities
    f = lambda x: x if x < 1 else x / 3
    g = lambda x: (2 * x + 1) / 4 if x < 1 else 0.5
    pieces = [(t, 1.0), (1.0, 2.0)] if t < 1 else [(t, 2.0)]
    num = sum(integrate.quad(lambda x: x * f(x) * g(x), a, b)[0] for a, b in pieces)
    assert value == pytest.approx(-0.5 * num / (X.sf(t) * Y.sf(t)), abs=1e-10)
    assert abs(value - _example32_printed(t)) > 0.1


def test_piecewise_example_on_1_2_closed_form():
    # on [1,2) the integral is (8 - t**3)/18 and the survival product (4 - t**2)(2 - t)/12;
    # the printed branch reduces to -1/(2(2 - t))
    X, Y = example32_x(), example32_y()
    for t in (1.0, 1.25, 1.75):
        num = (1 / 6) * (8 - t**3) / 3
        expected = -0.5 * num / ((4 - t * t) / 6 * (2 - t) / 2)
        assert wrji(X, Y, t).value == pytest.approx(expected, abs=1e-10)
        assert _example32_printed(t) == pytest.approx(-1 / (2 * (2 - t)))


@pytest.mark.parametrize("theta,lam", [(1.0, 2.0), (0.5, 3.0)])
@pytest.mark.parametrize("t", [0.5, 1.0])
def test_exponential_pair_spurious_factor(theta, lam, t):
    s = theta + lam
    printed_wji = -theta * lam * math.exp(t * s) / (2 * s * s)
    printed_res = -theta * lam * (t * s + 1) / (2 * s * s * math.exp(-t * s))
    X, Y = Exponential(theta), Exponential(lam)
    assert wji(X, Y).value == pytest.approx(-theta * lam / (2 * s * s), abs=1e-12)
    assert wrji(X, Y, t).value == pytest.approx(-theta * lam * (t * s + 1) / (2 * s * s), abs=1e-12)
    assert wrji(X, Y, t, route="quadrature").value == pytest.approx(wrji(X, Y, t).value, abs=1e-9)
    assert abs(wji(X, Y).value - printed_wji) > 0.01
    assert abs(wrji(X, Y, t).value - printed_res) > 0.01


@pytest.mark.parametrize("theta,lam", [(1.0, 2.0), (0.5, 3.0)])
@pytest.mark.parametrize("t", [0.5, 1.0])
def test_weibull_pair_spurious_factor(theta, lam, t):
    s = theta + lam
    printed_wji = -theta * lam * math.exp(t * t * s) / (s * s)
    printed_res = -theta * lam * (t * t * s + 1) / (2 * s * s * math.exp(-t * t * s))
    X, Y = WeibullRate(theta, 2.0), WeibullRate(lam, 2.0)
    assert wji(X, Y).value == pytest.approx(-theta * lam / (s * s), abs=1e-12)
    res = wrji(X, Y, t).value
    assert res == pytest.approx(-theta * lam * (t * t * s + 1) / (s * s), abs=1e-12)
    assert wrji(X, Y, t, route="quadrature").value == pytest.approx(res, abs=1e-9)
    # without the exponential factor the printed residual form is exactly half
    assert printed_res * math.exp(-t * t * s) == pytest.approx(res / 2)
    assert abs(wji(X, Y).value - printed_wji) > 0.01


@pytest.mark.parametrize("gamma", [0.5, 2.0, 3.0])
@pytest.mark.parametrize("t", [0.3, 1.0])
def test_phr_discrimination_exponent(gamma, t):
    # printed rewrite uses (Fbar(x)/Fbar(t))**(gamma+1) and integrates from 0;
    # the definition gives exponent gamma-1 over (t, inf)
    base = WeibullRate(0.8, 1.5)
    Y = PhrPair(base, gamma)
    st = float(base.sf(t))

    def kernel(x, p):
        sx = base.sf(x)
        return 0.5 * x * (base.pdf(x) / st) ** 2 * (1 - gamma * (sx / st) ** p) if sx > 0 else 0.0

    fixed = integrate.quad(lambda x: kernel(x, gamma - 1), t, np.inf)[0]
    printed = integrate.quad(lambda x: kernel(x, gamma + 1), 0, np.inf)[0]
    value = wrdj(base, Y, t).value
    assert value == pytest.approx(fixed, abs=1e-8)
    assert wrdj_direct(base, Y, t).value == pytest.approx(value, abs=1e-8)
    assert abs(value - printed) > 1e-3


def test_apll_published_fit_is_a_local_maximum():
    data = load_dataset("bladder_cancer_128").values
    printed = (1.7118, 4.9174, 2.0976)
    local = mle("APLL", data, starts=[(1.7, 5.0, 2.0)])
    assert local.params == pytest.approx(printed, rel=0.01)
    best = mle("APLL", data)
    assert best.loglik > local.loglik + 1.0
    assert best.params[2] < 0.01
    # the two optima are both proper densities
    for p in (best.params, local.params):
        d = APLL(*p)
        hi = float(d.quantile(0.5))
        mass = integrate.quad(d.pdf, 0, hi)[0] + integrate.quad(d.pdf, hi, np.inf, limit=200)[0]
        assert mass == pytest.approx(1.0, abs=1e-7)
    assert log_likelihood("APLL", printed, data) == pytest.approx(local.loglik, abs=0.01)

