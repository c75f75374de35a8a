"""Extropy-type information measures and their weighted residual versions.

Every measure is evaluated either from a registered closed form or by
adaptive quadrature. ``route="auto"`` picks the closed form when one is
registered for the given family (pair) and falls back to quadrature
otherwise; ``route="quadrature"`` forces numerical integration, which is
how the closed forms are checked.

Notation: ``f, F, Fbar`` are the density, cdf and survival function of
``X``; ``g, G, Gbar`` those of ``Y``.  All weighted measures carry the
length-biasing factor ``x``.

=================================  ==========================================
function                           definition
=================================  ==========================================
``extropy(X)``                     -1/2 int f^2
``residual_extropy(X, t)``         -1/2 int_t (f/Fbar(t))^2
``weighted_extropy(X)``            -1/2 int x f^2
``weighted_residual_extropy``      -1/2 int_t x (f/Fbar(t))^2
``wji(X, Y)``                      -1/2 int x f g
``wrji(X, Y, t)``                  -1/2 int_t x (f/Fbar(t)) (g/Gbar(t))
``wrdj(X, Y, t)``                  wrji(X, Y, t) - weighted_residual_extropy(X, t)
``weighted_discrimination(X, Y)``  1/2 int x f (f - g)
``past_wji(X, Y, t)``              -1/2 int_0^t x f g / (F(t) G(t))
``crj(X)``                         -1/2 int Fbar^2
``dynamic_survival_extropy``       -1/2 int_t (Fbar/Fbar(t))^2
``mrl(X, t)``                      int_t Fbar / Fbar(t)
``vitality(X, t)``                 E[X | X > t] = t + mrl(X, t)
=================================  ==========================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .distributions import (
    Distribution,
    Exponential,
    Lindley,
    PhrPair,
    PowerOnUnit,
    Transformed,
    Uniform,
    WeibullRate,
)
from .errors import DivergentIntegralError, QuadratureError, SurvivalZeroError
from .quadrature import DEFAULT_TOL, integrate, residual_quantile_points

__all__ = [
    "BoundCheck",
    "MeasureValue",
    "RelationConstants",
    "bound_suite",
    "crj",
    "curve",
    "dynamic_survival_extropy",
    "extropy",
    "mrl",
    "past_wji",
    "phr_forms",
    "phr_gamma",
    "residual_extropy",
    "vitality",
    "weighted_discrimination",
    "weighted_extropy",
    "weighted_residual_extropy",
    "wji",
    "wji_of_transform",
    "wrdj",
    "wrdj_direct",
    "wrji",
    "wrji_phr_closed",
    "wrji_relation_constants",
]

CLOSED = "closed_form"
QUAD = "quadrature"
SF_FLOOR = 1e-300
_DENSITY_TAIL = 1e-14
_SURVIVAL_TAIL = 1e-16


@dataclass(frozen=True)
class MeasureValue:
    """Value of a measure together with how it was obtained."""

    value: float
    route: str
    abs_error: float

    def __float__(self):
        return float(self.value)


def _closed(value: float) -> MeasureValue:
    return MeasureValue(float(value), CLOSED, 4.0 * np.finfo(float).eps * abs(value))


# ---------------------------------------------------------------------------
# integration helpers
# ---------------------------------------------------------------------------


def _log_sf(d: Distribution, t: float) -> float:
    s = float(d.sf(t))
    if not s > SF_FLOOR:
        raise SurvivalZeroError(f"survival function of {d.spec()} is zero at t={t!r}")
    return math.log(s)


def _lower(dists, t) -> float:
    return max([t] + [d.support[0] for d in dists])


def _upper(dists, t, eps) -> float:
    """Truncation point for integrals weighted by the densities of ``dists``."""
    fin = [d.support[1] for d in dists if math.isfinite(d.support[1])]
    if fin:
        return min(fin)
    cands = []
    for d in dists:
        q = eps * float(d.sf(t))
        cands.append(float(d.isf(max(q, 1e-310))))
    return min(cands)


def _points(dists, t, a, b):
    pts = set()
    for d in dists:
        pts.update(d.breakpoints)
        pts.update(residual_quantile_points(d, max(t, d.support[0])))
    return sorted(p for p in pts if a < p < b)


def _quad(fn, a, b, tol, points=()) -> MeasureValue:
    if b <= a:
        return MeasureValue(0.0, QUAD, 0.0)
    try:
        r = integrate(fn, a, b, tol=tol, points=points)
    except QuadratureError as exc:
        best = exc.result
        if best is None or not math.isfinite(best.value) or best.abs_error_estimate > 1e-3 * max(1.0, abs(best.value)):
            raise DivergentIntegralError(str(exc)) from exc
        raise
    return MeasureValue(r.value, QUAD, r.abs_error_estimate)


def _density_integral(dists, t, weight, tol, lower=None) -> MeasureValue:
    """``int_t^inf weight(x) * prod f_d(x)/Fbar_d(t) dx`` evaluated in log space."""
    logs = sum(_log_sf(d, t) for d in dists)
    a = _lower(dists, t) if lower is None else lower
    b = _upper(dists, t, _DENSITY_TAIL)

    def fn(x):
        lp = sum(d.logpdf(x) for d in dists)
        return weight(x) * math.exp(lp - logs) if np.isfinite(lp) else 0.0

    phr = [d for d in dists if isinstance(d, PhrPair) and d.gamma < 1 and math.isfinite(d.support[1])]
    if phr and b >= phr[0].support[1]:
        return _phr_survival_scale(dists, phr[0].base, weight, logs, a, b, tol)
    return _quad(fn, a, b, tol, _points(dists, t, a, b))


def _phr_survival_scale(dists, base, weight, logs, a, b, tol) -> MeasureValue:
    # Fbar**(gamma - 1) is singular at a finite right end, where 1 - F(x)
    # loses all precision in x. Integrating over s = Fbar_base(x) keeps s exact.
    def logpdf(d, x, s):
        if isinstance(d, PhrPair) and d.base == base:
            return math.log(d.gamma) + float(base.logpdf(x)) + (d.gamma - 1.0) * math.log(s)
        return float(d.logpdf(x))

    def fn(s):
        if s <= 0.0:
            return 0.0
        x = float(base.isf(s))
        lf = float(base.logpdf(x))
        lp = sum(logpdf(d, x, s) for d in dists)
        return weight(x) * math.exp(lp - lf - logs) if np.isfinite(lp) else 0.0

    s_hi = float(base.sf(a))
    pts = sorted(float(base.sf(p)) for p in base.breakpoints if a < p < b)
    return _quad(fn, 0.0, s_hi, tol, pts)


def _check_route(route):
    if route not in ("auto", CLOSED, QUAD):
        raise ValueError(f"unknown route {route!r}")


def _dispatch(closed_value, quad_fn, route):
    _check_route(route)
    if route != QUAD and closed_value is not None:
        return _closed(closed_value)
    if route == CLOSED:
        raise LookupError("no closed form registered for this input")
    return quad_fn()


# ---------------------------------------------------------------------------
# closed-form registry
# ---------------------------------------------------------------------------


def _normalize(d: Distribution) -> Distribution:
    """Rewrite PHR-derived laws that stay inside their base family."""
    if isinstance(d, PhrPair):
        base = _normalize(d.base)
        if isinstance(base, Exponential):
            return Exponential(d.gamma * base.rate)
        if isinstance(base, WeibullRate):
            return WeibullRate(d.gamma * base.rate, base.shape)
        if isinstance(base, PowerOnUnit) and base.k == 1.0:
            return PhrPair(Uniform(0.0, 1.0), d.gamma)
        return PhrPair(base, d.gamma)
    if isinstance(d, Uniform) and d.c == 0.0 and d.d == 1.0:
        return PowerOnUnit(1.0)
    return d


def _as_uniform_phr(d):
    """``(c, d, gamma)`` when ``d`` is a uniform law or a PHR transform of one."""
    if isinstance(d, Uniform):
        return d.c, d.d, 1.0
    if isinstance(d, PowerOnUnit) and d.k == 1.0:
        return 0.0, 1.0, 1.0
    if isinstance(d, PhrPair) and isinstance(d.base, Uniform):
        return d.base.c, d.base.d, d.gamma
    return None


def _wrji_exp_pair(th, lam, t):
    s = th + lam
    return -th * lam * (t * s + 1.0) / (2.0 * s * s)


def _wrji_weibull2_pair(th, lam, t):
    s = th + lam
    return -th * lam * (t * t * s + 1.0) / (s * s)


def _wrji_exp_lindley(th, lam, t):
    num = (
        (t * t + t) * lam**2
        + ((2.0 * t * t + 2.0 * t) * th + 2.0 * t + 1.0) * lam
        + (t * t + t) * th**2
        + (2.0 * t + 1.0) * th
        + 2.0
    )
    return -th * lam**2 * num / (2.0 * (lam + th) ** 3 * ((t + 1.0) * lam + 1.0))


def _wrji_lindley_self(lam, t):
    num = (4 * t**3 + 8 * t**2 + 4 * t) * lam**3 + (6 * t**2 + 8 * t + 2) * lam**2 + (6 * t + 4) * lam + 3
    return -num / (16.0 * ((t + 1.0) * lam + 1.0) ** 2)


def _wrji_power_pair(j, k, t):
    if t == 0.0:
        return -0.5 * j * k / (j + k)
    return -0.5 * j * k * (1.0 - t ** (j + k)) / ((j + k) * (1.0 - t**j) * (1.0 - t**k))


def _wrji_uniform_phr(d, gamma, t):
    return (gamma * t + d) / (2.0 * (gamma + 1.0) * (t - d))


def _closed_wrji(X, Y, t):
    """Closed-form WRJI or ``None`` when the pair is not registered."""
    X, Y = _normalize(X), _normalize(Y)
    for A, B in ((X, Y), (Y, X)):
        if isinstance(A, Exponential) and isinstance(B, Exponential):
            return _wrji_exp_pair(A.rate, B.rate, max(t, 0.0))
        if isinstance(A, WeibullRate) and isinstance(B, WeibullRate) and A.shape == 2.0 and B.shape == 2.0:
            return _wrji_weibull2_pair(A.rate, B.rate, max(t, 0.0))
        if isinstance(A, Exponential) and isinstance(B, Lindley):
            return _wrji_exp_lindley(A.rate, B.lam, max(t, 0.0))
        if isinstance(A, PowerOnUnit) and isinstance(B, PowerOnUnit):
            return _wrji_power_pair(A.k, B.k, min(max(t, 0.0), 1.0))
    if isinstance(X, Lindley) and isinstance(Y, Lindley) and X.lam == Y.lam:
        return _wrji_lindley_self(X.lam, max(t, 0.0))
    ux, uy = _as_uniform_phr(X), _as_uniform_phr(Y)
    if ux is not None and uy is not None and ux[:2] == uy[:2] and 1.0 in (ux[2], uy[2]):
        c, d, _ = ux
        gamma = ux[2] * uy[2]
        return _wrji_uniform_phr(d, gamma, max(t, c))
    return None


# ---------------------------------------------------------------------------
# single-distribution measures
# ---------------------------------------------------------------------------


def extropy(X: Distribution, route: str = "auto", tol: float = DEFAULT_TOL) -> MeasureValue:
    """Extropy ``-1/2 int f^2``."""
    closed = None
    if isinstance(X, Exponential):
        closed = -X.rate / 4.0
    elif isinstance(X, Uniform):
        closed = -0.5 / (X.d - X.c)
    return _dispatch(closed, lambda: _neg_half(_density_integral([X, X], X.support[0], lambda x: 1.0, tol)), route)


def residual_extropy(X: Distribution, t: float, route: str = "auto", tol: float = DEFAULT_TOL) -> MeasureValue:
    """Residual extropy ``-1/2 int_t (f/Fbar(t))^2``."""
    _log_sf(X, t)
    closed = None
    if isinstance(X, Exponential):
        closed = -X.rate / 4.0
    elif isinstance(X, Uniform):
        closed = -0.5 / (X.d - max(t, X.c))
    return _dispatch(closed, lambda: _neg_half(_density_integral([X, X], t, lambda x: 1.0, tol)), route)


def weighted_extropy(X: Distribution, route: str = "auto", tol: float = DEFAULT_TOL) -> MeasureValue:
    """Weighted extropy ``-1/2 int x f^2``."""
    return wji(X, X, route=route, tol=tol)


def weighted_residual_extropy(X: Distribution, t: float, route: str = "auto", tol: float = DEFAULT_TOL) -> MeasureValue:
    """Weighted residual extropy ``-1/2 int_t x (f/Fbar(t))^2``."""
    return wrji(X, X, t, route=route, tol=tol)


def crj(X: Distribution, route: str = "auto", tol: float = DEFAULT_TOL) -> MeasureValue:
    """Cumulative residual extropy ``-1/2 int Fbar^2``."""
    return dynamic_survival_extropy(X, X.support[0], route=route, tol=tol)


def dynamic_survival_extropy(X: Distribution, t: float, route: str = "auto", tol: float = DEFAULT_TOL) -> MeasureValue:
    """Dynamic survival extropy ``-1/2 int_t (Fbar(x)/Fbar(t))^2 dx``."""
    _log_sf(X, t)
    closed = None
    if isinstance(X, Exponential):
        closed = -0.25 / X.rate
    elif isinstance(X, Uniform):
        closed = -(X.d - max(t, X.c)) / 6.0
    return _dispatch(closed, lambda: _neg_half(_survival_integral(X, t, 2.0, lambda x: 1.0, tol)), route)


def _survival_integral(X, t, power, weight, tol) -> MeasureValue:
    """``int_t^inf weight(x) (Fbar(x)/Fbar(t))**power dx``."""
    st = float(X.sf(t))
    lo, hi = X.support
    a = max(t, lo)
    b = hi if math.isfinite(hi) else float(X.isf(max(_SURVIVAL_TAIL * st, 1e-310)))
    pts = [p for p in list(X.breakpoints) + residual_quantile_points(X, a) if a < p < b]
    return _quad(lambda x: weight(x) * (float(X.sf(x)) / st) ** power, a, b, tol, pts)


def mrl(X: Distribution, t: float, tol: float = DEFAULT_TOL) -> float:
    """Mean residual life ``int_t Fbar / Fbar(t)``."""
    _log_sf(X, t)
    if isinstance(X, Exponential):
        return 1.0 / X.rate
    if isinstance(X, Uniform):
        return 0.5 * (X.c + X.d) - t if t < X.c else 0.5 * (X.d - t)
    lo = X.support[0]
    head = lo - t if t < lo else 0.0
    return head + _survival_integral(X, t, 1.0, lambda x: 1.0, tol).value


def vitality(X: Distribution, t: float, tol: float = DEFAULT_TOL) -> float:
    """Vitality ``E[X | X > t] = t + mrl(X, t)``."""
    return t + mrl(X, t, tol)


def _neg_half(mv: MeasureValue) -> MeasureValue:
    return MeasureValue(-0.5 * mv.value, mv.route, 0.5 * mv.abs_error)


# ---------------------------------------------------------------------------
# two-distribution measures
# ---------------------------------------------------------------------------


def wji(X: Distribution, Y: Distribution, route: str = "auto", tol: float = DEFAULT_TOL) -> MeasureValue:
    """Weighted extropy inaccuracy ``-1/2 int x f g``."""
    t0 = min(X.support[0], Y.support[0])
    return wrji(X, Y, t0, route=route, tol=tol)


def wrji(X: Distribution, Y: Distribution, t: float, route: str = "auto", tol: float = DEFAULT_TOL) -> MeasureValue:
    """Weighted residual extropy inaccuracy.

    Parameters
    ----------
    X, Y : Distribution
        True and assigned laws.
    t : float
        Age; both survival functions must be positive at ``t``.
    route : {"auto", "closed_form", "quadrature"}

    Returns
    -------
    MeasureValue
        ``-1/2 int_t^inf x f(x) g(x) dx / (Fbar(t) Gbar(t))``, never positive.

    Raises
    ------
    SurvivalZeroError
        If either survival function vanishes (or underflows) at ``t``.
    """
    _log_sf(X, t)
    _log_sf(Y, t)
    closed = _closed_wrji(X, Y, t) if route != QUAD else None
    return _dispatch(closed, lambda: _neg_half(_density_integral([X, Y], t, lambda x: x, tol)), route)


def wrdj(X: Distribution, Y: Distribution, t: float, route: str = "auto", tol: float = DEFAULT_TOL) -> MeasureValue:
    """Weighted residual discrimination, ``wrji - weighted_residual_extropy``."""
    a = wrji(X, Y, t, route=route, tol=tol)
    b = weighted_residual_extropy(X, t, route=route, tol=tol)
    r = CLOSED if a.route == b.route == CLOSED else QUAD
    return MeasureValue(a.value - b.value, r, a.abs_error + b.abs_error)


def wrdj_direct(X: Distribution, Y: Distribution, t: float, tol: float = DEFAULT_TOL) -> MeasureValue:
    """WRDJ from its defining integral ``1/2 int_t x (f/Fbar(t)) (f/Fbar(t) - g/Gbar(t))``."""
    lsx, lsy = _log_sf(X, t), _log_sf(Y, t)
    a = _lower([X, Y], t)
    b = _upper([X], t, _DENSITY_TAIL)

    def fn(x):
        fx = math.exp(float(X.logpdf(x)) - lsx)
        gy = math.exp(float(Y.logpdf(x)) - lsy)
        return 0.5 * x * fx * (fx - gy)

    return _quad(fn, a, b, tol, _points([X, Y], t, a, b))


def weighted_discrimination(X: Distribution, Y: Distribution, route: str = "auto", tol: float = DEFAULT_TOL) -> MeasureValue:
    """Weighted discrimination ``1/2 int x f (f - g)`` = weighted extropy minus wji."""
    a = weighted_extropy(X, route=route, tol=tol)
    b = wji(X, Y, route=route, tol=tol)
    r = CLOSED if a.route == b.route == CLOSED else QUAD
    return MeasureValue(a.value - b.value, r, a.abs_error + b.abs_error)


def past_wji(X: Distribution, Y: Distribution, t: float, tol: float = DEFAULT_TOL) -> MeasureValue:
    """Weighted past inaccuracy ``-1/2 int_0^t x f g / (F(t) G(t))``."""
    Ft, Gt = float(X.cdf(t)), float(Y.cdf(t))
    if not (Ft > SF_FLOOR and Gt > SF_FLOOR):
        raise SurvivalZeroError(f"distribution function is zero at t={t!r}")
    a = max(X.support[0], Y.support[0])
    b = min(t, X.support[1], Y.support[1])
    pts = [p for p in list(X.breakpoints) + list(Y.breakpoints) if a < p < b]
    norm = math.log(Ft) + math.log(Gt)

    def fn(x):
        lp = float(X.logpdf(x)) + float(Y.logpdf(x))
        return x * math.exp(lp - norm) if np.isfinite(lp) else 0.0

    return _neg_half(_quad(fn, a, b, tol, pts))


def wji_of_transform(
    X: Distribution, phi: Callable, dphi: Callable, tol: float = DEFAULT_TOL
) -> MeasureValue:
    """Weighted extropy of ``phi(X)`` as ``-1/2 int f(x)^2 phi(x)/phi'(x) dx``.

    ``phi`` must be strictly increasing and differentiable on the support of
    ``X``; this is checked on a grid of quantiles.
    """
    grid = np.asarray(X.quantile(np.linspace(0.001, 0.999, 201)), dtype=float)
    slopes = np.array([float(dphi(x)) for x in grid])
    values = np.array([float(phi(x)) for x in grid])
    if np.any(slopes <= 0.0) or np.any(np.diff(values) <= 0.0):
        raise ValueError("phi must be strictly increasing with positive derivative")
    lo = X.support[0]
    return _neg_half(_density_integral([X, X], lo, lambda x: float(phi(x)) / float(dphi(x)), tol))


def curve(kind: str, X: Distribution, Y: Distribution | None, ts, route: str = "auto", tol: float = DEFAULT_TOL):
    """Evaluate a residual measure on a grid of ages; returns a list of MeasureValue."""
    table = {
        "wrji": lambda t: wrji(X, Y, t, route, tol),
        "wrdj": lambda t: wrdj(X, Y, t, route, tol),
        "weighted_residual_extropy": lambda t: weighted_residual_extropy(X, t, route, tol),
        "residual_extropy": lambda t: residual_extropy(X, t, route, tol),
        "dynamic_survival_extropy": lambda t: dynamic_survival_extropy(X, t, route, tol),
        "past_wji": lambda t: past_wji(X, Y, t, tol),
    }
    if kind not in table:
        raise ValueError(f"unknown curve kind {kind!r}")
    return [table[kind](float(t)) for t in ts]


# ---------------------------------------------------------------------------
# PHR model
# ---------------------------------------------------------------------------


def phr_gamma(X: Distribution, Y: Distribution) -> float | None:
    """PHR exponent ``gamma`` with ``Gbar = Fbar**gamma``, or ``None`` if not recognized."""
    if isinstance(Y, PhrPair) and Y.base == X:
        return Y.gamma
    if X == Y:
        return 1.0
    nx, ny = _normalize(X), _normalize(Y)
    if isinstance(nx, Exponential) and isinstance(ny, Exponential):
        return ny.rate / nx.rate
    if isinstance(nx, WeibullRate) and isinstance(ny, WeibullRate) and nx.shape == ny.shape:
        return ny.rate / nx.rate
    return None


def wrji_phr_closed(base: Distribution, gamma: float, t: float, route: str = "auto", tol: float = DEFAULT_TOL) -> MeasureValue:
    """WRJI between ``base`` and its PHR transform with exponent ``gamma``.

    Closed forms exist for exponential bases
    (``-gamma ((gamma+1) t theta + 1) / (2 (gamma+1)^2)``, which covers the
    series system of ``k`` i.i.d. exponential components with ``gamma = k``)
    and uniform bases (``(gamma t + d) / (2 (gamma+1) (t - d))``).
    """
    return wrji(base, PhrPair(base, gamma), t, route=route, tol=tol)


def phr_forms(base: Distribution, gamma: float, t: float, tol: float = 1e-9) -> dict:
    """WRJI and WRDJ of a PHR pair through the equivalent integral rewrites.

    Keys
    ----
    direct
        The defining integral with ``g`` of the derived law.
    hazard_form
        ``-(gamma/2) int_t x mu^2 (Fbar(x)/Fbar(t))**(gamma+1)``.
    density_form
        ``-(gamma/2) int_t x f^2 Fbar^(gamma-1)(x) / Fbar^(gamma+1)(t)``.
    remark_identity
        ``Fbar(t)**-(gamma+1) * wji + c4(t)`` with
        ``c4 = (gamma/2) int_0^t x f^2 Fbar^(gamma-1) / Fbar^(gamma+1)(t)``.
    wrdj_direct, wrdj_form
        WRDJ by its definition and by
        ``1/2 int_t x (f/Fbar(t))^2 [1 - gamma (Fbar(x)/Fbar(t))**(gamma-1)]``.
    """
    Y = PhrPair(base, gamma)
    lsf = _log_sf(base, t)
    a = _lower([base], t)
    b = _upper([base, Y], t, _DENSITY_TAIL)
    pts = _points([base], t, a, b)

    def haz(x):
        lf, ls = float(base.logpdf(x)), math.log(float(base.sf(x)))
        return x * math.exp(2.0 * (lf - ls) + (gamma + 1.0) * (ls - lsf))

    def dens(x):
        lf, ls = float(base.logpdf(x)), math.log(float(base.sf(x)))
        return x * math.exp(2.0 * lf + (gamma - 1.0) * ls - (gamma + 1.0) * lsf)

    def wrdj_fn(x):
        lf, ls = float(base.logpdf(x)), math.log(float(base.sf(x)))
        return 0.5 * x * math.exp(2.0 * (lf - lsf)) * (1.0 - gamma * math.exp((gamma - 1.0) * (ls - lsf)))

    lo = base.support[0]
    c4 = 0.0
    if t > lo:
        c4 = 0.5 * gamma * _quad(dens, lo, t, tol, [p for p in base.breakpoints if lo < p < t]).value
    wji_val = wji(base, Y, route=QUAD, tol=tol).value
    return {
        "direct": wrji(base, Y, t, route=QUAD, tol=tol).value,
        "hazard_form": -0.5 * gamma * _quad(haz, a, b, tol, pts).value,
        "density_form": -0.5 * gamma * _quad(dens, a, b, tol, pts).value,
        "remark_identity": math.exp(-(gamma + 1.0) * lsf) * wji_val + c4,
        "wrdj_direct": wrdj_direct(base, Y, t, tol=tol).value,
        "wrdj_form": _quad(wrdj_fn, a, b, tol, pts).value,
    }


# ---------------------------------------------------------------------------
# relations and bounds
# ---------------------------------------------------------------------------


class RelationConstants(NamedTuple):
    """Constants linking WRJI with WJI and the past measure at age ``t``.

    ``wrji = a (wji + c)`` and ``wrji = k1 wji - k2 past``.
    """

    a: float
    c: float
    k1: float
    k2: float
    wji: float
    wrji: float
    past: float
    residual_ac: float
    residual_k: float


def wrji_relation_constants(X: Distribution, Y: Distribution, t: float, tol: float = DEFAULT_TOL) -> RelationConstants:
    """Evaluate ``a(t) = 1/(Fbar Gbar)``, ``c(t) = 1/2 int_0^t x f g`` and ``k1, k2``.

    The residuals of both identities are reported so callers can check them.
    """
    sx, sy = float(X.sf(t)), float(Y.sf(t))
    _log_sf(X, t)
    _log_sf(Y, t)
    lo = max(X.support[0], Y.support[0])
    hi = min(t, X.support[1], Y.support[1])
    pts = [p for p in list(X.breakpoints) + list(Y.breakpoints) if lo < p < hi]
    c = 0.5 * _quad(lambda x: x * float(X.pdf(x)) * float(Y.pdf(x)), lo, hi, tol, pts).value
    a = 1.0 / (sx * sy)
    w = wji(X, Y, tol=tol).value
    r = wrji(X, Y, t, tol=tol).value
    Ft, Gt = float(X.cdf(t)), float(Y.cdf(t))
    k1 = a
    k2 = Ft * Gt / (sx * sy)
    past = past_wji(X, Y, t, tol=tol).value if Ft > SF_FLOOR and Gt > SF_FLOOR else 0.0
    return RelationConstants(
        a, c, k1, k2, w, r, past,
        residual_ac=r - a * (w + c),
        residual_k=r - (k1 * w - k2 * past),
    )


class BoundCheck(NamedTuple):
    """One inequality: ``kind`` is ``"lower"`` or ``"upper"`` for ``target``."""

    name: str
    kind: str
    target: str
    bound: float
    measure: float
    applicable: bool
    holds: bool | None
    note: str = ""


def _improper(fn, a, b, dist, t, tol=1e-9) -> float:
    """``int_a^b fn`` allowing divergence, which is reported as ``inf``.

    Divergence is detected by comparing two truncations: near a finite end
    point where the integrand may blow up, or at two tail quantiles of
    ``dist`` on an infinite range.
    """
    st = float(dist.sf(t))
    if math.isfinite(b):
        cuts = [b - (b - a) * 1e-7, b - (b - a) * 1e-11]
    else:
        cuts = [float(dist.isf(1e-8 * st)), float(dist.isf(max(1e-16 * st, 1e-310)))]
    pts = [p for p in list(dist.breakpoints) + residual_quantile_points(dist, t) if a < p < cuts[0]]
    try:
        v1 = integrate(fn, a, cuts[0], tol=tol, points=pts).value
        v2 = v1 + integrate(fn, cuts[0], cuts[1], tol=tol).value
    except QuadratureError:
        return math.inf
    if not math.isfinite(v2):
        return math.inf
    if abs(v2 - v1) > 1e-6 * max(1.0, abs(v2)):
        return math.inf
    if math.isfinite(b):
        try:
            return v1 + integrate(fn, cuts[0], b, tol=tol).value
        except QuadratureError:
            return math.inf
    return v2


def _decreasing(fn, xs) -> bool:
    vals = np.array([float(fn(x)) for x in xs])
    return bool(np.all(np.diff(vals) <= 1e-12 * np.maximum(1.0, np.abs(vals[:-1]))))


def bound_suite(X: Distribution, Y: Distribution, t: float, tol: float = 1e-9) -> list[BoundCheck]:
    """Evaluate the lower and upper bounds for WRJI at age ``t``.

    Bounds that need the PHR model are evaluated only when ``Y`` is
    recognised as ``Gbar = Fbar**gamma`` (see :func:`phr_gamma`); others
    carry their own applicability conditions (decreasing hazard of ``Y``,
    decreasing density of ``X`` with ``f(0) <= 1``, bounded density).
    Inapplicable bounds are reported with ``applicable=False`` and
    ``holds=None``.  Bounds whose defining integral diverges evaluate to
    ``-inf`` and hold trivially.
    """
    w = wrji(X, Y, t, tol=tol).value
    j0 = wji(X, Y, tol=tol).value
    wre = weighted_residual_extropy(X, t, tol=tol).value
    sx, sy = float(X.sf(t)), float(Y.sf(t))
    lo, hi = X.support
    a = max(t, lo)
    gamma = phr_gamma(X, Y)
    phr = gamma is not None
    slack = 1e-8 * max(1.0, abs(w))
    out: list[BoundCheck] = []

    def add(name, kind, bound, applicable, note="", target="wrji", measure=None):
        m = w if measure is None else measure
        holds = None
        if applicable:
            holds = bool(m >= bound - slack) if kind == "lower" else bool(m <= bound + slack)
        out.append(BoundCheck(name, kind, target, float(bound) if applicable else math.nan, m, applicable, holds, note))

    def hz(x):
        return float(X.hazard(x))

    # valid without PHR
    add("a_t_lower", "lower", j0 / (sx * sy), True, "wrji >= wji / (Fbar(t) Gbar(t))")
    add("prop4_survival_product", "lower", sx * sy * j0, True, "wrji >= Fbar(t) Gbar(t) wji")
    add("remark_extropy_lower", "lower", wre, True, "wrji >= weighted residual extropy of X")
    add("remark_wrdj_upper", "upper", -wre, True, "wrdj <= -weighted residual extropy", "wrdj", w - wre)
    grid = np.linspace(a, a + 10.0 * max(mrl(Y, t), 1e-3), 60) if not math.isfinite(Y.support[1]) else np.linspace(a, Y.support[1], 61)[:-1]
    dec_hazard = _decreasing(lambda x: float(Y.hazard(x)), grid)
    add(
        "vitality_decreasing_hazard", "lower",
        -0.5 * float(Y.hazard(t)) * vitality(X, t) if dec_hazard else math.nan,
        dec_hazard, "wrji >= -1/2 hazard_Y(t) V(X;t); needs decreasing hazard of Y",
    )

    if not phr:
        for name in ("hazard_squared", "log_survival", "c1_hazard", "prop24_hazard_density", "p4_i", "p4_ii",
                     "mode", "remark29", "theorem_p2_i", "theorem_p2_ii", "theorem25_mrl", "prop40_upper"):
            add(name, "lower" if name != "prop40_upper" and name != "theorem_p2_ii" else "upper", math.nan, False, "needs PHR model")
        return out

    g = gamma
    d2 = -g / (2.0 * sx)
    hsq = _improper(lambda x: x * hz(x) ** 2, a, hi, X, t)
    add("hazard_squared", "lower", -0.5 * g * hsq, True, "wrji >= -(gamma/2) int_t x mu^2")
    logs = _improper(lambda x: x * math.log(float(X.sf(x))) ** 2, a, hi, X, t)
    add("log_survival", "lower", -0.5 * g * logs, True, "wrji >= -(gamma/2) int_t x (log Fbar)^2")
    c1 = _improper(lambda x: float(X.sf(x)) * hz(x) ** 2, a, hi, X, t)
    add("c1_hazard", "lower", d2 * c1, True, "wrji >= -(gamma/(2 Fbar(t))) int_t Fbar mu^2")
    hf = _improper(lambda x: x * hz(x) * float(X.pdf(x)), a, hi, X, t)
    add("prop24_hazard_density", "lower", d2 * hf, True, "wrji >= -(gamma/(2 Fbar(t))) int_t x mu f")
    add("p4_i", "lower", d2 * hsq, True, "wrji >= -(gamma/(2 Fbar(t))) int_t x mu^2")
    add("p4_ii", "lower", d2 * hf, True, "wrji >= -(gamma/(2 Fbar(t))) int_t x mu f")

    peak = X.mode_density_sup()
    st = float(X.sf(t))
    surv = _improper(lambda x: x * (float(X.sf(x)) / st) ** (g - 1.0), a, hi, X, t)
    a1 = -g / (2.0 * st * st) * surv
    add("mode", "lower", a1 * peak.value**2 if peak.bounded else math.nan, peak.bounded,
        "a1 M^2 <= wrji with a1 = -(gamma/(2 Fbar^(gamma+1)(t))) int_t x Fbar^(gamma-1)")
    pdf_grid = np.linspace(lo, lo + 10.0 * max(X.mean(), 1e-3), 80) if not math.isfinite(hi) else np.linspace(lo, hi, 81)[:-1]
    dec_pdf = _decreasing(X.pdf, pdf_grid) and float(X.pdf(lo)) <= 1.0
    add("remark29", "lower", a1 if dec_pdf else math.nan, dec_pdf, "needs decreasing pdf with f(0) <= 1")
    add("theorem_p2_i", "lower", g * wre if g > 1.0 else math.nan, g > 1.0, "gamma > 1: wrji >= gamma J(X;t)")
    add("theorem_p2_ii", "upper", g * wre if g <= 1.0 else math.nan, g <= 1.0, "gamma <= 1: wrji <= gamma J(X;t)")
    t25 = g == 2.0 and dec_pdf
    add("theorem25_mrl", "lower", -mrl(X, t) / (sx * sx) if t25 else math.nan, t25,
        "gamma = 2, decreasing pdf, f(0) <= 1: wrji >= -m(t)/Fbar(t)^2")
    add("prop40_upper", "upper", j0 / sx ** (g + 1.0), True, "wrji <= wji / Fbar(t)^(gamma+1)")
    return out
