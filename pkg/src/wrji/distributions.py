"""Parametric lifetime distributions.

All laws are immutable frozen dataclasses.  Evaluation methods accept
scalars or arrays and return values of the same shape; values outside the
support are handled by the base class (density zero, cdf clipped to 0 or 1).

Families
--------
========================  ====================================  ===================
class                     survival function / definition        spec string
========================  ====================================  ===================
``Exponential``           exp(-rate x)                          ``exp(rate=..)``
``WeibullRate``           exp(-rate x**shape)                   ``weibull(rate=..,shape=..)``
``Lindley``               (1 + lam x/(lam+1)) exp(-lam x)       ``lindley(lam=..)``
``Uniform``               (d - x)/(d - c) on (c, d)             ``uniform(c=..,d=..)``
``Beta``                  regularized incomplete beta           ``beta(a=..,b=..)``
``PowerOnUnit``           1 - x**k on (0, 1)                    ``power(k=..)``
``Gamma``                 upper regularized gamma               ``gamma(shape=..,rate=..)``
``LogLogistic``           1/(1 + (x/lam)**alpha)                ``loglogistic(alpha=..,lam=..)``
``APLL``                  alpha-power transform of LL           ``apll(alpha=..,lam=..,a=..)``
``ExLL``                  extended LL                           ``exll(alpha=..,lam=..,a=..)``
``GEE``                   gamma exponentiated-exponential       ``gee(lam=..,alpha=..,theta=..)``
``EEG``                   exponential-exponential geometric     ``eeg(alpha=..,theta=..,p=..)``
``PiecewisePoly``         polynomial cdf segments               ``ex32x()``, ``ex32y()``
``PhrPair``               base sf raised to ``gamma``           ``phr(base=..,gamma=..)``
========================  ====================================  ===================
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, fields
from typing import Callable, ClassVar, NamedTuple

import numpy as np
from scipy import optimize, special

from .errors import SurvivalZeroError, UnknownFamilyError

__all__ = [
    "APLL",
    "Beta",
    "DensityPeak",
    "Distribution",
    "EEG",
    "ExLL",
    "Exponential",
    "GEE",
    "Gamma",
    "Lindley",
    "LogLogistic",
    "PhrPair",
    "PiecewisePoly",
    "PowerOnUnit",
    "Transformed",
    "Uniform",
    "WeibullRate",
    "example32_x",
    "example32_y",
    "parse_distribution",
]

_TINY_U = 2.0**-54


class DensityPeak(NamedTuple):
    """Supremum of a density: ``value`` is ``inf`` when ``bounded`` is False."""

    value: float
    mode: float
    bounded: bool


def _out(a):
    # 0-d arrays become numpy scalars
    return a[()] if isinstance(a, np.ndarray) and a.ndim == 0 else a


def _fmt(v) -> str:
    if isinstance(v, Distribution):
        return v.spec()
    return repr(float(v))


class Distribution:
    """Base class for a univariate lifetime law.

    Subclasses implement the private ``_pdf``/``_cdf`` (and optionally
    ``_sf``, ``_logpdf``, ``_hazard``, ``_quantile``, ``_isf``) on points
    strictly inside the support.
    """

    family: ClassVar[str] = ""

    # -- support -----------------------------------------------------------
    @property
    def support(self) -> tuple[float, float]:
        return (0.0, math.inf)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Interior points where the density is not smooth."""
        return ()

    @property
    def params(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def spec(self) -> str:
        args = ",".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        return f"{self.family}({args})"

    def __str__(self):
        return self.spec()

    # -- public evaluation -------------------------------------------------
    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        inside = (x >= lo) & (x <= hi)
        out = np.zeros(x.shape)
        if np.any(inside):
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                out[inside] = self._pdf(x[inside])
        return _out(out)

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        inside = (x >= lo) & (x <= hi)
        out = np.full(x.shape, -np.inf)
        if np.any(inside):
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                out[inside] = self._logpdf(x[inside])
        return _out(out)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        out = np.where(x >= hi, 1.0, 0.0)
        inside = (x > lo) & (x < hi)
        if np.any(inside):
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                out[inside] = self._cdf(x[inside])
        return _out(out)

    def sf(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.support
        out = np.where(x <= lo, 1.0, 0.0)
        inside = (x > lo) & (x < hi)
        if np.any(inside):
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                out[inside] = self._sf(x[inside])
        return _out(out)

    def hazard(self, x):
        """Hazard rate ``pdf/sf``; raises when the survival function is zero."""
        x = np.asarray(x, dtype=float)
        s = np.asarray(self.sf(x))
        if np.any(s <= 0.0):
            raise SurvivalZeroError(f"survival function is zero at some point of {x!r}")
        lo, _ = self.support
        out = np.zeros(x.shape)
        inside = x >= lo
        if np.any(inside):
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                out[inside] = self._hazard(x[inside])
        return _out(out)

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        if np.any((u <= 0.0) | (u >= 1.0)):
            raise ValueError("quantile requires 0 < u < 1")
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return _out(np.asarray(self._quantile(u), dtype=float))

    def isf(self, q):
        """Inverse survival function, accurate for tiny tail probabilities."""
        q = np.asarray(q, dtype=float)
        if np.any((q <= 0.0) | (q >= 1.0)):
            raise ValueError("isf requires 0 < q < 1")
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return _out(np.asarray(self._isf(q), dtype=float))

    def sample(self, n: int, seed=None):
        """Draw ``n`` values by inverse-cdf from ``np.random.default_rng(seed)``."""
        if n < 1:
            raise ValueError("n must be >= 1")
        rng = np.random.default_rng(seed)
        u = rng.random(n)
        u[u == 0.0] = _TINY_U
        return np.asarray(self.quantile(u), dtype=float).reshape(n)

    def mean(self) -> float:
        from .quadrature import integrate

        lo, hi = self.support
        upper = hi if math.isfinite(hi) else float(self.isf(1e-16))
        return lo + integrate(self.sf, lo, upper, tol=1e-11, points=self.breakpoints).value

    def mode_density_sup(self) -> DensityPeak:
        if self._unbounded():
            return DensityPeak(math.inf, self.support[0], False)
        return self._numeric_peak()

    # -- defaults for subclasses -------------------------------------------
    def _logpdf(self, x):
        return np.log(self._pdf(x))

    def _sf(self, x):
        return 1.0 - self._cdf(x)

    def _hazard(self, x):
        return self._pdf(x) / self._sf(x)

    def _quantile(self, u):
        return _invert(self._cdf, u, self.support)

    def _isf(self, q):
        q = np.asarray(q, dtype=float)
        big = q < 0.5
        out = np.empty(q.shape)
        if np.any(~big):
            out[~big] = self._quantile(1.0 - q[~big])
        if np.any(big):
            out[big] = _invert(lambda x: -self._sf(x), -q[big], self.support)
        return out

    def _unbounded(self) -> bool:
        return False

    def _numeric_peak(self) -> DensityPeak:
        lo, hi = self.support
        a = lo if math.isfinite(lo) else float(self.quantile(1e-9))
        b = hi if math.isfinite(hi) else float(self.isf(1e-9))
        cuts = sorted({a, b, *[p for p in self.breakpoints if a < p < b]})
        best_x, best_v = a, -math.inf
        for left, right in zip(cuts[:-1], cuts[1:]):
            grid = np.linspace(left, right, 2001)
            vals = np.asarray(self.pdf(grid))
            k = int(np.argmax(np.where(np.isfinite(vals), vals, -np.inf)))
            x0 = grid[max(k - 1, 0)]
            x1 = grid[min(k + 1, len(grid) - 1)]
            xm = golden_section(lambda x: -float(self.pdf(x)), x0, x1, xtol=1e-10)
            for cand in (xm, grid[k], left, right):
                v = float(self.pdf(cand))
                if v > best_v:
                    best_x, best_v = cand, v
        return DensityPeak(best_v, float(best_x), True)


def golden_section(fn: Callable[[float], float], a: float, b: float, xtol: float = 1e-8) -> float:
    """Minimize a unimodal scalar function on ``[a, b]``."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    while abs(b - a) > xtol * max(1.0, abs(a) + abs(b)):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
    return 0.5 * (a + b)


def _invert(fn, targets, support):
    """Solve ``fn(x) = target`` for increasing ``fn``.

    Vectorized bisection on a bracket grown geometrically towards infinite
    support ends, stopped when the bracket is below 1e-13 relative width,
    then one secant step inside the final bracket.
    """
    targets = np.asarray(targets, dtype=float)
    t = targets.ravel()
    lo, hi = support
    a = np.full(t.shape, lo if math.isfinite(lo) else -1.0)
    b = np.full(t.shape, hi if math.isfinite(hi) else max(1.0, a[0] + 1.0) if t.size else 1.0)
    if not math.isfinite(lo):
        for _ in range(2000):
            m = fn(a) > t
            if not m.any():
                break
            a[m] *= 2.0
    if not math.isfinite(hi):
        for _ in range(2000):
            m = fn(b) < t
            if not m.any():
                break
            b[m] *= 2.0
    for _ in range(2000):
        mid = 0.5 * (a + b)
        active = (b - a) > 1e-13 * np.maximum(1.0, np.abs(mid))
        active &= (mid > a) & (mid < b)
        if not active.any():
            break
        below = fn(mid) < t
        a = np.where(active & below, mid, a)
        b = np.where(active & ~below, mid, b)
    fa, fb = fn(a), fn(b)
    with np.errstate(divide="ignore", invalid="ignore"):
        x = a + (t - fa) * (b - a) / (fb - fa)
    x = np.where(np.isfinite(x) & (x >= a) & (x <= b), x, 0.5 * (a + b))
    return x.reshape(targets.shape)


def _log1mexp(a):
    """``log(1 - exp(-a))`` for ``a > 0`` without cancellation."""
    a = np.asarray(a, dtype=float)
    return np.where(a < math.log(2.0), np.log(-np.expm1(-a)), np.log1p(-np.exp(-a)))


def _positive(**kw):
    for name, value in kw.items():
        if not (value > 0 and math.isfinite(value)):
            raise ValueError(f"{name} must be positive and finite, got {value!r}")


def _floats(obj):
    for f in fields(obj):
        v = getattr(obj, f.name)
        if not isinstance(v, Distribution):
            object.__setattr__(obj, f.name, float(v))


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Exponential(Distribution):
    rate: float
    family: ClassVar[str] = "exp"

    def __post_init__(self):
        _floats(self)
        _positive(rate=self.rate)

    def _pdf(self, x):
        return self.rate * np.exp(-self.rate * x)

    def _logpdf(self, x):
        return math.log(self.rate) - self.rate * x

    def _cdf(self, x):
        return -np.expm1(-self.rate * x)

    def _sf(self, x):
        return np.exp(-self.rate * x)

    def _hazard(self, x):
        return np.full(np.shape(x), self.rate)

    def _quantile(self, u):
        return -np.log1p(-u) / self.rate

    def _isf(self, q):
        return -np.log(q) / self.rate

    def mean(self):
        return 1.0 / self.rate

    def mode_density_sup(self):
        return DensityPeak(self.rate, 0.0, True)


@dataclass(frozen=True)
class WeibullRate(Distribution):
    """Weibull law with survival ``exp(-rate * x**shape)``."""

    rate: float
    shape: float
    family: ClassVar[str] = "weibull"

    def __post_init__(self):
        _floats(self)
        _positive(rate=self.rate, shape=self.shape)

    def _pdf(self, x):
        k = self.shape
        return self.rate * k * x ** (k - 1.0) * np.exp(-self.rate * x**k)

    def _logpdf(self, x):
        k = self.shape
        return math.log(self.rate * k) + (k - 1.0) * np.log(x) - self.rate * x**k

    def _cdf(self, x):
        return -np.expm1(-self.rate * x**self.shape)

    def _sf(self, x):
        return np.exp(-self.rate * x**self.shape)

    def _hazard(self, x):
        k = self.shape
        return self.rate * k * x ** (k - 1.0)

    def _quantile(self, u):
        return (-np.log1p(-u) / self.rate) ** (1.0 / self.shape)

    def _isf(self, q):
        return (-np.log(q) / self.rate) ** (1.0 / self.shape)

    def mean(self):
        return self.rate ** (-1.0 / self.shape) * math.gamma(1.0 + 1.0 / self.shape)

    def _unbounded(self):
        return self.shape < 1.0

    def mode_density_sup(self):
        if self.shape < 1.0:
            return DensityPeak(math.inf, 0.0, False)
        if self.shape == 1.0:
            return DensityPeak(self.rate, 0.0, True)
        m = ((self.shape - 1.0) / (self.rate * self.shape)) ** (1.0 / self.shape)
        return DensityPeak(float(self.pdf(m)), m, True)


@dataclass(frozen=True)
class Lindley(Distribution):
    lam: float
    family: ClassVar[str] = "lindley"

    def __post_init__(self):
        _floats(self)
        _positive(lam=self.lam)

    def _pdf(self, x):
        lam = self.lam
        return lam * lam / (lam + 1.0) * (1.0 + x) * np.exp(-lam * x)

    def _logpdf(self, x):
        lam = self.lam
        return 2.0 * math.log(lam) - math.log1p(lam) + np.log1p(x) - lam * x

    def _sf(self, x):
        lam = self.lam
        return (1.0 + lam * x / (lam + 1.0)) * np.exp(-lam * x)

    def _cdf(self, x):
        return 1.0 - self._sf(x)

    def _isf(self, q):
        lam = self.lam
        arg = -(lam + 1.0) * q * math.exp(-(lam + 1.0))
        w = special.lambertw(arg, -1).real
        return -1.0 - 1.0 / lam - w / lam

    def _quantile(self, u):
        return self._isf(1.0 - u)

    def mean(self):
        lam = self.lam
        return (lam + 2.0) / (lam * (lam + 1.0))

    def mode_density_sup(self):
        m = max(0.0, (1.0 - self.lam) / self.lam)
        return DensityPeak(float(self.pdf(m)), m, True)


@dataclass(frozen=True)
class Uniform(Distribution):
    c: float
    d: float
    family: ClassVar[str] = "uniform"

    def __post_init__(self):
        _floats(self)
        if not (self.c < self.d and math.isfinite(self.c) and math.isfinite(self.d)):
            raise ValueError("uniform requires finite c < d")

    @property
    def support(self):
        return (self.c, self.d)

    def _pdf(self, x):
        return np.full(np.shape(x), 1.0 / (self.d - self.c))

    def _cdf(self, x):
        return (x - self.c) / (self.d - self.c)

    def _sf(self, x):
        return (self.d - x) / (self.d - self.c)

    def _hazard(self, x):
        return 1.0 / (self.d - np.maximum(x, self.c))

    def _quantile(self, u):
        return self.c + u * (self.d - self.c)

    def _isf(self, q):
        return self.d - q * (self.d - self.c)

    def mean(self):
        return 0.5 * (self.c + self.d)

    def mode_density_sup(self):
        return DensityPeak(1.0 / (self.d - self.c), self.c, True)


@dataclass(frozen=True)
class Beta(Distribution):
    a: float
    b: float
    family: ClassVar[str] = "beta"

    def __post_init__(self):
        _floats(self)
        _positive(a=self.a, b=self.b)

    @property
    def support(self):
        return (0.0, 1.0)

    def _logpdf(self, x):
        a, b = self.a, self.b
        return special.xlogy(a - 1.0, x) + special.xlog1py(b - 1.0, -x) - special.betaln(a, b)

    def _pdf(self, x):
        return np.exp(self._logpdf(x))

    def _cdf(self, x):
        return special.betainc(self.a, self.b, x)

    def _sf(self, x):
        return special.betainc(self.b, self.a, 1.0 - x)

    def _quantile(self, u):
        return special.betaincinv(self.a, self.b, u)

    def _isf(self, q):
        return 1.0 - special.betaincinv(self.b, self.a, q)

    def mean(self):
        return self.a / (self.a + self.b)

    def _unbounded(self):
        return self.a < 1.0 or self.b < 1.0

    def mode_density_sup(self):
        a, b = self.a, self.b
        if self._unbounded():
            return DensityPeak(math.inf, 0.0 if a < 1.0 else 1.0, False)
        if a == 1.0 and b == 1.0:
            return DensityPeak(1.0, 0.0, True)
        m = (a - 1.0) / (a + b - 2.0)
        return DensityPeak(float(np.exp(self._logpdf(np.array(m)))), m, True)


@dataclass(frozen=True)
class PowerOnUnit(Distribution):
    """Law on (0, 1) with cdf ``x**k``."""

    k: float
    family: ClassVar[str] = "power"

    def __post_init__(self):
        _floats(self)
        _positive(k=self.k)

    @property
    def support(self):
        return (0.0, 1.0)

    def _pdf(self, x):
        return self.k * x ** (self.k - 1.0)

    def _cdf(self, x):
        return x**self.k

    def _sf(self, x):
        return -np.expm1(self.k * np.log(x))

    def _quantile(self, u):
        return u ** (1.0 / self.k)

    def _isf(self, q):
        return np.exp(np.log1p(-q) / self.k)

    def mean(self):
        return self.k / (self.k + 1.0)

    def _unbounded(self):
        return self.k < 1.0

    def mode_density_sup(self):
        if self.k < 1.0:
            return DensityPeak(math.inf, 0.0, False)
        return DensityPeak(self.k, 1.0, True)


@dataclass(frozen=True)
class Gamma(Distribution):
    shape: float
    rate: float
    family: ClassVar[str] = "gamma"

    def __post_init__(self):
        _floats(self)
        _positive(shape=self.shape, rate=self.rate)

    def _logpdf(self, x):
        k, r = self.shape, self.rate
        return k * math.log(r) + special.xlogy(k - 1.0, x) - r * x - special.gammaln(k)

    def _pdf(self, x):
        return np.exp(self._logpdf(x))

    def _cdf(self, x):
        return special.gammainc(self.shape, self.rate * x)

    def _sf(self, x):
        return special.gammaincc(self.shape, self.rate * x)

    def _quantile(self, u):
        return special.gammaincinv(self.shape, u) / self.rate

    def _isf(self, q):
        return special.gammainccinv(self.shape, q) / self.rate

    def mean(self):
        return self.shape / self.rate

    def _unbounded(self):
        return self.shape < 1.0

    def mode_density_sup(self):
        if self.shape < 1.0:
            return DensityPeak(math.inf, 0.0, False)
        m = (self.shape - 1.0) / self.rate
        return DensityPeak(float(self.pdf(m)), m, True)


@dataclass(frozen=True)
class LogLogistic(Distribution):
    alpha: float
    lam: float
    family: ClassVar[str] = "loglogistic"

    def __post_init__(self):
        _floats(self)
        _positive(alpha=self.alpha, lam=self.lam)

    def _logpdf(self, x):
        a, lam = self.alpha, self.lam
        z = np.log(x / lam)
        return math.log(a / lam) + (a - 1.0) * z - 2.0 * np.logaddexp(0.0, a * z)

    def _pdf(self, x):
        return np.exp(self._logpdf(x))

    def _cdf(self, x):
        return special.expit(self.alpha * np.log(x / self.lam))

    def _sf(self, x):
        return special.expit(-self.alpha * np.log(x / self.lam))

    def _hazard(self, x):
        a, lam = self.alpha, self.lam
        r = (x / lam) ** a
        return a / x * r / (1.0 + r)

    def _quantile(self, u):
        return self.lam * (u / (1.0 - u)) ** (1.0 / self.alpha)

    def _isf(self, q):
        return self.lam * ((1.0 - q) / q) ** (1.0 / self.alpha)

    def mean(self):
        a = self.alpha
        if a <= 1.0:
            return math.inf
        return self.lam * (math.pi / a) / math.sin(math.pi / a)

    def _unbounded(self):
        return self.alpha < 1.0

    def mode_density_sup(self):
        a = self.alpha
        if a < 1.0:
            return DensityPeak(math.inf, 0.0, False)
        if a == 1.0:
            return DensityPeak(1.0 / self.lam, 0.0, True)
        m = self.lam * ((a - 1.0) / (a + 1.0)) ** (1.0 / a)
        return DensityPeak(float(self.pdf(m)), m, True)


@dataclass(frozen=True)
class APLL(Distribution):
    """Alpha power transformed log-logistic: cdf ``(a**G - 1)/(a - 1)``."""

    alpha: float
    lam: float
    a: float
    family: ClassVar[str] = "apll"

    def __post_init__(self):
        _floats(self)
        _positive(alpha=self.alpha, lam=self.lam, a=self.a)
        if self.a == 1.0:
            raise ValueError("apll requires a != 1")

    @property
    def _ll(self):
        return LogLogistic(self.alpha, self.lam)

    def _logpdf(self, x):
        a = self.a
        G = self._ll._cdf(x)
        return math.log(math.log(a) / (a - 1.0)) + G * math.log(a) + self._ll._logpdf(x)

    def _pdf(self, x):
        return np.exp(self._logpdf(x))

    def _cdf(self, x):
        a = self.a
        return np.expm1(self._ll._cdf(x) * math.log(a)) / (a - 1.0)

    def _sf(self, x):
        # (a - a**G)/(a - 1) = a (1 - a**(-Gbar))/(a - 1)
        a = self.a
        return -a * np.expm1(-self._ll._sf(x) * math.log(a)) / (a - 1.0)

    def _quantile(self, u):
        a = self.a
        G = np.log1p(u * (a - 1.0)) / math.log(a)
        return self._ll._quantile(G)

    def _isf(self, q):
        a = self.a
        gbar = -np.log1p(-q * (a - 1.0) / a) / math.log(a)
        return self._ll._isf(gbar)

    def _unbounded(self):
        return self.alpha < 1.0


@dataclass(frozen=True)
class ExLL(Distribution):
    """Extended log-logistic: survival ``(Gbar/(1 - (1 - a) G))**a``."""

    alpha: float
    lam: float
    a: float
    family: ClassVar[str] = "exll"

    def __post_init__(self):
        _floats(self)
        _positive(alpha=self.alpha, lam=self.lam, a=self.a)

    @property
    def _ll(self):
        return LogLogistic(self.alpha, self.lam)

    def _logpdf(self, x):
        a = self.a
        G, Gbar = self._ll._cdf(x), self._ll._sf(x)
        D = 1.0 - (1.0 - a) * G
        return 2.0 * math.log(a) + self._ll._logpdf(x) + (a - 1.0) * np.log(Gbar) - (a + 1.0) * np.log(D)

    def _pdf(self, x):
        return np.exp(self._logpdf(x))

    def _sf(self, x):
        a = self.a
        G, Gbar = self._ll._cdf(x), self._ll._sf(x)
        return np.exp(a * (np.log(Gbar) - np.log1p(-(1.0 - a) * G)))

    def _cdf(self, x):
        a = self.a
        G, Gbar = self._ll._cdf(x), self._ll._sf(x)
        return -np.expm1(a * (np.log(Gbar) - np.log1p(-(1.0 - a) * G)))

    def _isf(self, q):
        a = self.a
        s = q ** (1.0 / a)
        gbar = a * s / (1.0 - s * (1.0 - a))
        return self._ll._isf(gbar)

    def _quantile(self, u):
        a = self.a
        s = np.exp(np.log1p(-u) / a)
        gbar = a * s / (1.0 - s * (1.0 - a))
        return self._ll._isf(gbar)

    def _unbounded(self):
        return self.alpha < 1.0


@dataclass(frozen=True)
class GEE(Distribution):
    """Gamma exponentiated-exponential law.

    With ``u(x) = -alpha * log(1 - exp(-theta x))`` the variable ``u(X)`` is
    standard gamma with shape ``lam``, which gives the cdf
    ``Q(lam, u(x))`` (upper regularized gamma).
    """

    lam: float
    alpha: float
    theta: float
    family: ClassVar[str] = "gee"

    def __post_init__(self):
        _floats(self)
        _positive(lam=self.lam, alpha=self.alpha, theta=self.theta)

    def _u(self, x):
        return -self.alpha * _log1mexp(self.theta * x)

    def _logpdf(self, x):
        lam, al, th = self.lam, self.alpha, self.theta
        return (
            math.log(al * th)
            - special.gammaln(lam)
            - th * x
            + (al - 1.0) * _log1mexp(th * x)
            + special.xlogy(lam - 1.0, self._u(x))
        )

    def _pdf(self, x):
        return np.exp(self._logpdf(x))

    def _cdf(self, x):
        return special.gammaincc(self.lam, self._u(x))

    def _sf(self, x):
        return special.gammainc(self.lam, self._u(x))

    def _from_u(self, u):
        return -_log1mexp(u / self.alpha) / self.theta

    def _quantile(self, p):
        return self._from_u(special.gammainccinv(self.lam, p))

    def _isf(self, q):
        return self._from_u(special.gammaincinv(self.lam, q))

    def _unbounded(self):
        return self.alpha < 1.0 or (self.alpha == 1.0 and self.lam > 1.0)


@dataclass(frozen=True)
class EEG(Distribution):
    """Exponential-exponential geometric law; cdf ``v/(1 - p + p v)``, ``v = (1 - e^{-theta x})**alpha``."""

    alpha: float
    theta: float
    p: float
    family: ClassVar[str] = "eeg"

    def __post_init__(self):
        _floats(self)
        _positive(alpha=self.alpha, theta=self.theta)
        if not 0.0 < self.p < 1.0:
            raise ValueError("eeg requires 0 < p < 1")

    def _logv(self, x):
        return self.alpha * _log1mexp(self.theta * x)

    def _logpdf(self, x):
        al, th, p = self.alpha, self.theta, self.p
        v = np.exp(self._logv(x))
        return (
            math.log(al * th * (1.0 - p))
            - th * x
            + (al - 1.0) * _log1mexp(th * x)
            - 2.0 * np.log(1.0 - p + p * v)
        )

    def _pdf(self, x):
        return np.exp(self._logpdf(x))

    def _cdf(self, x):
        v = np.exp(self._logv(x))
        return v / (1.0 - self.p + self.p * v)

    def _sf(self, x):
        lv = self._logv(x)
        v = np.exp(lv)
        return (1.0 - self.p) * (-np.expm1(lv)) / (1.0 - self.p + self.p * v)

    def _from_w(self, w):
        # w = 1 - v
        return -_log1mexp(-np.log1p(-w) / self.alpha) / self.theta

    def _isf(self, q):
        p = self.p
        return self._from_w(q / (1.0 - p + p * q))

    def _quantile(self, u):
        p = self.p
        v = u * (1.0 - p) / (1.0 - p * u)
        return -_log1mexp(-np.log(v) / self.alpha) / self.theta

    def _unbounded(self):
        return self.alpha < 1.0


@dataclass(frozen=True)
class PiecewisePoly(Distribution):
    """Law whose cdf is a polynomial on each segment between breakpoints.

    ``knots`` holds ``b_0 < b_1 < ... < b_m``; ``segments[k]`` holds the
    ascending-power coefficients of the cdf on ``[b_k, b_{k+1})``.
    """

    knots: tuple
    segments: tuple
    name: str = field(default="piecewise", compare=False)
    family: ClassVar[str] = "piecewise"

    def __post_init__(self):
        knots = tuple(float(b) for b in self.knots)
        segs = tuple(tuple(float(c) for c in s) for s in self.segments)
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "segments", segs)
        if len(segs) != len(knots) - 1 or np.any(np.diff(knots) <= 0):
            raise ValueError("need increasing knots and one segment per interval")
        polys = self._polys
        if abs(polys[0](knots[0])) > 1e-12 or abs(polys[-1](knots[-1]) - 1.0) > 1e-12:
            raise ValueError("cdf must go from 0 to 1 across the support")
        for k in range(1, len(segs)):
            if abs(polys[k - 1](knots[k]) - polys[k](knots[k])) > 1e-12:
                raise ValueError(f"cdf is discontinuous at {knots[k]}")
        for k, poly in enumerate(polys):
            grid = np.linspace(knots[k], knots[k + 1], 201)
            if np.any(poly.deriv()(grid) < -1e-12):
                raise ValueError("cdf segment is decreasing")

    @property
    def _polys(self):
        return [np.polynomial.Polynomial(s) for s in self.segments]

    @property
    def support(self):
        return (self.knots[0], self.knots[-1])

    @property
    def breakpoints(self):
        return self.knots[1:-1]

    def spec(self):
        return f"{self.name}()" if self.name in _FIXTURES else "piecewise(...)"

    def _segment(self, x):
        return np.clip(np.searchsorted(self.knots, x, side="right") - 1, 0, len(self.segments) - 1)

    def _eval(self, x, deriv):
        x = np.asarray(x, dtype=float)
        seg = self._segment(x)
        out = np.empty(x.shape)
        for k, poly in enumerate(self._polys):
            m = seg == k
            if np.any(m):
                out[m] = (poly.deriv() if deriv else poly)(x[m])
        return out

    def _pdf(self, x):
        return np.maximum(self._eval(x, True), 0.0)

    def _cdf(self, x):
        return np.clip(self._eval(x, False), 0.0, 1.0)

    def mode_density_sup(self):
        return self._numeric_peak()


def example32_x() -> PiecewisePoly:
    """cdf ``x**2/2`` on [0, 1) and ``(x**2 + 2)/6`` on [1, 2)."""
    return PiecewisePoly((0.0, 1.0, 2.0), ((0.0, 0.0, 0.5), (1 / 3, 0.0, 1 / 6)), name="ex32x")


def example32_y() -> PiecewisePoly:
    """cdf ``(x**2 + x)/4`` on [0, 1) and ``x/2`` on [1, 2)."""
    return PiecewisePoly((0.0, 1.0, 2.0), ((0.0, 0.25, 0.25), (0.0, 0.5)), name="ex32y")


_FIXTURES = {"ex32x": example32_x, "ex32y": example32_y}


@dataclass(frozen=True)
class PhrPair(Distribution):
    """Law with survival ``base.sf(x) ** gamma`` (proportional hazard rates)."""

    base: Distribution
    gamma: float
    family: ClassVar[str] = "phr"

    def __post_init__(self):
        object.__setattr__(self, "gamma", float(self.gamma))
        _positive(gamma=self.gamma)
        if not isinstance(self.base, Distribution):
            raise TypeError("base must be a Distribution")

    @property
    def support(self):
        return self.base.support

    @property
    def breakpoints(self):
        return self.base.breakpoints

    def _logpdf(self, x):
        g = self.gamma
        return math.log(g) + self.base._logpdf(x) + (g - 1.0) * np.log(self.base._sf(x))

    def _pdf(self, x):
        g = self.gamma
        s = self.base._sf(x)
        return g * self.base._pdf(x) * s ** (g - 1.0)

    def _sf(self, x):
        return self.base._sf(x) ** self.gamma

    def _cdf(self, x):
        return -np.expm1(self.gamma * np.log(self.base._sf(x)))

    def _hazard(self, x):
        return self.gamma * self.base._hazard(x)

    def _quantile(self, u):
        return self.base._isf(np.exp(np.log1p(-u) / self.gamma))

    def _isf(self, q):
        return self.base._isf(q ** (1.0 / self.gamma))

    def _unbounded(self):
        if self.base._unbounded():
            return True
        _, hi = self.support
        return self.gamma < 1.0 and math.isfinite(hi) and float(self.base.pdf(hi)) > 0.0


@dataclass(frozen=True)
class Transformed(Distribution):
    """Law of ``phi(X)`` for a strictly increasing differentiable ``phi``."""

    base: Distribution
    phi: Callable
    dphi: Callable
    phi_inv: Callable | None = None
    family: ClassVar[str] = "transformed"

    @property
    def support(self):
        lo, hi = self.base.support
        return (float(self.phi(lo)), float(self.phi(hi)) if math.isfinite(hi) else math.inf)

    def spec(self):
        return f"transformed(base={self.base.spec()})"

    def _inv(self, y):
        if self.phi_inv is not None:
            return self.phi_inv(y)
        lo, hi = self.base.support
        return _invert(lambda x: np.asarray(self.phi(x), dtype=float), y, (lo, hi))

    def _pdf(self, y):
        x = self._inv(y)
        return self.base._pdf(x) / self.dphi(x)

    def _cdf(self, y):
        return self.base._cdf(self._inv(y))

    def _sf(self, y):
        return self.base._sf(self._inv(y))

    def _quantile(self, u):
        return self.phi(self.base._quantile(u))

    def _isf(self, q):
        return self.phi(self.base._isf(q))


# ---------------------------------------------------------------------------
# spec strings
# ---------------------------------------------------------------------------

FAMILIES = {
    "exp": Exponential,
    "exponential": Exponential,
    "weibull": WeibullRate,
    "wei": WeibullRate,
    "lindley": Lindley,
    "uniform": Uniform,
    "beta": Beta,
    "power": PowerOnUnit,
    "gamma": Gamma,
    "loglogistic": LogLogistic,
    "ll": LogLogistic,
    "apll": APLL,
    "exll": ExLL,
    "gee": GEE,
    "eeg": EEG,
    "phr": PhrPair,
}

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)|(.))")


def parse_distribution(text: str) -> Distribution:
    """Build a distribution from a spec string such as ``phr(base=exp(rate=1),gamma=5)``.

    Grammar (whitespace-insensitive)::

        spec   := name "(" [arg ("," arg)*] ")"
        arg    := key "=" (number | spec)
    """
    tokens = [(m.group(1), m.group(2), m.group(3)) for m in _TOKEN.finditer(text) if m.group(0).strip()]
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, None)

    def expect(ch):
        nonlocal pos
        if peek()[2] != ch:
            raise UnknownFamilyError(f"malformed distribution spec {text!r}: expected {ch!r}")
        pos += 1

    def parse_spec():
        nonlocal pos
        name = peek()[0]
        if name is None:
            raise UnknownFamilyError(f"malformed distribution spec {text!r}")
        pos += 1
        expect("(")
        kwargs = {}
        while peek()[2] != ")":
            key = peek()[0]
            if key is None:
                raise UnknownFamilyError(f"malformed distribution spec {text!r}")
            pos += 1
            expect("=")
            ident, number, _ = peek()
            if number is not None:
                pos += 1
                kwargs[key] = float(number)
            elif ident is not None:
                kwargs[key] = parse_spec()
            else:
                raise UnknownFamilyError(f"malformed distribution spec {text!r}")
            if peek()[2] == ",":
                pos += 1
        expect(")")
        lname = name.lower()
        if lname in _FIXTURES:
            if kwargs:
                raise UnknownFamilyError(f"fixture {name!r} takes no parameters")
            return _FIXTURES[lname]()
        if lname not in FAMILIES:
            raise UnknownFamilyError(f"unknown distribution family {name!r}")
        try:
            return FAMILIES[lname](**kwargs)
        except TypeError as exc:
            raise UnknownFamilyError(f"bad parameters for {name!r}: {exc}") from exc

    dist = parse_spec()
    if pos != len(tokens):
        raise UnknownFamilyError(f"trailing characters in distribution spec {text!r}")
    return dist
