"""Kernel and empirical estimators of the weighted residual inaccuracy.

Two plug-in estimators are provided for two samples ``X_1..X_n`` (true
law) and ``Y_1..Y_m`` (assigned law)::

    J_n(t) = -1/2 int_t^U x f_n(x) g_n(x) dx / (Fbar_n(t) Gbar_n(t))
    J_h(t) = -1/2 int_t^U x f_n(x) g_n(x) dx / (Fhat_h(t) Ghat_h(t))

where ``f_n, g_n`` are kernel density estimates, ``Fbar_n`` is the
empirical survival function ``#{X_i > t}/n`` and ``Fhat_h`` is the kernel
smoothed survival function ``1 - mean W((t - X_i)/h)``.  The upper limit is
``U = max(all data) + 5 max(h_f, h_g)``.

Density bandwidths minimise least-squares cross-validation; survival
bandwidths minimise the leave-one-out integrated squared error of the
smoothed cdf.  For the Gaussian kernel both criteria and the numerator
integral are evaluated in closed form; other kernels fall back to
numerical integration.

Functions with the ``_batch`` suffix operate on a ``(R, n)`` array holding
``R`` independent samples and are used by the Monte Carlo harness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy import special

from .errors import DegenerateSampleError, NoDataBeyondError, SurvivalZeroError

__all__ = [
    "CV_CDF",
    "CV_PDF",
    "EPANECHNIKOV",
    "EstimatorConfig",
    "Fixed",
    "GAUSSIAN",
    "KernelSpec",
    "WrjiEstimate",
    "as_sample",
    "cdf_cv_score",
    "cv_bandwidth_cdf",
    "cv_bandwidth_pdf",
    "cv_search_range",
    "ecdf_sf",
    "estimate_curve",
    "estimate_modes",
    "estimate_wrji",
    "kde_pdf",
    "kernel_sf",
    "lscv_score",
    "resolve_bandwidth",
]

_SQRT2 = math.sqrt(2.0)
_INV_SQRT2PI = 1.0 / math.sqrt(2.0 * math.pi)
CV_GRID_POINTS = 25
CV_RTOL = 1e-4
H_FLOOR = 1e-6
TAIL_FACTOR = 5.0


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelSpec:
    """A symmetric kernel ``K`` with its integral ``W(u) = int_{-inf}^u K``.

    ``radius`` is the half-width of the support (``inf`` for the Gaussian).
    """

    name: str
    K: Callable
    W: Callable
    radius: float = math.inf

    @property
    def is_gaussian(self) -> bool:
        return self.name == "gaussian"


def _gauss_K(u):
    return _INV_SQRT2PI * np.exp(-0.5 * np.square(u))


def _epa_K(u):
    u = np.asarray(u, dtype=float)
    return np.where(np.abs(u) <= 1.0, 0.75 * (1.0 - u * u), 0.0)


def _epa_W(u):
    u = np.clip(np.asarray(u, dtype=float), -1.0, 1.0)
    return 0.5 + 0.75 * u - 0.25 * u**3


GAUSSIAN = KernelSpec("gaussian", _gauss_K, special.ndtr)
EPANECHNIKOV = KernelSpec("epanechnikov", _epa_K, _epa_W, 1.0)
KERNELS = {"gaussian": GAUSSIAN, "epanechnikov": EPANECHNIKOV}


# ---------------------------------------------------------------------------
# bandwidth rules and configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fixed:
    """Use the bandwidth ``h`` as given."""

    h: float

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("bandwidth must be positive")


CV_PDF = "cv-pdf"
CV_CDF = "cv-cdf"


@dataclass(frozen=True)
class EstimatorConfig:
    """Kernel, bandwidth rules and truncation used by :func:`estimate_wrji`.

    ``density_rule`` sets the bandwidth of the density estimates (default:
    least-squares cross-validation); ``survival_rule`` that of the smoothed
    survival function (default: cdf cross-validation).
    """

    kernel: KernelSpec = GAUSSIAN
    density_rule: object = CV_PDF
    survival_rule: object = CV_CDF
    tail_factor: float = TAIL_FACTOR


def as_sample(values, min_size: int = 1) -> np.ndarray:
    """Sorted float copy of ``values``; rejects NaN, infinities and short input."""
    x = np.sort(np.asarray(values, dtype=float).ravel(), kind="stable")
    if x.size < min_size:
        raise DegenerateSampleError(f"need at least {min_size} observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DegenerateSampleError("sample contains NaN or infinite values")
    return x


# ---------------------------------------------------------------------------
# point estimators
# ---------------------------------------------------------------------------


def kde_pdf(sample, h: float, x, kernel: KernelSpec = GAUSSIAN):
    """Kernel density estimate ``(1/(n h)) sum K((x - X_i)/h)`` at ``x``."""
    if not h > 0:
        raise ValueError("bandwidth must be positive")
    s = as_sample(sample)
    x = np.asarray(x, dtype=float)
    u = (x[..., None] - s) / h
    out = kernel.K(u).mean(axis=-1) / h
    return out[()] if out.ndim == 0 else out


def ecdf_sf(sample, t):
    """Empirical survival ``#{X_i > t}/n`` (strict inequality)."""
    s = as_sample(sample)
    t = np.asarray(t, dtype=float)
    out = (s.size - np.searchsorted(s, t, side="right")) / s.size
    return out[()] if np.ndim(out) == 0 else out


def kernel_sf(sample, h: float, t, kernel: KernelSpec = GAUSSIAN):
    """Smoothed survival ``1 - (1/n) sum W((t - X_i)/h)``."""
    if not h > 0:
        raise ValueError("bandwidth must be positive")
    s = as_sample(sample)
    t = np.asarray(t, dtype=float)
    # W(-u) = 1 - W(u) for symmetric kernels; avoids cancellation in the tail
    out = kernel.W((s - t[..., None]) / h).mean(axis=-1)
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# cross-validation criteria
# ---------------------------------------------------------------------------


def _pairwise(x: np.ndarray) -> np.ndarray:
    return x[..., :, None] - x[..., None, :]


def _pair_diffs(x: np.ndarray) -> np.ndarray:
    """Differences ``X_j - X_i`` over unordered pairs ``i < j``; shape ``(R, n(n-1)/2)``."""
    x = np.atleast_2d(x)
    i, j = np.triu_indices(x.shape[1], k=1)
    return x[:, j] - x[:, i]


def _lscv_gauss(diffs: np.ndarray, h: np.ndarray, n: int) -> np.ndarray:
    """LSCV for a batch of pair differences ``(R, n(n-1)/2)`` and bandwidths ``(R,)``.

    ``int f_n^2`` is a double sum of normal densities with variance ``2 h^2``
    (the diagonal contributes ``n`` zero differences); the leave-one-out
    term is the off-diagonal double sum at variance ``h^2``.
    """
    hh = h[:, None]
    h2 = h * _SQRT2
    sq = (2.0 * _gauss_K(diffs / (hh * _SQRT2)).sum(axis=1) + n * _INV_SQRT2PI) / (h2 * n * n)
    loo = 2.0 * _gauss_K(diffs / hh).sum(axis=1) / h
    return sq - 2.0 * loo / (n * (n - 1))


def _abs_mean_gauss(z):
    """``E|Z + z|`` for standard normal ``Z``."""
    return z * (2.0 * special.ndtr(z) - 1.0) + 2.0 * _INV_SQRT2PI * np.exp(-0.5 * z * z)


def _cdfcv_gauss(diffs: np.ndarray, h: np.ndarray, n: int) -> np.ndarray:
    """Leave-one-out integrated squared error of the smoothed cdf, Gaussian kernel.

    For a mixture ``M`` of normals, ``int (1{x >= a} - F_M(x))^2 dx`` equals
    ``E|Y - a| - E|Y - Y'|/2`` with ``Y, Y'`` i.i.d. from ``M``.  With
    ``M_i`` the leave-one-out mixture, averaging over ``i`` leaves two
    double sums over pairs of the closed form :func:`_abs_mean_gauss`:
    ``E|N(d, h^2)|`` and ``E|N(d, 2 h^2)|``.
    """
    hh = h[:, None]
    a0 = 2.0 * _INV_SQRT2PI
    first = 2.0 * (hh * _abs_mean_gauss(diffs / hh)).sum(axis=1) / (n * (n - 1))
    p0 = h * _SQRT2 * a0
    S = 2.0 * (hh * _SQRT2 * _abs_mean_gauss(diffs / (hh * _SQRT2))).sum(axis=1) + n * p0
    second = ((n - 2) * S + n * p0) / (2.0 * n * (n - 1) ** 2)
    return first - second


def _lscv_generic(s, h, kernel):
    n = s.size
    a = s[0] - 4.0 * h * min(kernel.radius, 10.0)
    b = s[-1] + 4.0 * h * min(kernel.radius, 10.0)
    grid = np.linspace(a, b, 4001)
    f = kde_pdf(s, h, grid, kernel)
    sq = np.trapezoid(f * f, grid)
    K = kernel.K(_pairwise(s) / h)
    loo = (K.sum() - np.trace(K)) / ((n - 1) * h)
    return sq - 2.0 * loo / n


def _cdfcv_generic(s, h, kernel, window):
    n = s.size
    grid = np.linspace(window[0], window[1], 4001)
    W = kernel.W((grid[:, None] - s[None, :]) / h)  # (grid, n)
    tot = W.sum(axis=1)
    score = 0.0
    for i in range(n):
        Fi = (tot - W[:, i]) / (n - 1)
        ind = (grid >= s[i]).astype(float)
        score += np.trapezoid((ind - Fi) ** 2, grid)
    return score / n


def lscv_score(sample, h: float, kernel: KernelSpec = GAUSSIAN) -> float:
    """``int f_n^2 - (2/n) sum_i f_{n,-i}(X_i)`` at bandwidth ``h``."""
    s = as_sample(sample, 2)
    if kernel.is_gaussian:
        return float(_lscv_gauss(_pair_diffs(s), np.array([h]), s.size)[0])
    return float(_lscv_generic(s, h, kernel))


def cdf_cv_score(sample, h: float, kernel: KernelSpec = GAUSSIAN, window=None) -> float:
    """``(1/n) sum_i int (1{x >= X_i} - Fhat_{h,-i}(x))^2 dx`` at bandwidth ``h``.

    The Gaussian kernel uses the exact closed form; other kernels integrate
    numerically over ``window`` (default ``[min - 4 h_hi, max + 4 h_hi]``
    with ``h_hi`` the top of the search range).
    """
    s = as_sample(sample, 2)
    if kernel.is_gaussian and window is None:
        return float(_cdfcv_gauss(_pair_diffs(s), np.array([h]), s.size)[0])
    if window is None:
        hi = cv_search_range(s)[1]
        window = (s[0] - 4.0 * hi, s[-1] + 4.0 * hi)
    return float(_cdfcv_generic(s, h, kernel, window))


# ---------------------------------------------------------------------------
# bandwidth search
# ---------------------------------------------------------------------------


def cv_search_range(sample) -> tuple[float, float]:
    """``[0.05 sd n^(-1/5), 5 sd]`` with ``sd`` the sample standard deviation."""
    s = np.asarray(sample, dtype=float)
    n = s.shape[-1]
    sd = s.std(ddof=1, axis=-1) if n > 1 else np.zeros(s.shape[:-1])
    return 0.05 * sd * n ** (-0.2), 5.0 * sd


def _search_batch(score: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Minimise ``score`` for every row: log-grid scan then golden section on ``log h``.

    All rows advance in lockstep, so a batch of ``R`` searches costs the same
    number of score evaluations as one.
    """
    llo, lhi = np.log(lo), np.log(hi)
    grid = np.linspace(0.0, 1.0, CV_GRID_POINTS)
    logs = llo[:, None] + (lhi - llo)[:, None] * grid[None, :]
    vals = np.column_stack([score(np.exp(logs[:, k])) for k in range(CV_GRID_POINTS)])
    vals = np.where(np.isfinite(vals), vals, np.inf)
    k = np.argmin(vals, axis=1)
    rows = np.arange(len(lo))
    a = logs[rows, np.maximum(k - 1, 0)]
    b = logs[rows, np.minimum(k + 1, CV_GRID_POINTS - 1)]
    # the bracket spans two grid steps; the step depends only on n, so the
    # iteration count (and hence each row's result) does not depend on the batch
    width = float(np.max(2.0 * (lhi - llo) / (CV_GRID_POINTS - 1)))
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    iters = max(0, math.ceil(math.log(CV_RTOL / max(width, CV_RTOL)) / math.log(invphi)))
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = score(np.exp(c)), score(np.exp(d))
    for _ in range(iters):
        left = fc < fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        d_new = np.where(left, c, a + invphi * (b - a))
        c_new = np.where(left, b - invphi * (b - a), d)
        fd_new = np.where(left, fc, np.nan)
        fc_new = np.where(left, np.nan, fd)
        c, d = c_new, d_new
        # one fresh evaluation per row, at whichever point is new
        fresh = score(np.exp(np.where(left, c, d)))
        fc = np.where(left, fresh, fc_new)
        fd = np.where(left, fd_new, fresh)
    best = 0.5 * (a + b)
    # keep the grid winner if refinement wandered uphill
    fb = score(np.exp(best))
    gk = vals[rows, k]
    return np.where(fb <= gk, np.exp(best), np.exp(logs[rows, k]))


def _prepare_batch(samples: np.ndarray):
    x = np.sort(np.asarray(samples, dtype=float), axis=1)
    if x.shape[1] < 2:
        raise DegenerateSampleError("cross-validation needs at least 2 observations")
    lo, hi = cv_search_range(x)
    if np.any(hi <= 0):
        raise DegenerateSampleError("sample has zero spread")
    spread = x[:, -1] - x[:, 0]
    return x, lo, hi, spread


class _SortedPairs:
    """Pair differences of one sample, sorted, for fast scoring at large ``n``.

    Pairs with ``d / h`` beyond a cutoff contribute exactly ``0`` (density
    terms, below 1e-300) or ``d`` (``h E|Z + d/h|``, relative error below
    1e-20), so only the prefix ``d < cutoff h`` is evaluated.
    """

    def __init__(self, x: np.ndarray):
        self.d = np.sort(_pair_diffs(x)[0])
        self.tail = np.concatenate([np.cumsum(self.d[::-1])[::-1], [0.0]])
        self.n = x.shape[1]

    def _head(self, cut):
        return self.d[: np.searchsorted(self.d, cut)]

    def lscv(self, h):
        h = float(h[0])
        n = self.n
        h2 = h * _SQRT2
        near = self._head(40.0 * h2)
        sq = (2.0 * _gauss_K(near / h2).sum() + n * _INV_SQRT2PI) / (h2 * n * n)
        loo = 2.0 * _gauss_K(near[near < 40.0 * h] / h).sum() / h
        return np.array([sq - 2.0 * loo / (n * (n - 1))])

    def _abs_sum(self, s):
        near = self._head(10.0 * s)
        return s * _abs_mean_gauss(near / s).sum() + self.tail[near.size]

    def cdfcv(self, h):
        h = float(h[0])
        n = self.n
        a0 = 2.0 * _INV_SQRT2PI
        first = 2.0 * self._abs_sum(h) / (n * (n - 1))
        p0 = h * _SQRT2 * a0
        S = 2.0 * self._abs_sum(h * _SQRT2) + n * p0
        second = ((n - 2) * S + n * p0) / (2.0 * n * (n - 1) ** 2)
        return np.array([first - second])


def _cv_batch(samples, chunk, which):
    x, lo, hi, spread = _prepare_batch(samples)
    out = np.empty(len(x))
    if len(x) == 1 and x.shape[1] > 200:
        pairs = _SortedPairs(x)
        out[:] = _search_batch(pairs.lscv if which == "pdf" else pairs.cdfcv, lo, hi)
        return np.maximum(out, H_FLOOR * spread)
    crit = _lscv_gauss if which == "pdf" else _cdfcv_gauss
    for s in range(0, len(x), chunk):
        sl = slice(s, s + chunk)
        diffs = _pair_diffs(x[sl])
        out[sl] = _search_batch(lambda h: crit(diffs, h, x.shape[1]), lo[sl], hi[sl])
    return np.maximum(out, H_FLOOR * spread)


def cv_bandwidth_pdf_batch(samples: np.ndarray, chunk: int = 500) -> np.ndarray:
    """LSCV bandwidth (Gaussian kernel) for each row of ``samples``."""
    return _cv_batch(samples, chunk, "pdf")


def cv_bandwidth_cdf_batch(samples: np.ndarray, chunk: int = 500) -> np.ndarray:
    """cdf cross-validation bandwidth (Gaussian kernel) for each row of ``samples``."""
    return _cv_batch(samples, chunk, "cdf")


def _cv_scalar(sample, kernel, which) -> float:
    s = as_sample(sample, 2)
    if kernel.is_gaussian:
        fn = cv_bandwidth_pdf_batch if which == "pdf" else cv_bandwidth_cdf_batch
        return float(fn(s[None, :])[0])
    _, lo, hi, spread = _prepare_batch(s[None, :])
    if which == "pdf":
        def score(h):
            return np.array([_lscv_generic(s, float(h[0]), kernel)])
    else:
        window = (s[0] - 4.0 * hi[0], s[-1] + 4.0 * hi[0])

        def score(h):
            return np.array([_cdfcv_generic(s, float(h[0]), kernel, window)])
    return float(max(_search_batch(score, lo, hi)[0], H_FLOOR * spread[0]))


def cv_bandwidth_pdf(sample, kernel: KernelSpec = GAUSSIAN) -> float:
    """Bandwidth minimising least-squares cross-validation.

    Parameters
    ----------
    sample : array_like
        At least two observations with positive spread.
    kernel : KernelSpec

    Returns
    -------
    float
        Minimiser over ``[0.05 sd n^(-1/5), 5 sd]``, located by a 25-point
        log grid followed by golden section to relative accuracy 1e-4.
    """
    return _cv_scalar(sample, kernel, "pdf")


def cv_bandwidth_cdf(sample, kernel: KernelSpec = GAUSSIAN) -> float:
    """Bandwidth minimising the leave-one-out integrated squared error of the smoothed cdf."""
    return _cv_scalar(sample, kernel, "cdf")


def resolve_bandwidth(sample, rule, kernel: KernelSpec = GAUSSIAN) -> float:
    """Turn a bandwidth rule (``Fixed``, ``"cv-pdf"`` or ``"cv-cdf"``) into a number."""
    if isinstance(rule, Fixed):
        return rule.h
    if isinstance(rule, (int, float)) and not isinstance(rule, bool):
        return Fixed(float(rule)).h
    if rule == CV_PDF:
        return cv_bandwidth_pdf(sample, kernel)
    if rule == CV_CDF:
        return cv_bandwidth_cdf(sample, kernel)
    raise ValueError(f"unknown bandwidth rule {rule!r}")


# ---------------------------------------------------------------------------
# WRJI estimators
# ---------------------------------------------------------------------------


class WrjiEstimate(NamedTuple):
    """Estimate with the ingredients used to form it."""

    value: float
    mode: str
    numerator: float
    norm_x: float
    norm_y: float
    h_fx: float
    h_fy: float
    h_Fx: float
    h_Fy: float
    upper: float

    def __float__(self):
        return float(self.value)


def _gauss_tail_moment(mu, s, t, U):
    """``int_t^U x N(x; mu, s^2) dx``."""
    a = (t - mu) / s
    b = (U - mu) / s
    # difference of normal cdfs taken on the accurate side
    mass = np.where(a > 0, special.ndtr(-a) - special.ndtr(-b), special.ndtr(b) - special.ndtr(a))
    return mu * mass + s * _INV_SQRT2PI * (np.exp(-0.5 * a * a) - np.exp(-0.5 * b * b))


def numerator_batch(X: np.ndarray, Y: np.ndarray, hx: np.ndarray, hy: np.ndarray, t: float, U: np.ndarray) -> np.ndarray:
    """``int_t^U x f_n(x) g_n(x) dx`` for Gaussian KDEs, one value per row.

    The product of two normal kernels centred at ``X_i`` and ``Y_j`` is
    ``N(X_i - Y_j; 0, v) N(x; mu_ij, s^2)`` with ``v = hx^2 + hy^2``,
    ``mu_ij = (X_i hy^2 + Y_j hx^2)/v`` and ``s^2 = hx^2 hy^2 / v``.
    """
    X = np.atleast_2d(X)
    Y = np.atleast_2d(Y)
    hx2 = (hx * hx)[:, None, None]
    hy2 = (hy * hy)[:, None, None]
    v = hx2 + hy2
    d = X[:, :, None] - Y[:, None, :]
    w = _INV_SQRT2PI / np.sqrt(v) * np.exp(-0.5 * d * d / v)
    mu = (X[:, :, None] * hy2 + Y[:, None, :] * hx2) / v
    s = np.sqrt(hx2 * hy2 / v)
    m = _gauss_tail_moment(mu, s, t, U[:, None, None])
    return (w * m).sum(axis=(1, 2)) / (X.shape[1] * Y.shape[1])


def ecdf_sf_batch(samples: np.ndarray, t: float) -> np.ndarray:
    return (np.asarray(samples) > t).mean(axis=1)


def kernel_sf_batch(samples: np.ndarray, h: np.ndarray, t: float) -> np.ndarray:
    return special.ndtr((np.asarray(samples) - t) / h[:, None]).mean(axis=1)


def _numerator(sx, sy, hx, hy, t, U, kernel):
    if kernel.is_gaussian:
        return float(numerator_batch(sx[None], sy[None], np.array([hx]), np.array([hy]), t, np.array([U]))[0])
    lo = max(t, min(sx[0], sy[0]) - hx * kernel.radius - hy * kernel.radius)
    if lo >= U:
        return 0.0
    # kernels with compact support have many kinks; a dense composite rule is more robust than adaptive quadrature
    grid = np.linspace(lo, U, 20001)
    vals = np.empty(grid.size)
    for k in range(0, grid.size, 2000):
        g = grid[k : k + 2000]
        vals[k : k + 2000] = g * kde_pdf(sx, hx, g, kernel) * kde_pdf(sy, hy, g, kernel)
    return float(np.trapezoid(vals, grid))


class _Bandwidths(NamedTuple):
    h_fx: float
    h_fy: float
    h_Fx: float
    h_Fy: float


def _bandwidths(sx, sy, mode, cfg) -> _Bandwidths:
    hfx = resolve_bandwidth(sx, cfg.density_rule, cfg.kernel)
    hfy = resolve_bandwidth(sy, cfg.density_rule, cfg.kernel)
    hFx = hFy = math.nan
    if mode == "kernel":
        hFx = resolve_bandwidth(sx, cfg.survival_rule, cfg.kernel)
        hFy = resolve_bandwidth(sy, cfg.survival_rule, cfg.kernel)
    return _Bandwidths(hfx, hfy, hFx, hFy)


def _estimate_with(sx, sy, t, mode, cfg, bw: _Bandwidths) -> WrjiEstimate:
    if mode not in ("ecdf", "kernel"):
        raise ValueError("mode must be 'ecdf' or 'kernel'")
    if mode == "ecdf":
        nx, ny = float(ecdf_sf(sx, t)), float(ecdf_sf(sy, t))
        if nx <= 0.0 or ny <= 0.0:
            raise NoDataBeyondError(f"no observations beyond t={t!r}")
    else:
        nx = float(kernel_sf(sx, bw.h_Fx, t, cfg.kernel))
        ny = float(kernel_sf(sy, bw.h_Fy, t, cfg.kernel))
        if nx <= 1e-12 or ny <= 1e-12:
            raise SurvivalZeroError(f"smoothed survival function is below 1e-12 at t={t!r}")
    U = max(sx[-1], sy[-1]) + cfg.tail_factor * max(bw.h_fx, bw.h_fy)
    num = _numerator(sx, sy, bw.h_fx, bw.h_fy, t, U, cfg.kernel)
    value = min(-0.5 * num / (nx * ny), 0.0)
    return WrjiEstimate(value, mode, num, nx, ny, bw.h_fx, bw.h_fy, bw.h_Fx, bw.h_Fy, U)


def estimate_wrji(sx, sy, t: float, mode: str = "kernel", config: EstimatorConfig = EstimatorConfig()) -> WrjiEstimate:
    """Estimate WRJI at ``t`` from a sample of the true law and one of the assigned law.

    Parameters
    ----------
    sx, sy : array_like
        Observations from the true and assigned laws.
    t : float
    mode : {"kernel", "ecdf"}
        ``"ecdf"`` normalises by empirical survival functions (``J_n``),
        ``"kernel"`` by kernel-smoothed ones (``J_h``).
    config : EstimatorConfig

    Returns
    -------
    WrjiEstimate
        ``value`` is never positive.

    Raises
    ------
    NoDataBeyondError
        ``ecdf`` mode when either sample has no observation above ``t``.
    SurvivalZeroError
        ``kernel`` mode when a smoothed survival value is below 1e-12.
    """
    sx, sy = as_sample(sx, 2), as_sample(sy, 2)
    return _estimate_with(sx, sy, t, mode, config, _bandwidths(sx, sy, mode, config))


def estimate_curve(sx, sy, ts, mode: str = "kernel", config: EstimatorConfig = EstimatorConfig()) -> list:
    """Estimates on a grid of ages; bandwidths are selected once.

    Ages where the estimator is undefined give ``None`` entries.
    """
    return estimate_modes(sx, sy, ts, (mode,), config)[mode]


def estimate_modes(sx, sy, ts, modes=("ecdf", "kernel"), config: EstimatorConfig = EstimatorConfig()) -> dict:
    """:func:`estimate_curve` for several modes sharing one bandwidth selection.

    Returns a dict mapping each mode to its list of estimates.
    """
    sx, sy = as_sample(sx, 2), as_sample(sy, 2)
    bw = _bandwidths(sx, sy, "kernel" if "kernel" in modes else "ecdf", config)
    out = {}
    for mode in modes:
        col = []
        for t in ts:
            try:
                col.append(_estimate_with(sx, sy, float(t), mode, config, bw))
            except (NoDataBeyondError, SurvivalZeroError):
                col.append(None)
        out[mode] = col
    return out
