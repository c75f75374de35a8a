"""Seeded Monte Carlo study of the two WRJI estimators.

For every sample size ``n`` and replication ``r`` a generator is built from
``SeedSequence(seed, spawn_key=(n, r))``; it first draws the ``n`` uniforms
for the sample of the true law, then the ``n`` uniforms for the sample of
the assigned law, and both samples are obtained by inverse-cdf.  The same
uniforms are reused for every assigned law and every age ``t`` (common
random numbers), so a report does not depend on how the work is split
across threads.

Configuration files are plain ``key = value`` lines::

    # exponential block of the bias/MSE table
    x = exp(rate=1)
    y = exp(rate=2); exp(rate=5); exp(rate=7)
    t = 0.01, 0.05, 0.10
    n = 30, 50
    replications = 10000
    seed = 2024
    modes = ecdf, kernel
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .distributions import Beta, Distribution, Exponential, parse_distribution
from .estimators import (
    cv_bandwidth_cdf_batch,
    cv_bandwidth_pdf_batch,
    ecdf_sf_batch,
    kernel_sf_batch,
    numerator_batch,
)
from .measures import wrji

__all__ = [
    "DEFAULT_SEED",
    "McCell",
    "McConfig",
    "SimulationReport",
    "emit_table",
    "parse_config",
    "run_mc",
    "table1_config",
]

DEFAULT_SEED = 20240607
MODES = ("ecdf", "kernel")
MODE_LABEL = {"ecdf": "J_n", "kernel": "J_h"}
FAILURE_LIMIT = 0.01


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo design.

    Parameters
    ----------
    x : Distribution
        True law.
    ys : sequence of Distribution
        Assigned laws; each gives one block of table columns.
    ts, ns : sequence
        Ages and sample sizes.
    replications : int
    seed : int
        Master seed.
    modes : sequence of {"ecdf", "kernel"}
    """

    x: Distribution
    ys: tuple
    ts: tuple
    ns: tuple
    replications: int = 10000
    seed: int = DEFAULT_SEED
    modes: tuple = MODES

    def __post_init__(self):
        ys = (self.ys,) if isinstance(self.ys, Distribution) else tuple(self.ys)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "ts", tuple(float(t) for t in self.ts))
        object.__setattr__(self, "ns", tuple(int(n) for n in self.ns))
        object.__setattr__(self, "modes", tuple(self.modes))
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if not ys or not self.ts or not self.ns:
            raise ValueError("need at least one assigned law, age and sample size")
        if any(n < 3 for n in self.ns):
            raise ValueError("sample sizes must be >= 3")
        if any(m not in MODES for m in self.modes):
            raise ValueError(f"modes must be among {MODES}")
        for law in (self.x,) + ys:
            for t in self.ts:
                if not float(law.sf(t)) > 0.0:
                    raise ValueError(f"survival of {law.spec()} is zero at t={t}")


class McCell(NamedTuple):
    """Bias and MSE of one estimator for one (assigned law, t, n)."""

    label: str
    t: float
    n: int
    mode: str
    truth: float
    bias: float
    mse: float
    replications: int
    failures: int
    valid: bool


@dataclass
class SimulationReport:
    cells: list = field(default_factory=list)

    def cell(self, label: str, t: float, n: int, mode: str) -> McCell:
        for c in self.cells:
            if c.label == label and c.t == t and c.n == n and c.mode == mode:
                return c
        raise KeyError((label, t, n, mode))

    def merge(self, other: "SimulationReport") -> "SimulationReport":
        return SimulationReport(self.cells + other.cells)


def _uniforms(seed: int, n: int, reps: range) -> tuple[np.ndarray, np.ndarray]:
    ux = np.empty((len(reps), n))
    uy = np.empty((len(reps), n))
    for k, r in enumerate(reps):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(n, r))))
        ux[k] = rng.random(n)
        uy[k] = rng.random(n)
    tiny = 2.0**-54
    ux[ux == 0.0] = tiny
    uy[uy == 0.0] = tiny
    return ux, uy


def _chunk_estimates(cfg: McConfig, n: int, reps: range) -> dict:
    """Estimates for a block of replications: ``{(y index, t, mode): array}``."""
    ux, uy = _uniforms(cfg.seed, n, reps)
    X = np.sort(np.asarray(cfg.x.quantile(ux)), axis=1)
    hfx = cv_bandwidth_pdf_batch(X)
    kernel = "kernel" in cfg.modes
    hFx = cv_bandwidth_cdf_batch(X) if kernel else None
    out = {}
    for k, y in enumerate(cfg.ys):
        Y = np.sort(np.asarray(y.quantile(uy)), axis=1)
        hfy = cv_bandwidth_pdf_batch(Y)
        hFy = cv_bandwidth_cdf_batch(Y) if kernel else None
        U = np.maximum(X[:, -1], Y[:, -1]) + 5.0 * np.maximum(hfx, hfy)
        for t in cfg.ts:
            num = numerator_batch(X, Y, hfx, hfy, t, U)
            for mode in cfg.modes:
                if mode == "ecdf":
                    nx, ny = ecdf_sf_batch(X, t), ecdf_sf_batch(Y, t)
                    ok = (nx > 0) & (ny > 0)
                else:
                    nx, ny = kernel_sf_batch(X, hFx, t), kernel_sf_batch(Y, hFy, t)
                    ok = (nx > 1e-12) & (ny > 1e-12)
                with np.errstate(divide="ignore", invalid="ignore"):
                    est = np.where(ok, np.minimum(-0.5 * num / (nx * ny), 0.0), np.nan)
                out[(k, t, mode)] = est
    return out


def run_mc(cfg: McConfig, threads: int = 1, chunk: int = 500) -> SimulationReport:
    """Run the study and aggregate bias and MSE per cell.

    Replications where an estimator is undefined (no observation beyond
    ``t``) are dropped and counted; a cell with more than 1% failures is
    flagged ``valid=False``.  Results are identical for any ``threads``.
    """
    truths = {(k, t): wrji(cfg.x, y, t).value for k, y in enumerate(cfg.ys) for t in cfg.ts}
    cells = []
    for n in cfg.ns:
        blocks = [range(s, min(s + chunk, cfg.replications)) for s in range(0, cfg.replications, chunk)]
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(lambda b: _chunk_estimates(cfg, n, b), blocks))
        else:
            parts = [_chunk_estimates(cfg, n, b) for b in blocks]
        for k, y in enumerate(cfg.ys):
            for t in cfg.ts:
                truth = truths[(k, t)]
                for mode in cfg.modes:
                    est = np.concatenate([p[(k, t, mode)] for p in parts])
                    good = est[np.isfinite(est)]
                    fails = int(est.size - good.size)
                    err = good - truth
                    bias = float(np.mean(err)) if good.size else math.nan
                    mse = float(np.mean(err * err)) if good.size else math.nan
                    cells.append(
                        McCell(y.spec(), t, n, mode, truth, bias, mse, int(good.size), fails,
                               fails <= FAILURE_LIMIT * cfg.replications)
                    )
    return SimulationReport(cells)


def emit_table(report: SimulationReport, digits: int = 8) -> str:
    """CSV with rows ``(t, n, metric)`` and one column per assigned law and estimator.

    Columns are ``t, n, metric`` followed by ``<law spec>|J_n`` and
    ``<law spec>|J_h`` in order of first appearance; ``metric`` is ``bias``
    or ``mse``.
    """
    cols, rows = [], []
    for c in report.cells:
        col = f"{c.label}|{MODE_LABEL[c.mode]}"
        if col not in cols:
            cols.append(col)
        if (c.t, c.n) not in rows:
            rows.append((c.t, c.n))
    rows.sort()
    lookup = {(c.t, c.n, f"{c.label}|{MODE_LABEL[c.mode]}"): c for c in report.cells}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "n", "metric"] + cols)
    for t, n in rows:
        for metric in ("bias", "mse"):
            line = [repr(t), n, metric]
            for col in cols:
                c = lookup.get((t, n, col))
                line.append("" if c is None else f"{getattr(c, metric):.{digits}g}")
            w.writerow(line)
    return buf.getvalue()


def table1_config(block: str, replications: int = 10000, seed: int = DEFAULT_SEED) -> McConfig:
    """Design of the exponential or beta block of the reference bias/MSE table."""
    if block == "exponential":
        return McConfig(Exponential(1.0), (Exponential(2.0), Exponential(5.0), Exponential(7.0)),
                        (0.01, 0.05, 0.10), (30, 50), replications, seed)
    if block == "beta":
        return McConfig(Beta(1.0, 1.0), (Beta(1.0, 4.0), Beta(5.0, 3.0), Beta(6.0, 6.0)),
                        (0.01, 0.10, 0.30), (30, 50), replications, seed)
    raise ValueError("block must be 'exponential' or 'beta'")


def _split(value: str, sep: str) -> list[str]:
    return [v.strip() for v in value.split(sep) if v.strip()]


def parse_config(text: str) -> McConfig:
    """Read a ``key = value`` configuration (see module docstring)."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        raw[key.strip().lower()] = value.strip()
    missing = {"x", "y", "t", "n"} - raw.keys()
    if missing:
        raise ValueError(f"missing keys: {sorted(missing)}")
    return McConfig(
        x=parse_distribution(raw["x"]),
        ys=tuple(parse_distribution(v) for v in _split(raw["y"], ";")),
        ts=tuple(float(v) for v in _split(raw["t"], ",")),
        ns=tuple(int(v) for v in _split(raw["n"], ",")),
        replications=int(raw.get("replications", 10000)),
        seed=int(raw.get("seed", DEFAULT_SEED)),
        modes=tuple(_split(raw.get("modes", "ecdf, kernel"), ",")),
    )


def config_text(cfg: McConfig) -> str:
    """Inverse of :func:`parse_config`."""
    return "\n".join([
        f"x = {cfg.x.spec()}",
        "y = " + "; ".join(y.spec() for y in cfg.ys),
        "t = " + ", ".join(repr(t) for t in cfg.ts),
        "n = " + ", ".join(str(n) for n in cfg.ns),
        f"replications = {cfg.replications}",
        f"seed = {cfg.seed}",
        "modes = " + ", ".join(cfg.modes),
    ]) + "\n"
