"""Command-line front end.

Distribution specs use ``family(key=value, ...)``, for instance
``exp(rate=1)``, ``weibull(rate=0.5, shape=2)`` or
``phr(base=exp(rate=1), gamma=3)``.  Time grids are ``start:stop:step``
(stop included within 1e-12), a single number, or a comma list.

Exit status is 0 on success, 2 on a usage error and 1 when a computation
fails; in the last case a JSON object ``{"error": code, "message": text}``
is written to standard error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import measures
from .distributions import FAMILIES, parse_distribution
from .errors import DataFileError, WrjiError
from .estimators import (
    CV_CDF,
    CV_PDF,
    KERNELS,
    EstimatorConfig,
    Fixed,
    estimate_modes,
    resolve_bandwidth,
)
from .fitting import (
    DATASETS,
    DEFAULT_SEED,
    FAMILY_TAGS,
    comparison_csv,
    fit_table,
    load_dataset,
    mle,
    read_values,
    wrji_model_comparison,
)
from .simulation import emit_table, parse_config, run_mc, table1_config

SPEC_HELP = (
    "distribution spec family(key=value,...); families: "
    + ", ".join(sorted(set(FAMILIES)))
    + "; fixtures ex32x(), ex32y()"
)
DATASET_FAMILIES = {"bladder_cancer_128": ("LL", "APLL", "ExLL"), "guinea_pigs_72": ("WEI", "GEE", "EEG")}
DATASET_ACTUAL = {"bladder_cancer_128": "LL", "guinea_pigs_72": "GEE"}

# kinds that need no age / no second law
_GLOBAL = {"wji", "extropy", "weighted_extropy", "crj", "weighted_discrimination"}
_SINGLE = {"extropy", "residual_extropy", "weighted_extropy", "weighted_residual_extropy", "crj",
           "dynamic_survival_extropy", "mrl", "vitality"}
MEASURE_KINDS = sorted(_GLOBAL | _SINGLE | {"wrji", "wrdj", "past_wji"})
CURVE_KINDS = sorted(k for k in MEASURE_KINDS if k not in _GLOBAL)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def parse_grid(text: str) -> list[float]:
    """``start:stop:step``, a number, or a comma-separated list."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"bad grid {text!r}; expected start:stop:step")
        try:
            a, b, h = (float(p) for p in parts)
        except ValueError:
            raise UsageError(f"bad grid {text!r}") from None
        if not h > 0 or b < a:
            raise UsageError(f"bad grid {text!r}; need step > 0 and stop >= start")
        k = math.floor((b - a) / h + 1e-9)
        if a + (k + 1) * h <= b + 1e-12:
            k += 1
        vals = [a + i * h for i in range(k + 1)]
        if abs(vals[-1] - b) <= 1e-12 * max(1.0, abs(b)):
            vals[-1] = b
        # step accumulation noise only; keep 12 decimals
        return [round(v, 12) for v in vals]
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad grid {text!r}") from None


def _read_file(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise DataFileError(f"cannot read {path}: {exc.strerror}") from None


def load_values(path: str | None = None, csv_spec: str | None = None) -> np.ndarray:
    """Data from a one-number-per-line file or from ``file:column`` of a CSV file."""
    if path is not None:
        try:
            return read_values(_read_file(path))
        except ValueError as exc:
            raise DataFileError(f"{path}: {exc}") from None
    fname, sep, column = csv_spec.rpartition(":")
    if not sep or not fname:
        raise UsageError(f"--csv expects file:column, got {csv_spec!r}")
    rows = list(csv.reader(io.StringIO(_read_file(fname))))
    if not rows:
        raise DataFileError(f"{fname}: empty file")
    header = [h.strip() for h in rows[0]]
    if column in header:
        j, body = header.index(column), rows[1:]
    elif column.isdigit():
        j, body = int(column), rows
    else:
        raise DataFileError(f"{fname}: no column {column!r}")
    try:
        return np.asarray([float(r[j]) for r in body if len(r) > j and r[j].strip()], dtype=float)
    except ValueError as exc:
        raise DataFileError(f"{fname}: {exc}") from None


def _dist(text):
    return parse_distribution(text) if text is not None else None


def _sample_from(args, suffix: str, default_key: int):
    """Sample for one side of an estimate: a file, a CSV column, or draws from a law."""
    path = getattr(args, f"data{suffix}")
    csv_spec = getattr(args, f"csv{suffix}")
    law = getattr(args, "x" if suffix == "" else "y")
    given = [v is not None for v in (path, csv_spec, law)]
    if sum(given) != 1:
        side = "true" if suffix == "" else "assigned"
        raise UsageError(f"give exactly one of --data{suffix}, --csv{suffix} or --{'x' if suffix == '' else 'y'} for the {side} sample")
    if law is not None:
        if args.n is None:
            raise UsageError("--n is required when sampling from a distribution")
        return parse_distribution(law).sample(args.n, np.random.SeedSequence(args.seed, spawn_key=(default_key,)))
    return load_values(path, csv_spec)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else ("" if math.isnan(v) else repr(v))
    return str(v)


def _write_csv(out, header, rows):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])


def _json(out, obj):
    def clean(v):
        if isinstance(v, float) and not math.isfinite(v):
            return None
        if isinstance(v, dict):
            return {k: clean(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [clean(x) for x in v]
        return v

    json.dump(clean(obj), out, indent=2)
    out.write("\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _measure_value(kind, X, Y, t, route, tol):
    if kind in ("mrl", "vitality"):
        v = getattr(measures, kind)(X, t, tol)
        return measures.MeasureValue(v, measures.QUAD, math.nan)
    fn = getattr(measures, kind)
    if kind in ("past_wji", "wrdj_direct"):
        return fn(X, Y, t, tol)
    args = [X] if kind in _SINGLE else [X, Y]
    if kind not in _GLOBAL:
        args.append(t)
    return fn(*args, route=route, tol=tol)


def _check_measure_args(kind, X, Y, t):
    if kind not in _SINGLE and Y is None:
        raise UsageError(f"--y is required for kind {kind}")
    if kind in _SINGLE and Y is not None:
        raise UsageError(f"kind {kind} takes no --y")
    if kind in _GLOBAL and t is not None:
        raise UsageError(f"kind {kind} takes no --t")
    if kind not in _GLOBAL and t is None:
        raise UsageError(f"--t is required for kind {kind}")


def cmd_measure(args, out):
    X, Y = _dist(args.x), _dist(args.y)
    _check_measure_args(args.kind, X, Y, args.t)
    mv = _measure_value(args.kind, X, Y, args.t, args.route, args.tol)
    row = {"kind": args.kind, "x": X.spec(), "y": Y.spec() if Y is not None else None, "t": args.t,
           "value": float(mv.value), "route": mv.route}
    if args.json:
        _json(out, row)
    else:
        _write_csv(out, list(row), [list(row.values())])


def cmd_curve(args, out):
    X, Y = _dist(args.x), _dist(args.y)
    ts = parse_grid(args.t)
    _check_measure_args(args.kind, X, Y, ts[0])
    rows = []
    for t in ts:
        mv = _measure_value(args.kind, X, Y, t, args.route, args.tol)
        rows.append([t, float(mv.value), mv.route])
    if args.json:
        _json(out, {"kind": args.kind, "x": X.spec(), "y": Y.spec() if Y is not None else None,
                    "t": [r[0] for r in rows], "value": [r[1] for r in rows], "route": [r[2] for r in rows]})
    else:
        _write_csv(out, ["t", "value", "route"], rows)


def _config(args) -> EstimatorConfig:
    kernel = KERNELS[args.kernel]
    dens = Fixed(args.h_pdf) if args.h_pdf is not None else CV_PDF
    surv = Fixed(args.h_cdf) if args.h_cdf is not None else CV_CDF
    return EstimatorConfig(kernel, dens, surv)


def cmd_estimate(args, out):
    sx = _sample_from(args, "", 0)
    sy = _sample_from(args, "_y", 1)
    ts = parse_grid(args.t)
    cfg = _config(args)
    modes = ("ecdf", "kernel") if args.mode == "both" else (args.mode,)
    cols = estimate_modes(sx, sy, ts, modes, cfg)
    label = {"ecdf": "J_n", "kernel": "J_h"}
    rows = [[t] + [None if cols[m][i] is None else cols[m][i].value for m in modes] for i, t in enumerate(ts)]
    if args.json:
        _json(out, {"t": ts, **{label[m]: [None if e is None else e._asdict() for e in cols[m]] for m in modes}})
    else:
        _write_csv(out, ["t"] + [label[m] for m in modes], rows)


def cmd_bandwidth(args, out):
    sx = _sample_from(args, "", 0)
    kernel = KERNELS[args.kernel]
    rules = (CV_PDF, CV_CDF) if args.rule == "both" else (args.rule,)
    rows = [[r, resolve_bandwidth(sx, r, kernel)] for r in rules]
    if args.json:
        _json(out, {r: h for r, h in rows})
    else:
        _write_csv(out, ["rule", "h"], rows)


def cmd_simulate(args, out):
    if (args.config is None) == (args.table is None):
        raise UsageError("give exactly one of --config or --table")
    if args.config is not None:
        cfg = parse_config(_read_file(args.config))
        if args.seed_given:
            cfg = type(cfg)(cfg.x, cfg.ys, cfg.ts, cfg.ns, cfg.replications, args.seed, cfg.modes)
        if args.replications is not None:
            cfg = type(cfg)(cfg.x, cfg.ys, cfg.ts, cfg.ns, args.replications, cfg.seed, cfg.modes)
        report = run_mc(cfg, threads=args.threads)
    else:
        reps = args.replications if args.replications is not None else 10000
        blocks = ("exponential", "beta") if args.table == "table1" else (args.table,)
        report = None
        for b in blocks:
            r = run_mc(table1_config(b, reps, args.seed), threads=args.threads)
            report = r if report is None else report.merge(r)
    if args.json:
        _json(out, [c._asdict() for c in report.cells])
    else:
        out.write(emit_table(report))


def _fit_data(args):
    given = [v is not None for v in (args.dataset, args.data, args.csv)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --dataset, --data or --csv")
    if args.dataset is not None:
        if args.dataset not in DATASETS:
            raise UsageError(f"unknown dataset {args.dataset!r}; choose from {', '.join(DATASETS)}")
        return load_dataset(args.dataset).values
    return load_values(args.data, args.csv)


def _families(args, default):
    fams = []
    for f in args.family or []:
        fams += [p.strip() for p in f.split(",") if p.strip()]
    if not fams:
        if default is None:
            raise UsageError("--family is required with --data/--csv")
        fams = list(default)
    return fams


def cmd_fit(args, out):
    fams = _families(args, DATASET_FAMILIES.get(args.dataset))
    data = _fit_data(args)
    reports = [mle(f, data) for f in fams]
    if args.json:
        _json(out, [r.as_dict() for r in reports])
    elif args.format == "table":
        out.write(fit_table(reports))
    else:
        rows = []
        for r in reports:
            rows.append([r.family, ";".join(f"{k}={v!r}" for k, v in zip(r.param_names, r.params)),
                         r.loglik, r.ks, r.pvalue, r.converged])
        _write_csv(out, ["family", "params", "loglik", "ks", "pvalue", "converged"], rows)


def cmd_compare(args, out):
    actual = args.actual or DATASET_ACTUAL.get(args.dataset)
    if actual is None:
        raise UsageError("--actual is required with --data/--csv")
    cands = _families(args, [f for f in DATASET_FAMILIES.get(args.dataset, ()) if f != actual])
    ts = parse_grid(args.t)
    data = _fit_data(args)
    rep = wrji_model_comparison(data, actual, cands, ts, seed=args.seed)
    for note in rep.notes:
        print(note, file=sys.stderr)
    if args.json:
        _json(out, {
            "actual": rep.actual,
            "seed": rep.seed,
            "t": list(rep.ts),
            "curves": rep.curves,
            "fits": {k: v.as_dict() for k, v in rep.fits.items()},
            "closeness": {c: {m: rep.closeness(c, m) for m in ("J_n", "J_h")} for c in rep.candidates},
            "notes": list(rep.notes),
        })
    else:
        out.write(comparison_csv(rep))


def cmd_datasets(args, out):
    if args.name is None:
        rows = [[name, load_dataset(name).n, ",".join(DATASET_FAMILIES[name])] for name in DATASETS]
        if args.json:
            _json(out, [dict(zip(("name", "n", "families"), r)) for r in rows])
        else:
            _write_csv(out, ["name", "n", "families"], rows)
        return
    if args.name not in DATASETS:
        raise UsageError(f"unknown dataset {args.name!r}; choose from {', '.join(DATASETS)}")
    ds = load_dataset(args.name)
    if args.json:
        _json(out, {"name": ds.name, "values": list(ds.raw)})
    else:
        _write_csv(out, ["value"], [[v] for v in ds.raw])


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wrji", description=__doc__.split("\n\n")[0],
                formatter_class=argparse.RawDescriptionHelpFormatter,
                epilog="Distribution specs: " + SPEC_HELP)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, seed=False):
        sp.add_argument("--json", action="store_true", help="JSON instead of CSV")
        if seed:
            sp.add_argument("--seed", type=int, default=None, help=f"master seed (default {DEFAULT_SEED})")

    def law_args(sp):
        sp.add_argument("--x", help="true law; " + SPEC_HELP)
        sp.add_argument("--y", help="assigned law")
        sp.add_argument("--route", choices=("auto", "closed_form", "quadrature"), default="auto")
        sp.add_argument("--tol", type=float, default=1e-10)

    sp = sub.add_parser("measure", help="one information measure")
    sp.add_argument("--kind", required=True, choices=MEASURE_KINDS)
    law_args(sp)
    sp.add_argument("--t", type=float, help="age")
    common(sp)
    sp.set_defaults(func=cmd_measure, need=("x",))

    sp = sub.add_parser("curve", help="a residual measure on a grid of ages")
    sp.add_argument("--kind", required=True, choices=CURVE_KINDS)
    law_args(sp)
    sp.add_argument("--t", required=True, help="grid start:stop:step")
    common(sp)
    sp.set_defaults(func=cmd_curve, need=("x",))

    def sample_args(sp, two):
        sp.add_argument("--data", help="true sample, one value per line")
        sp.add_argument("--csv", help="true sample as file:column")
        sp.add_argument("--x", help="draw the true sample from this law")
        if two:
            sp.add_argument("--data-y", dest="data_y", help="assigned sample, one value per line")
            sp.add_argument("--csv-y", dest="csv_y", help="assigned sample as file:column")
            sp.add_argument("--y", help="draw the assigned sample from this law")
        sp.add_argument("--n", type=int, help="size of drawn samples")
        sp.add_argument("--kernel", choices=sorted(KERNELS), default="gaussian")

    sp = sub.add_parser("estimate", help="non-parametric WRJI estimates J_n and J_h")
    sample_args(sp, True)
    sp.add_argument("--t", required=True, help="grid start:stop:step")
    sp.add_argument("--mode", choices=("ecdf", "kernel", "both"), default="both")
    sp.add_argument("--h-pdf", dest="h_pdf", type=float, help="fixed density bandwidth")
    sp.add_argument("--h-cdf", dest="h_cdf", type=float, help="fixed survival bandwidth")
    common(sp, seed=True)
    sp.set_defaults(func=cmd_estimate)

    sp = sub.add_parser("bandwidth", help="cross-validated bandwidths")
    sample_args(sp, False)
    sp.add_argument("--rule", choices=(CV_PDF, CV_CDF, "both"), default="both")
    common(sp, seed=True)
    sp.set_defaults(func=cmd_bandwidth)

    sp = sub.add_parser("simulate", help="Monte Carlo bias/MSE table")
    sp.add_argument("--config", help="key = value configuration file")
    sp.add_argument("--table", choices=("exponential", "beta", "table1"), help="built-in design")
    sp.add_argument("--replications", type=int)
    sp.add_argument("--threads", type=int, default=1)
    common(sp, seed=True)
    sp.set_defaults(func=cmd_simulate)

    def data_args(sp):
        sp.add_argument("--dataset", help="shipped dataset: " + ", ".join(DATASETS))
        sp.add_argument("--data", help="one value per line")
        sp.add_argument("--csv", help="file:column")
        sp.add_argument("--family", action="append", help="family tag(s): " + ", ".join(FAMILY_TAGS))

    sp = sub.add_parser("fit", help="maximum-likelihood fits with K-S statistics")
    data_args(sp)
    sp.add_argument("--format", choices=("csv", "table"), default="csv")
    common(sp)
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("compare", help="parametric and estimated WRJI curves of fitted models")
    data_args(sp)
    sp.add_argument("--actual", help="family taken as the true law")
    sp.add_argument("--t", required=True, help="grid start:stop:step")
    common(sp, seed=True)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("datasets", help="list shipped datasets or print one")
    sp.add_argument("--name")
    common(sp)
    sp.set_defaults(func=cmd_datasets)
    return p


def run(argv=None, out=None, err=None) -> int:
    """Run the command line; returns the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if hasattr(args, "seed"):
            args.seed_given = args.seed is not None
            if args.seed is None:
                args.seed = DEFAULT_SEED
        for name in getattr(args, "need", ()):
            if getattr(args, name) is None:
                raise UsageError(f"--{name} is required")
        args.func(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except WrjiError as exc:
        json.dump({"error": exc.code, "message": str(exc)}, err)
        err.write("\n")
        return 1
    except (ValueError, ArithmeticError) as exc:
        json.dump({"error": "computation-failed", "message": str(exc)}, err)
        err.write("\n")
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
