"""Weighted residual extropy-inaccuracy measures.

Parametric lifetime laws (:mod:`wrji.distributions`), the information
measures and their bounds (:mod:`wrji.measures`), non-parametric estimators
(:mod:`wrji.estimators`), a Monte Carlo harness (:mod:`wrji.simulation`) and
maximum-likelihood fitting with model comparison (:mod:`wrji.fitting`).
"""

from .distributions import (
    APLL,
    EEG,
    GEE,
    Beta,
    Distribution,
    ExLL,
    Exponential,
    Gamma,
    Lindley,
    LogLogistic,
    PhrPair,
    PiecewisePoly,
    PowerOnUnit,
    Transformed,
    Uniform,
    WeibullRate,
    parse_distribution,
)
from .errors import WrjiError
from .estimators import EstimatorConfig, estimate_curve, estimate_wrji
from .fitting import FitReport, ks_pvalue, ks_statistic, load_dataset, mle, wrji_model_comparison
from .measures import (
    MeasureValue,
    bound_suite,
    extropy,
    residual_extropy,
    weighted_extropy,
    weighted_residual_extropy,
    wji,
    wrdj,
    wrji,
)
from .simulation import McConfig, run_mc

__version__ = "0.1.0"
