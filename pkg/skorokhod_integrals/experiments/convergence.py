"""Monte Carlo comparison of the laws of F(I_n) with the law of F applied to the limit integral."""
from functools import partial

import numpy as np
import pandas as pd
from scipy import stats

from skorokhod_integrals.experiments.base import ExperimentConfig, replicate, write_table
from skorokhod_integrals.experiments.functionals import PathFunctional
from skorokhod_integrals.scenarios import LimitLaw, ScenarioSample
from skorokhod_integrals.utils.pylogger import get_pylogger

log = get_pylogger(__name__)

STUDY_COLUMNS = ["n", "functional", "estimate", "limit_value", "gap", "ks_stat", "reps", "seed"]

KS_CAVEAT = (
    "ks_stat compares the law of a single M1-continuous functional of I_n with its limit "
    "mixture; it does not test weak convergence of the integrals on path space."
)


def ks_statistic(samples: np.ndarray, law: LimitLaw, functional: PathFunctional) -> float:
    """sup_x |F̂_N(x) − F(x)| between the empirical CDF of `samples` and the mixture CDF.

    Both CDFs are right-continuous step functions, so the supremum is attained on the union of
    their jump points.
    """
    samples = np.asarray(samples, dtype=float)
    support = np.union1d(np.unique(samples), law.values(functional))
    empirical = stats.ecdf(samples).cdf.evaluate(support)
    return float(np.max(np.abs(empirical - law.cdf(functional, support))))


def _functional_values(functionals, sample: ScenarioSample, r: int) -> np.ndarray:
    integral = sample.integral
    return np.array([functional(integral) for functional in functionals])


def run_convergence_study(cfg: ExperimentConfig) -> pd.DataFrame:
    """Estimates E[F(I_n)] for every index n and functional F against the limit value.

    The limit value is the expectation of F under the scenario's limit law (the limit integrals
    with their correction weights). For mixture limits the Kolmogorov–Smirnov statistic between
    the sampled values and the mixture is reported, else `ks_stat` is NaN.

    Returns:
        One row per (n, functional), columns `STUDY_COLUMNS`.

    Raises:
        ConfigError: If a functional is evaluated at a discontinuity of the limit.
    """
    cfg.validate_functionals()
    law = cfg.scenario.limit()
    rows = []
    for n in cfg.indices:
        log.info(f"{cfg.scenario.name}: running {cfg.reps} replications at n={n}")
        values = np.array(replicate(partial(_functional_values, cfg.functionals), cfg, n))
        for j, functional in enumerate(cfg.functionals):
            column = values[:, j]
            estimate = float(np.sum(column) / cfg.reps)
            limit_value = law.expectation(functional)
            ks_stat = np.nan
            if len(law) > 1:
                ks_stat = ks_statistic(column, law, functional)
                weights = law.empirical_weights(column, functional)
                log.info(
                    f"n={n}, {functional.name}: empirical atom weights {np.round(weights, 4)} "
                    f"against {law.weights}"
                )
            rows.append(
                [
                    n,
                    functional.name,
                    estimate,
                    limit_value,
                    abs(estimate - limit_value),
                    ks_stat,
                    cfg.reps,
                    cfg.seed,
                ]
            )

    frame = pd.DataFrame(rows, columns=STUDY_COLUMNS)
    if cfg.out is not None:
        write_table(frame, cfg.out, comments=[f"scenario={cfg.scenario.name}", KS_CAVEAT])
    return frame
