from typing import List

import hydra
from omegaconf import DictConfig, ListConfig

from skorokhod_integrals.utils import pylogger

log = pylogger.get_pylogger(__name__)


def instantiate_scenario(scenario_cfg: DictConfig):
    """Instantiates the scenario from config."""

    if not scenario_cfg or "_target_" not in scenario_cfg:
        raise TypeError("Scenario config must be a DictConfig with a `_target_`!")

    log.info(f"Instantiating scenario <{scenario_cfg._target_}>")
    return hydra.utils.instantiate(scenario_cfg)


def instantiate_functionals(functionals_cfg: DictConfig) -> List:
    """Instantiates functionals from config."""

    functionals: List = []

    if not functionals_cfg:
        log.warning("No functional configs found! Skipping..")
        return functionals

    if not isinstance(functionals_cfg, (DictConfig, ListConfig)):
        raise TypeError("Functionals config must be a DictConfig or a ListConfig!")

    items = functionals_cfg
    if isinstance(functionals_cfg, DictConfig):
        items = functionals_cfg.values()
    for fn_conf in items:
        if isinstance(fn_conf, DictConfig) and "_target_" in fn_conf:
            log.info(f"Instantiating functional <{fn_conf._target_}>")
            functionals.append(hydra.utils.instantiate(fn_conf))

    return functionals


def instantiate_metric_config(metric_cfg: DictConfig):
    """Instantiates the metric resolution settings, falling back to the defaults."""
    from skorokhod_integrals.metrics import MetricConfig

    if not metric_cfg:
        log.warning("No metric config found! Using default resolution..")
        return MetricConfig()

    log.info(f"Instantiating metric config <{metric_cfg._target_}>")
    return hydra.utils.instantiate(metric_cfg)


def instantiate_experiment_config(cfg: DictConfig, scenario, out=None):
    """Builds the batch study inputs from the composed config."""
    from skorokhod_integrals.experiments import ExperimentConfig

    return ExperimentConfig(
        scenario=scenario,
        indices=list(cfg.indices),
        reps=cfg.reps,
        functionals=instantiate_functionals(cfg.get("functionals")),
        metric=instantiate_metric_config(cfg.get("metric")),
        seed=cfg.seed,
        n_jobs=cfg.get("n_jobs", 1),
        out=out,
        chunk_size=cfg.get("chunk_size", 256),
    )
