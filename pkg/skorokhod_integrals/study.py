from abc import ABC
from functools import partial
from pathlib import Path
from typing import Tuple

import hydra
from omegaconf import DictConfig

from skorokhod_integrals import setup_root, utils
from skorokhod_integrals.experiments import (
    ConditionConfig,
    run_condition_study,
    run_convergence_study,
    run_metric_decay,
)
from skorokhod_integrals.utils.exceptions import ConfigError

log = utils.get_pylogger(__name__)

STUDIES = {
    "convergence": run_convergence_study,
    "decay": run_metric_decay,
    "conditions": run_condition_study,
}


def output_target(cfg: DictConfig, suffix: str = "csv") -> Path:
    """`out` when given, else `<task_name>.<suffix>` in the run output directory."""
    if cfg.get("out"):
        return Path(cfg.out)
    return Path(cfg.paths.output_dir, f"{cfg.task_name}.{suffix}")


class SkorokhodStudyRunner(ABC):
    """Runs a batch study over a scenario.

    `convergence` compares functional laws, `decay` follows the metric distances and
    `conditions` estimates the frequency of a condition's event.
    """

    @classmethod
    def main(cls) -> None:
        """Runs the requested experiment."""
        # Set up the environment
        cls.pre_run_routine()

        # Run the system with config loaded by @hydra.main
        cls.run_system()

    @classmethod
    def pre_run_routine(cls) -> None:
        """Sets-up the environment before running the study."""
        # Load environment variables from `.env` file if it exists
        # Load before hydra main to allow for setting environment variables with ${oc.env:ENV_NAME}
        setup_root()

    @staticmethod
    @hydra.main(version_base="1.3", config_path="configs", config_name="study")
    @utils.task_wrapper
    def run_system(cfg: DictConfig) -> Tuple[dict, dict]:
        """Runs the study selected by `cfg.study` and writes its table as CSV.

        Wrapped in @task_wrapper, which logs invalid inputs on one line and reports the run
        output directory.

        Args:
            cfg (DictConfig): Configuration composed by Hydra.

        Returns:
            Tuple[dict, dict]: Dict with the largest gaps and dict with all instantiated objects.

        Raises:
            ConfigError: If the study is unknown or a functional is evaluated at a discontinuity of
                the limit.
        """
        # apply extra utilities
        # (e.g. merge a flat config file, print cfg tree, etc.)
        utils.extras(cfg)

        if cfg.study not in STUDIES:
            raise ConfigError(f"Unknown study <{cfg.study}>, expected one of {sorted(STUDIES)}.")

        scenario = utils.instantiate_scenario(cfg.scenario)
        experiment = utils.instantiate_experiment_config(cfg, scenario, out=output_target(cfg))

        object_dict = {
            "cfg": cfg,
            "scenario": scenario,
            "experiment": experiment,
        }
        utils.log_run_parameters(object_dict)

        log.info(f"Starting {cfg.study} study on <{scenario.name}>!")
        study = STUDIES[cfg.study]
        if cfg.study == "conditions":
            condition: ConditionConfig = hydra.utils.instantiate(cfg.condition)
            object_dict["condition"] = condition
            study = partial(study, condition=condition)
        frame = study(experiment)
        utils.show_table(cfg, frame, title=f"{scenario.name}: {cfg.study}")
        object_dict["table"] = frame

        if cfg.study == "convergence":
            metric_dict = {"max_gap": float(frame["gap"].max())}
            if frame["ks_stat"].notna().any():
                metric_dict["max_ks_stat"] = float(frame["ks_stat"].max())
        elif cfg.study == "conditions":
            metric_dict = {"last_frequency": float(frame["frequency"].iloc[-1])}
        else:
            metric_dict = {
                "last_d_j1": float(frame["d_j1"].iloc[-1]),
                "last_d_m1": float(frame["d_m1"].iloc[-1]),
            }

        return metric_dict, object_dict


def main():
    """Run the script."""
    SkorokhodStudyRunner.main()


if __name__ == "__main__":
    SkorokhodStudyRunner.main()
