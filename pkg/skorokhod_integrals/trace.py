from typing import Tuple

import hydra
from omegaconf import DictConfig

from skorokhod_integrals import utils
from skorokhod_integrals.experiments import ConstructionConfig, run_machinery_trace
from skorokhod_integrals.study import SkorokhodStudyRunner, output_target

log = utils.get_pylogger(__name__)


class SkorokhodTraceRunner(SkorokhodStudyRunner):
    """Traces the excursion windows and the remainder split sample by sample."""

    @staticmethod
    @hydra.main(version_base="1.3", config_path="configs", config_name="trace")
    @utils.task_wrapper
    def run_system(cfg: DictConfig) -> Tuple[dict, dict]:
        """Runs the machinery trace and writes the per-window table as CSV.

        Args:
            cfg (DictConfig): Configuration composed by Hydra.

        Returns:
            Tuple[dict, dict]: Dict with the report figures and dict with all instantiated objects.
        """
        utils.extras(cfg)

        scenario = utils.instantiate_scenario(cfg.scenario)
        experiment = utils.instantiate_experiment_config(cfg, scenario, out=output_target(cfg))

        log.info(f"Instantiating construction <{cfg.construction._target_}>")
        construction: ConstructionConfig = hydra.utils.instantiate(cfg.construction)

        object_dict = {
            "cfg": cfg,
            "scenario": scenario,
            "experiment": experiment,
            "construction": construction,
        }
        utils.log_run_parameters(object_dict)

        log.info(f"Starting machinery trace on <{scenario.name}>!")
        report = run_machinery_trace(experiment, construction)
        object_dict["report"] = report

        metric_dict = {
            "event_A_frequency": report.event_A_frequency,
            "bound_violations": report.bound_violations,
            "max_reconstruction_error": report.max_reconstruction_error,
        }
        return metric_dict, object_dict


def main():
    """Run the script."""
    SkorokhodTraceRunner.main()


if __name__ == "__main__":
    SkorokhodTraceRunner.main()
