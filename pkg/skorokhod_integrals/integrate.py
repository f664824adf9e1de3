from typing import Tuple

import hydra
from omegaconf import DictConfig, ListConfig

from skorokhod_integrals import utils
from skorokhod_integrals.cadlag import read_path_csv, write_path_csv
from skorokhod_integrals.integration import ito_integral, limit_integral
from skorokhod_integrals.study import SkorokhodStudyRunner, output_target

log = utils.get_pylogger(__name__)


class SkorokhodIntegrateRunner(SkorokhodStudyRunner):
    """Integrates a step integrand against a step integrator read from path files."""

    @staticmethod
    @hydra.main(version_base="1.3", config_path="configs", config_name="integrate")
    @utils.task_wrapper
    def run_system(cfg: DictConfig) -> Tuple[dict, dict]:
        """Writes ∫_0^· H_{s−} dX_s, or the corrected limit integral when `correction_weights`
        is set, as a path file.

        Args:
            cfg (DictConfig): Configuration composed by Hydra.

        Returns:
            Tuple[dict, dict]: Dict with the terminal value and dict with all instantiated objects.
        """
        utils.extras(cfg)

        H, X = read_path_csv(cfg.H), read_path_csv(cfg.X)
        weights = cfg.get("correction_weights")
        if weights is None:
            integral = ito_integral(H, X)
        else:
            if isinstance(weights, ListConfig):
                weights = list(weights)
            log.info(f"Adding the correction term with weights {weights}")
            integral = limit_integral(H, X, weights)

        target = write_path_csv(integral, output_target(cfg))
        log.info(f"Integral written to <{target}>")

        object_dict = {"cfg": cfg, "H": H, "X": X, "integral": integral}
        metric_dict = {
            f"terminal_value_{i + 1}": float(v) for i, v in enumerate(integral.terminal_value)
        }
        return metric_dict, object_dict


def main():
    """Run the script."""
    SkorokhodIntegrateRunner.main()


if __name__ == "__main__":
    SkorokhodIntegrateRunner.main()
