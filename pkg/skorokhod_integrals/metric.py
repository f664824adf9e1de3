from typing import Tuple

import hydra
from omegaconf import DictConfig

from skorokhod_integrals import utils
from skorokhod_integrals.cadlag import read_path_csv
from skorokhod_integrals.metrics import d_J1, d_M1
from skorokhod_integrals.study import SkorokhodStudyRunner
from skorokhod_integrals.utils.exceptions import ConfigError

log = utils.get_pylogger(__name__)


class SkorokhodMetricRunner(SkorokhodStudyRunner):
    """Computes the J1 or M1 distance between two path files."""

    @staticmethod
    @hydra.main(version_base="1.3", config_path="configs", config_name="metric")
    @utils.task_wrapper
    def run_system(cfg: DictConfig) -> Tuple[dict, dict]:
        """Reads `x` and `y`, prints d_J1 or d_M1 (`kind`) to stdout.

        Args:
            cfg (DictConfig): Configuration composed by Hydra.

        Returns:
            Tuple[dict, dict]: Dict with the distance and dict with all instantiated objects.

        Raises:
            ConfigError: If `kind` is neither `j1` nor `m1`.
        """
        utils.extras(cfg)

        if cfg.kind not in ("j1", "m1"):
            raise ConfigError(f"Unknown metric <{cfg.kind}>, expected `j1` or `m1`.")

        x, y = read_path_csv(cfg.x), read_path_csv(cfg.y)
        resolution = utils.instantiate_metric_config(cfg.get("metric"))
        object_dict = {"cfg": cfg, "x": x, "y": y, "metric": resolution}

        if cfg.kind == "j1":
            distance = d_J1(x, y, resolution)
        else:
            distance = d_M1(x, y, resolution, strong=cfg.get("strong", False))
        log.info(f"d_{cfg.kind.upper()}({cfg.x}, {cfg.y}) = {distance:.12g}")
        print(f"{distance:.12g}")

        return {f"d_{cfg.kind}": distance}, object_dict


def main():
    """Run the script."""
    SkorokhodMetricRunner.main()


if __name__ == "__main__":
    SkorokhodMetricRunner.main()
