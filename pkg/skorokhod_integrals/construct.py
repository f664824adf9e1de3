from typing import Tuple

import hydra
import numpy as np
import pandas as pd
from omegaconf import DictConfig

from skorokhod_integrals import utils
from skorokhod_integrals.cadlag import StepPath, read_path_csv, write_path_csv
from skorokhod_integrals.constructions import (
    BridgeTail,
    ExcursionWindows,
    PartitionGrid,
    ThresholdLadder,
    adapted_monotone_step,
    corrected_integrand,
    excursion_windows,
    monotone_bridge,
    remainder_split,
)
from skorokhod_integrals.constructions.decompositions import TERM_NAMES
from skorokhod_integrals.experiments import ConstructionConfig, write_table
from skorokhod_integrals.study import SkorokhodStudyRunner, output_target
from skorokhod_integrals.utils.exceptions import ConfigError

log = utils.get_pylogger(__name__)

OPERATIONS = ("windows", "corrected", "bridge", "split")


def build_windows(H: StepPath, construction: ConstructionConfig, disc=()) -> ExcursionWindows:
    """Excursion windows of H for the ladder level and the dyadic grid of `construction`."""
    ladder = ThresholdLadder.geometric(construction.a1, construction.levels)
    grid = PartitionGrid.dyadic(
        construction.level, H.horizon, construction.offset_fraction, disc=disc
    )
    return excursion_windows(
        H, ladder.level(construction.k), grid, construction.k, construction.level
    )


def windows_frame(windows: ExcursionWindows) -> pd.DataFrame:
    return pd.DataFrame(
        [(j, *window) for j, window in enumerate(windows)],
        columns=["window", "tau", "rho", "floor", "ceiling"],
    )


def split_frame(H: StepPath, X: StepPath, windows, construction: ConstructionConfig, t: float):
    """Signed five-term breakdown, one row per window and coordinate."""
    split = remainder_split(H, X, windows, construction.gamma, construction.R, t)
    rows = []
    for j, terms in enumerate(split.windows):
        for i in range(terms.integral.size):
            rows.append(
                [j, i, terms.window.tau, terms.window.rho, *terms.terms[:, i]]
                + [terms.integral[i], terms.scaling[i], terms.reconstruction_error]
            )
    columns = ["window", "coordinate", "tau", "rho", *TERM_NAMES, "integral", "Y"]
    return pd.DataFrame(rows, columns=columns + ["reconstruction_error"]), split


class SkorokhodConstructRunner(SkorokhodStudyRunner):
    """Runs one step of the excursion machinery on path files."""

    @staticmethod
    @hydra.main(version_base="1.3", config_path="configs", config_name="construct")
    @utils.task_wrapper
    def run_system(cfg: DictConfig) -> Tuple[dict, dict]:
        """Applies `op` to the integrand `H` (and the integrator `X` for `split`).

        - `windows`: table of the excursion windows of H;
        - `corrected`: the corrected integrand H̃ as a path file;
        - `bridge`: monotone bridge (`tail=A|B`) or adapted step (`tail=adapted`) of coordinate
          `coordinate` of H on [`t1`, `t2`], as a path file;
        - `split`: five-term remainder split of every window integral at `t`.

        Args:
            cfg (DictConfig): Configuration composed by Hydra.

        Returns:
            Tuple[dict, dict]: Dict with summary figures and dict with all instantiated objects.

        Raises:
            ConfigError: If `op` is unknown or an input path is missing.
        """
        utils.extras(cfg)

        if cfg.op not in OPERATIONS:
            raise ConfigError(f"Unknown operation <{cfg.op}>, expected one of {OPERATIONS}.")
        if not cfg.get("H") or (cfg.op == "split" and not cfg.get("X")):
            raise ConfigError(f"Operation <{cfg.op}> needs the input path files.")

        log.info(f"Instantiating construction <{cfg.construction._target_}>")
        construction: ConstructionConfig = hydra.utils.instantiate(cfg.construction)
        H = read_path_csv(cfg.H)
        target = output_target(cfg)
        object_dict = {"cfg": cfg, "H": H, "construction": construction}
        disc = list(cfg.get("disc") or [])

        if cfg.op == "bridge":
            x = H.coordinate(cfg.get("coordinate", 0))
            if cfg.tail == "adapted":
                piece = adapted_monotone_step(
                    x, cfg.t1, cfg.t2, construction.gamma, construction.R
                )
            else:
                tail = BridgeTail(str(cfg.tail))
                piece = monotone_bridge(x, cfg.t1, cfg.t2, construction.gamma, tail)
            write_path_csv(piece.path, target)
            object_dict["piece"] = piece
            return {"steps": len(piece.stopping_times)}, object_dict

        windows = build_windows(H, construction, disc)
        object_dict["windows"] = windows
        log.info(f"{len(windows)} excursion windows above a_k={windows.threshold:.6g}")

        if cfg.op == "windows":
            frame = windows_frame(windows)
            write_table(frame, target)
            utils.show_table(cfg, frame, title="Excursion windows")
            return {"windows": len(windows)}, object_dict

        if cfg.op == "corrected":
            corrected, frozen = corrected_integrand(H, windows)
            write_path_csv(corrected, target)
            object_dict.update(corrected=corrected, frozen=frozen)
            return {"windows": len(windows)}, object_dict

        X = read_path_csv(cfg.X)
        t = H.horizon if cfg.get("t") is None else cfg.t
        frame, split = split_frame(H, X, windows, construction, t)
        write_table(frame, target)
        utils.show_table(cfg, frame, title=f"Remainder split at t={t:g}")
        object_dict.update(X=X, split=split)
        return {
            "windows": len(windows),
            "bound_violations": split.bound_violations,
            "max_reconstruction_error": split.max_reconstruction_error,
            "max_term1": float(np.abs(frame["term1"]).max()) if len(frame) else 0.0,
        }, object_dict


def main():
    """Run the script."""
    SkorokhodConstructRunner.main()


if __name__ == "__main__":
    SkorokhodConstructRunner.main()
