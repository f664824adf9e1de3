import numpy as np
import pandas as pd

from skorokhod_integrals.experiments.base import ExperimentConfig, draw, write_table
from skorokhod_integrals.metrics import d_J1, d_M1
from skorokhod_integrals.utils.pylogger import get_pylogger

log = get_pylogger(__name__)

DECAY_COLUMNS = ["n", "d_j1", "d_m1", "j1_decay", "m1_decay", "seed"]
DECAY_TOL = 1e-12


def _decay_flags(distances: np.ndarray) -> pd.array:
    """Whether each distance is strictly below the previous one; undefined on the first row."""
    flags = [pd.NA] + [bool(b < a - DECAY_TOL) for a, b in zip(distances, distances[1:])]
    return pd.array(flags, dtype="boolean")


def run_metric_decay(cfg: ExperimentConfig) -> pd.DataFrame:
    """d_J1 and d_M1 between I_n and its limit integral, per index n.

    Each index uses the first replication stream, and the limit integral is the one of the atom
    the sample is coupled to, so the distances of a mixture limit follow the coupled subsequence.

    Returns:
        One row per n, columns `DECAY_COLUMNS`.
    """
    law = cfg.scenario.limit()
    distances = []
    for n in cfg.indices:
        sample = draw(cfg.scenario, n, cfg.seed, 0)
        limit = law.atoms[sample.atom].integral
        integral = sample.integral
        distances.append((d_J1(integral, limit, cfg.metric), d_M1(integral, limit, cfg.metric)))
        log.info(f"n={n}: d_J1={distances[-1][0]:.6g}, d_M1={distances[-1][1]:.6g}")

    d_j1, d_m1 = (np.array(column) for column in zip(*distances))
    frame = pd.DataFrame(
        {
            "n": cfg.indices,
            "d_j1": d_j1,
            "d_m1": d_m1,
            "j1_decay": _decay_flags(d_j1),
            "m1_decay": _decay_flags(d_m1),
            "seed": cfg.seed,
        },
        columns=DECAY_COLUMNS,
    )
    if len(frame) > 1 and not frame["m1_decay"].iloc[1:].all():
        log.warning(f"{cfg.scenario.name}: the M1 distance to the limit does not decay.")

    if cfg.out is not None:
        write_table(frame, cfg.out, comments=[f"scenario={cfg.scenario.name}"])
    return frame
