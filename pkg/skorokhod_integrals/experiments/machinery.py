"""Sample-by-sample trace of the excursion machinery: windows, decompositions and the five-term
remainder split, with the bound checks that hold on event A."""
from dataclasses import dataclass
from functools import partial
from typing import List, Optional

import numpy as np
import pandas as pd

from skorokhod_integrals.constructions import (
    PartitionGrid,
    RemainderSplit,
    ThresholdLadder,
    event_A,
    event_Gamma,
    excursion_windows,
    remainder_split,
)
from skorokhod_integrals.constructions.decompositions import TERM_NAMES
from skorokhod_integrals.experiments.base import ExperimentConfig, replicate, write_table
from skorokhod_integrals.scenarios import ScenarioSample
from skorokhod_integrals.utils.exceptions import ConfigError, PreconditionError
from skorokhod_integrals.utils.pylogger import get_pylogger

log = get_pylogger(__name__)

TRACE_COLUMNS = [
    "n",
    "rep",
    "window",
    "tau",
    "rho",
    "floor",
    "event_A",
    "event_Gamma",
    *TERM_NAMES,
    "Y",
    "reconstruction_error",
    "violations",
]


@dataclass(frozen=True)
class ConstructionConfig:
    """Parameters of the excursion machinery.

    Args:
        a1: First ladder threshold.
        levels: Number of ladder thresholds K.
        k: Ladder index of the window threshold a_k.
        level: Level ℓ of the dyadic grid.
        offset_fraction: Shift of the dyadic grid in units of its mesh.
        gamma: Approximation level γ.
        delta: Modulus scale δ of event A.
        R: Size bound of event A.
        t: Evaluation time of the split, `None` for T.
    """

    a1: float = 1.0
    levels: int = 8
    k: int = 2
    level: int = 6
    offset_fraction: float = 0.5
    gamma: float = 0.05
    delta: float = 0.1
    R: int = 10
    t: Optional[float] = None

    def __post_init__(self):
        if not 1 <= self.k <= self.levels:
            raise ConfigError(f"Ladder index k={self.k} outside 1..{self.levels}.")
        if not (self.gamma > 0 and self.delta > 0 and self.R > 0):
            raise ConfigError(
                f"gamma, delta and R must be > 0, got {self.gamma}, {self.delta}, {self.R}."
            )


@dataclass(frozen=True)
class MachineryReport:
    """Outcome of a machinery trace.

    Args:
        table: One row per (n, replication, window).
        event_A_frequency: Fraction of samples in event A, over all indices.
        bound_violations: Term bound violations on samples in event A.
        max_reconstruction_error: Largest gap between the five terms and the window integral.
    """

    table: pd.DataFrame
    event_A_frequency: float
    bound_violations: int
    max_reconstruction_error: float


def _trace_sample(
    construction: ConstructionConfig,
    ladder: ThresholdLadder,
    grid: PartitionGrid,
    n: int,
    sample: ScenarioSample,
    r: int,
) -> List[list]:
    H, X = sample.H, sample.X
    a_k = ladder.level(construction.k)
    t = H.horizon if construction.t is None else construction.t
    windows = excursion_windows(H, a_k, grid, construction.k, construction.level)
    in_A = event_A(H, X, construction.gamma, construction.delta, construction.R, a_k)
    in_Gamma = event_Gamma(H, X, windows, construction.gamma)

    split: Optional[RemainderSplit] = None
    try:
        split = remainder_split(H, X, windows, construction.gamma, construction.R, t)
    except PreconditionError as err:
        level = log.warning if in_A else log.debug
        level(f"n={n}, rep={r}: remainder split skipped: {err}")

    rows = []
    for j, window in enumerate(windows):
        head = [n, r, j, window.tau, window.rho, window.floor, in_A, in_Gamma]
        if split is None:
            rows.append(head + [np.nan] * (len(TERM_NAMES) + 2) + [0])
            continue
        terms = split.windows[j]
        rows.append(
            head
            + list(terms.magnitudes)
            + [
                float(np.abs(terms.scaling).max()) if terms.scaling.size else 0.0,
                terms.reconstruction_error,
                len(terms.violations),
            ]
        )
    if not rows:
        head = [n, r, -1, np.nan, np.nan, np.nan, in_A, in_Gamma]
        rows.append(head + [0.0] * (len(TERM_NAMES) + 2) + [0])
    return rows


def run_machinery_trace(
    cfg: ExperimentConfig, construction: ConstructionConfig = None
) -> MachineryReport:
    """Runs the window construction and the remainder split on every sample.

    Samples without windows get a single row with `window = -1` and zero terms.

    Raises:
        GridError: If the grid hits a discontinuity of the limit or the ladder a limit jump size.
    """
    construction = ConstructionConfig() if construction is None else construction
    scenario = cfg.scenario
    ladder = ThresholdLadder.geometric(construction.a1, construction.levels)
    ladder.validate_against(scenario.limit_jump_sizes())
    grid = PartitionGrid.dyadic(
        construction.level,
        scenario.horizon,
        construction.offset_fraction,
        disc=scenario.discontinuities(),
    )
    log.info(
        f"Tracing with a_k={ladder.level(construction.k):.6g}, mesh={grid.mesh:.6g}, "
        f"gamma={construction.gamma}, R={construction.R}"
    )

    rows = []
    for n in cfg.indices:
        task = partial(_trace_sample, construction, ladder, grid, n)
        rows.extend(row for sample_rows in replicate(task, cfg, n) for row in sample_rows)
    table = pd.DataFrame(rows, columns=TRACE_COLUMNS)

    per_sample = table.drop_duplicates(["n", "rep"])
    in_A = table["event_A"].astype(bool)
    report = MachineryReport(
        table=table,
        event_A_frequency=float(per_sample["event_A"].astype(bool).mean()),
        bound_violations=int(table.loc[in_A, "violations"].sum()),
        max_reconstruction_error=float(np.nan_to_num(table["reconstruction_error"]).max()),
    )
    log.info(
        f"Event A frequency {report.event_A_frequency:.4f}, "
        f"{report.bound_violations} bound violations on A, "
        f"max reconstruction error {report.max_reconstruction_error:.3g}"
    )
    if cfg.out is not None:
        write_table(table, cfg.out, comments=[f"scenario={scenario.name}"])
    return report
