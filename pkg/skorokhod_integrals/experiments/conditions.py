from dataclasses import dataclass

import pandas as pd

from skorokhod_integrals.constructions import ThresholdLadder
from skorokhod_integrals.experiments.base import ExperimentConfig, write_table
from skorokhod_integrals.scenarios import Condition, empirical_condition
from skorokhod_integrals.utils.exceptions import ConfigError
from skorokhod_integrals.utils.pylogger import get_pylogger

log = get_pylogger(__name__)

CONDITION_COLUMNS = ["n", "condition", "frequency", "reps", "seed"]


@dataclass
class ConditionConfig:
    """Event whose frequency is estimated by a condition study.

    Args:
        condition: `avci`, `anti_avci` or `r2`.
        delta: Modulus scale δ of the increment-order events.
        gamma: Threshold γ of the event.
        a1: First threshold of the R2 ladder.
        levels: Number of ladder thresholds.
        k: Ladder level of the R2 tail.
    """

    condition: str = "avci"
    delta: float = 0.1
    gamma: float = 0.5
    a1: float = 1.0
    levels: int = 8
    k: int = 1

    def __post_init__(self):
        try:
            self.condition = Condition(self.condition)
        except ValueError as err:
            choices = [c.value for c in Condition]
            raise ConfigError(
                f"Unknown condition {self.condition!r}, expected one of {choices}."
            ) from err
        if not (self.delta > 0 and self.gamma >= 0 and self.a1 > 0):
            raise ConfigError(
                f"delta and a1 must be > 0 and gamma >= 0, got {self.delta}, {self.a1}, "
                f"{self.gamma}."
            )
        if not 1 <= self.k <= self.levels:
            raise ConfigError(f"Ladder level k={self.k} outside 1..{self.levels}.")

    @property
    def ladder(self) -> ThresholdLadder:
        return ThresholdLadder.geometric(self.a1, self.levels)


def run_condition_study(cfg: ExperimentConfig, condition: ConditionConfig) -> pd.DataFrame:
    """Frequency of the condition's event over the N replications of every index n.

    Returns:
        One row per n, columns `CONDITION_COLUMNS`.
    """
    rows = []
    for n in cfg.indices:
        frequency = empirical_condition(
            cfg.scenario,
            condition.condition,
            condition.delta,
            condition.gamma,
            n,
            cfg.reps,
            cfg.seed,
            ladder=condition.ladder,
            k=condition.k,
        )
        rows.append((n, condition.condition.value, frequency, cfg.reps, cfg.seed))
    frame = pd.DataFrame(rows, columns=CONDITION_COLUMNS)

    if cfg.out is not None:
        comments = [f"scenario={cfg.scenario.name}", f"gamma={condition.gamma:g}"]
        if condition.condition is Condition.R2:
            comments.append(f"r2 tail evaluated on the coupled limit pair at k={condition.k}")
        write_table(frame, cfg.out, comments=comments)
    return frame
