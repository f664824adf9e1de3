from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Callable, List, Optional, Sequence, TypeVar, Union

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from skorokhod_integrals.experiments.functionals import PathFunctional, validate_functionals
from skorokhod_integrals.metrics import MetricConfig
from skorokhod_integrals.scenarios import Scenario, ScenarioSample, check_index
from skorokhod_integrals.utils.exceptions import ConfigError
from skorokhod_integrals.utils.pylogger import get_pylogger

log = get_pylogger(__name__)

Result = TypeVar("Result")

FLOAT_FORMAT = "%.12g"
DEFAULT_CHUNK_SIZE = 256


@dataclass
class ExperimentConfig:
    """Inputs of a batch study.

    Args:
        scenario: Scenario the samples are drawn from.
        indices: Strictly increasing indices n_1 < ... < n_J.
        reps: Number of replications N per index.
        functionals: Functionals F whose laws are compared.
        metric: Resolution of the metric computations.
        seed: Root seed; replication r draws from SeedSequence([seed, r]).
        n_jobs: joblib worker count.
        out: CSV target, `None` to skip writing.
        chunk_size: Replications per joblib task.
    """

    scenario: Scenario
    indices: Sequence[int]
    reps: int = 1
    functionals: Sequence[PathFunctional] = ()
    metric: MetricConfig = field(default_factory=MetricConfig)
    seed: int = 0
    n_jobs: int = 1
    out: Optional[Union[str, Path]] = None
    chunk_size: int = DEFAULT_CHUNK_SIZE

    def __post_init__(self):
        self.indices = [int(n) for n in self.indices]
        if not self.indices:
            raise ConfigError("The index list is empty.")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ConfigError(f"Indices must be strictly increasing, got {self.indices}.")
        for n in self.indices:
            try:
                check_index(n)
            except ValueError as err:
                raise ConfigError(str(err)) from err
        if self.reps < 1 or self.chunk_size < 1:
            raise ConfigError(
                f"reps and chunk_size must be >= 1, got {self.reps} and {self.chunk_size}."
            )
        if self.seed < 0:
            raise ConfigError(f"seed must be a nonnegative integer, got {self.seed}.")
        self.functionals = list(self.functionals)

    def validate_functionals(self) -> None:
        validate_functionals(
            self.functionals, self.scenario.discontinuities(), self.scenario.horizon
        )


def replication_rng(seed: int, r: int) -> np.random.Generator:
    """Generator of replication r; identical for every index n."""
    return np.random.default_rng(np.random.SeedSequence([seed, r]))


def draw(scenario: Scenario, n: int, seed: int, r: int) -> ScenarioSample:
    return scenario.sample(n, replication_rng(seed, r))


def _run_chunk(
    task: Callable[[ScenarioSample, int], Result],
    scenario: Scenario,
    n: int,
    seed: int,
    replications: range,
) -> List[Result]:
    return [task(draw(scenario, n, seed, r), r) for r in replications]


def replicate(
    task: Callable[[ScenarioSample, int], Result],
    cfg: ExperimentConfig,
    n: int,
) -> List[Result]:
    """Applies `task(sample, r)` to replications 0..N−1 at index n, in replication order.

    The replications are cut into ordered chunks dispatched through joblib, so the result does
    not depend on `n_jobs`.
    """
    chunks = [
        range(start, min(start + cfg.chunk_size, cfg.reps))
        for start in range(0, cfg.reps, cfg.chunk_size)
    ]
    run = partial(_run_chunk, task, cfg.scenario, n, cfg.seed)
    if cfg.n_jobs == 1 or len(chunks) == 1:
        results = [run(chunk) for chunk in chunks]
    else:
        results = Parallel(n_jobs=cfg.n_jobs)(delayed(run)(chunk) for chunk in chunks)
    return [item for chunk in results for item in chunk]


def write_table(
    frame: pd.DataFrame, target: Union[str, Path], comments: Sequence[str] = ()
) -> Path:
    """Writes a result table as CSV, preceded by `#` comment lines."""
    target = Path(target)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", newline="") as file:
        for comment in comments:
            file.write(f"# {comment}\n")
        frame.to_csv(file, index=False, float_format=FLOAT_FORMAT)
    log.info(f"Table written to <{target}>")
    return target
