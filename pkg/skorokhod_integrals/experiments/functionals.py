"""Scalar path functionals continuous in M1 at paths that do not jump at their evaluation time."""
from abc import ABC, abstractmethod
from typing import Sequence, Tuple

import numpy as np

from skorokhod_integrals.cadlag import StepPath
from skorokhod_integrals.utils.exceptions import ConfigError, DomainError

DISC_TOL = 1e-12


class PathFunctional(ABC):
    """F: D([0, T], R^d) → R evaluated at fixed times of one coordinate.

    Args:
        t: Evaluation time.
        coordinate: Coordinate of the path the functional reads.
    """

    label: str

    def __init__(self, t: float, coordinate: int = 0):
        if t < 0 or coordinate < 0:
            raise DomainError(f"Invalid functional arguments: t={t}, coordinate={coordinate}.")
        self.t = float(t)
        self.coordinate = coordinate

    def evaluation_times(self) -> Tuple[float, ...]:
        return (self.t,)

    @property
    def name(self) -> str:
        suffix = f"[{self.coordinate}]" if self.coordinate else ""
        return f"{self.label}({self.t:g}){suffix}"

    def __call__(self, path: StepPath) -> float:
        if self.coordinate >= path.dimension:
            raise DomainError(
                f"{self.name} reads coordinate {self.coordinate} of a {path.dimension}-dim path."
            )
        return float(self._evaluate(path.coordinate(self.coordinate)))

    @abstractmethod
    def _evaluate(self, path: StepPath) -> float:
        ...

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(t={self.t}, coordinate={self.coordinate})"


class EvalAt(PathFunctional):
    """x ↦ x(t)."""

    label = "eval_at"

    def _evaluate(self, path: StepPath) -> float:
        return path.eval(self.t)[0]


class RunningSupAt(PathFunctional):
    """x ↦ sup_{s ≤ t} |x(s)|."""

    label = "running_sup_at"

    def _evaluate(self, path: StepPath) -> float:
        return path.running_sup(self.t)


class TotalVariationAt(PathFunctional):
    """x ↦ total variation of x on [0, t]."""

    label = "total_variation_at"

    def _evaluate(self, path: StepPath) -> float:
        return path.total_variation(self.t)


def validate_functionals(
    functionals: Sequence[PathFunctional], disc: Sequence[float], horizon: float
) -> None:
    """Checks that every evaluation time is a continuity point of the limit inside [0, T].

    Raises:
        ConfigError: If a time lies outside [0, T] or within `DISC_TOL` of a discontinuity.
    """
    if not functionals:
        raise ConfigError("At least one functional is required.")
    disc = np.asarray(disc, dtype=float)
    for functional in functionals:
        for t in functional.evaluation_times():
            if not 0 <= t <= horizon:
                raise ConfigError(f"{functional.name} evaluates outside [0, {horizon}].")
            if disc.size and np.min(np.abs(disc - t)) <= DISC_TOL:
                raise ConfigError(
                    f"{functional.name} evaluates at t={t}, a discontinuity of the limit."
                )
