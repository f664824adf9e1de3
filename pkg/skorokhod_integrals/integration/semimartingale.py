"""Semimartingale decompositions of step integrators and the good-decomposition statistics."""
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from skorokhod_integrals.cadlag import StepPath, check_compatible, check_same_horizon
from skorokhod_integrals.utils.exceptions import DomainError
from skorokhod_integrals.utils.pylogger import get_pylogger

log = get_pylogger(__name__)


@dataclass(frozen=True)
class SemimartingaleDecomposition:
    """Integrator X = M + A with a local-martingale part M and a finite-variation part A."""

    M: StepPath
    A: StepPath

    def __post_init__(self):
        check_compatible(self.M, self.A)

    @property
    def X(self) -> StepPath:
        return self.M + self.A

    @property
    def horizon(self) -> float:
        return self.M.horizon


class GDStatistics(NamedTuple):
    """Quantities controlled by the good-decomposition condition at a time t."""

    total_variation: float
    jump_at_stop: float


def first_passage(path: StepPath, level: float) -> float:
    """τ_c = inf{s : |p|*_s ≥ c}, or T + 1 if the running supremum stays below `level`."""
    if np.abs(path.initial_value).max() >= level:
        return 0.0
    reached = np.flatnonzero(np.abs(path.jump_values).max(axis=1) >= level)
    return float(path.jump_times[reached[0]]) if reached.size else path.horizon + 1.0


def gd_statistics(dec: SemimartingaleDecomposition, t: float, c: float) -> GDStatistics:
    """TV_[0,t](A) and |ΔM_{t∧τ_c}|, with τ_c the first time |M| reaches `c`.

    Args:
        dec: Decomposition of the integrator.
        t: Time in [0, T].
        c: Truncation level c > 0.

    Returns:
        The pair (total variation, jump at the stopped time).
    """
    if not c > 0:
        raise DomainError(f"Truncation level must be > 0, got {c}.")
    stop = min(t, first_passage(dec.M, c))
    jump = float(np.abs(dec.M.jump_at(stop)).max()) if stop > 0 else 0.0
    return GDStatistics(dec.A.total_variation(t), jump)


def gd_bound_check(
    decompositions: Iterable[SemimartingaleDecomposition], t: float, c: float, bound: float
) -> float:
    """Frequency of {TV_[0,t](A) > R} ∪ {|ΔM_{t∧τ_c}| > R} over a sample of decompositions."""
    exceed = [
        stats.total_variation > bound or stats.jump_at_stop > bound
        for stats in (gd_statistics(dec, t, c) for dec in decompositions)
    ]
    if not exceed:
        raise DomainError("No decompositions to check.")
    frequency = float(np.mean(exceed))
    log.debug(f"GD bound R={bound} exceeded with frequency {frequency:.4f} over {len(exceed)}.")
    return frequency


def jump_domination_check(H: StepPath, X: StepPath, Z: StepPath, tol: float = 1e-12) -> bool:
    """Whether every jump of Z satisfies |ΔZ_s| ≤ 2 |H|*_s |ΔX_s|."""
    check_same_horizon(H, X, Z)
    for time, size in zip(Z.jump_times, Z.jump_sizes):
        dominating = 2.0 * H.running_sup(time) * float(np.abs(X.jump_at(time)).max())
        if float(np.abs(size).max()) > dominating + tol:
            return False
    return True
