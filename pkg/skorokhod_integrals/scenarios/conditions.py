"""Pathwise checks of the conditions under which the limit integrals are identified."""
from enum import Enum
from typing import Optional

import numpy as np

from skorokhod_integrals.cadlag import StepPath, check_same_horizon
from skorokhod_integrals.constructions.ladder import ThresholdLadder
from skorokhod_integrals.metrics.moduli import hat_w
from skorokhod_integrals.scenarios.base import Scenario
from skorokhod_integrals.utils.exceptions import DomainError
from skorokhod_integrals.utils.pylogger import get_pylogger

log = get_pylogger(__name__)


class Condition(str, Enum):
    """Condition whose exceptional event is counted by :func:`empirical_condition`."""

    # integrand increment followed by an integrator increment
    AVCI = "avci"
    # integrator increment followed by an increment of the left-limit integrand
    ANTI_AVCI = "anti_avci"
    # jump-product tail of the limit pair over the integrand jumps at most a_{k−1}
    R2 = "r2"


def _common_jumps(H: StepPath, X: StepPath):
    times = np.intersect1d(H.jump_times, X.jump_times)
    dh = H.values_at(times) - H.left_limits_at(times)
    dx = X.values_at(times) - X.left_limits_at(times)
    return times, dh, dx


def check_R1(H: StepPath, X: StepPath, tol: float = 1e-12) -> bool:
    """Whether H_{s−}·ΔH_s·|ΔX_s| ≥ 0 coordinatewise at every jump of X."""
    check_same_horizon(H, X)
    times, dh, dx = _common_jumps(H, X)
    products = H.left_limits_at(times) * dh * np.abs(dx)
    return bool(np.all(products >= -tol))


def check_R2_tail(
    H: StepPath, X: StepPath, ladder: ThresholdLadder, k: int, horizon: float = None
) -> float:
    """Σ_{s≤T} |ΔH_s ΔX_s| over the jumps with a_K < |ΔH_s| ≤ a_{k−1} (a_0 = ∞).

    Non-increasing in k; the supremum over the finer levels l ≥ k is attained at l = K.
    """
    check_same_horizon(H, X)
    if not 1 <= k <= len(ladder):
        raise DomainError(f"Ladder level {k} outside 1..{len(ladder)}.")
    horizon = H.horizon if horizon is None else horizon
    times, dh, dx = _common_jumps(H, X)
    inside = times <= horizon
    dh, dx = dh[inside], dx[inside]

    upper = np.inf if k == 1 else ladder.level(k - 1)
    band = (np.abs(dh) > ladder.values[-1]) & (np.abs(dh) <= upper)
    return float(np.sum(np.abs(dh * dx) * band))


def empirical_condition(
    scenario: Scenario,
    condition: Condition,
    delta: float,
    gamma: float,
    n: int,
    reps: int,
    seed: int,
    ladder: Optional[ThresholdLadder] = None,
    k: int = 1,
) -> float:
    """Monte Carlo frequency of a condition's exceptional event at index n.

    The AVCI order tests ŵ_δ(H, X) > γ; the reversed order tests ŵ_δ(X, H_−) > γ. R2 is a
    property of the limit, so each sample is replaced by the limit atom it is coupled to and
    the event is `check_R2_tail(H⁰, X⁰, ladder, k) > γ`; `delta` is unused there.
    Replication r uses the stream SeedSequence([seed, r]).

    Args:
        scenario: Scenario the samples are drawn from.
        condition: Condition whose event is counted.
        delta: Modulus scale δ of the increment-order events.
        gamma: Threshold γ the statistic must exceed.
        n: Index of the sampled paths.
        reps: Number of replications N.
        seed: Root seed.
        ladder: Threshold ladder of the R2 tail.
        k: Ladder level of the R2 tail.

    Returns:
        The fraction of replications in the event.
    """
    if reps < 1:
        raise DomainError(f"reps must be >= 1, got {reps}.")
    condition = Condition(condition)
    if condition is Condition.R2:
        if ladder is None:
            raise DomainError("The R2 tail needs a threshold ladder.")
        atoms = scenario.limit().atoms

    hits = np.zeros(reps, dtype=bool)
    for r in range(reps):
        sample = scenario.sample(n, np.random.default_rng(np.random.SeedSequence([seed, r])))
        if condition is Condition.AVCI:
            value = hat_w(sample.H, sample.X, delta)
        elif condition is Condition.ANTI_AVCI:
            value = hat_w(sample.X, sample.H, delta, y_left=True)
        else:
            atom = atoms[sample.atom]
            value = check_R2_tail(atom.H, atom.X, ladder, k)
        hits[r] = value > gamma
    frequency = float(hits.mean())
    log.info(f"{scenario.name}: {condition.value} event frequency {frequency:.4f} at n={n}.")
    return frequency
