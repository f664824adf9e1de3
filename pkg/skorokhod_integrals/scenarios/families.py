import numpy as np

from skorokhod_integrals.cadlag import StepPath
from skorokhod_integrals.integration import SemimartingaleDecomposition
from skorokhod_integrals.scenarios.base import Seed
from skorokhod_integrals.utils.exceptions import DomainError


def _staircase(slope: float, horizon: float, steps: int) -> StepPath:
    """t ↦ slope·t sampled on `steps` equal steps."""
    times = horizon * np.arange(1, steps + 1) / steps
    return StepPath.from_increments(0.0, times, np.full(steps, slope * horizon / steps), horizon)


def gd_family(
    n: int,
    rate: float,
    drift: float,
    seed: Seed = None,
    horizon: float = 1.0,
    steps: int = 100,
    up_probability: float = 0.5,
) -> SemimartingaleDecomposition:
    """Integrator with a good decomposition: compensated compound Poisson plus a drift.

    The martingale part M = P − C has jumps ±1/√n arriving at rate `rate`·n, compensated by the
    staircase C of their mean; the finite-variation part A = drift staircase + C. Both staircases
    step together, so TV(A) = |drift + rate·√n·(2·up_probability − 1)|·T. C takes at least
    rate·n·|2·up_probability − 1|·T steps, so every jump of M is at most 2/√n.

    Args:
        n: Index of the family.
        rate: Jump rate per unit n, > 0.
        drift: Slope of the drift.
        seed: Seed or generator of the jump times and signs.
        horizon: Time horizon T.
        steps: Minimal number of steps of the staircases.
        up_probability: Probability of an upward jump.

    Returns:
        The decomposition (M, A).
    """
    if not rate > 0 or n < 1 or steps < 1 or not 0 <= up_probability <= 1:
        raise DomainError(
            f"Invalid GD family parameters: n={n}, rate={rate}, steps={steps}, "
            f"up_probability={up_probability}."
        )
    rng = np.random.default_rng(seed)
    count = rng.poisson(rate * n * horizon)
    times = np.sort(rng.uniform(0.0, horizon, size=count))
    # jump times live in (0, T]
    times = np.where(times == 0.0, horizon, times)
    signs = np.where(rng.random(count) < up_probability, 1.0, -1.0)
    jumps = StepPath.from_increments(0.0, times, signs / np.sqrt(n), horizon)

    mean_rate = rate * np.sqrt(n) * (2 * up_probability - 1)
    # compensator steps of at most 1/√n
    steps = max(steps, int(np.ceil(abs(mean_rate) * horizon * np.sqrt(n))))
    compensator = _staircase(mean_rate, horizon, steps)
    return SemimartingaleDecomposition(
        M=jumps - compensator, A=_staircase(drift, horizon, steps) + compensator
    )
