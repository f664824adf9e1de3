"""Single-jump example families on [0, 2] and their limits.

Every family converges to a pair (H⁰, X⁰) jumping together at t = 1; they differ in the order
in which the approximating paths jump, which decides how much of ΔH⁰ΔX⁰ the limit integral
picks up.
"""
from typing import Tuple

import numpy as np

from skorokhod_integrals.cadlag import StepPath
from skorokhod_integrals.integration import SemimartingaleDecomposition
from skorokhod_integrals.scenarios.base import (
    LimitAtom,
    LimitLaw,
    Scenario,
    ScenarioSample,
    Seed,
    check_index,
)
from skorokhod_integrals.utils.exceptions import DomainError

HORIZON = 2.0


def _finite_variation(X: StepPath) -> SemimartingaleDecomposition:
    """X = 0 + X for a deterministic single-jump integrator."""
    return SemimartingaleDecomposition(M=StepPath.constant(0.0, X.horizon), A=X)


def example_1_1(n: int, p: float = 0.5, seed: Seed = None) -> Tuple[StepPath, StepPath]:
    """H jumps from 1 to 3 at 1 − 2/n with probability p, else at 1 + 1/n; X = 1_{[1−1/n,∞)}."""
    check_index(n)
    if not 0 <= p <= 1:
        raise DomainError(f"p must lie in [0, 1], got {p}.")
    before = np.random.default_rng(seed).random() < p
    jump = 1 - 2 / n if before else 1 + 1 / n
    return (
        StepPath.indicator(jump, HORIZON, height=2.0, base=1.0),
        StepPath.indicator(1 - 1 / n, HORIZON),
    )


def example_2_1(n: int) -> Tuple[StepPath, StepPath]:
    """h_n = 1 − 2·1_{[1−2/n,∞)} against x_n = ½1_{[1−3/n,∞)} + ½1_{[1−1/n,∞)}."""
    check_index(n)
    H = StepPath.indicator(1 - 2 / n, HORIZON, height=-2.0, base=1.0)
    X = StepPath(0.0, [1 - 3 / n, 1 - 1 / n], [0.5, 1.0], horizon=HORIZON)
    return H, X


def anti_avci_scenario(n: int, seed: Seed = None) -> Tuple[StepPath, StepPath]:
    """H jumps by 2 at 1 − 2/n + U/n², strictly before X jumps by 1 + 1/n at 1 − 1/n."""
    check_index(n)
    shift = np.random.default_rng(seed).random() / n**2
    H = StepPath.indicator(1 - 2 / n + shift, HORIZON, height=2.0, base=1.0)
    X = StepPath.indicator(1 - 1 / n, HORIZON, height=1 + 1 / n)
    return H, X


def m1_j1_scenario(n: int) -> Tuple[StepPath, StepPath]:
    """Sign-reversing H = 1 − 2·1_{[1−2/n,∞)} against X = 1_{[1−1/n,∞)}."""
    check_index(n)
    H = StepPath.indicator(1 - 2 / n, HORIZON, height=-2.0, base=1.0)
    X = StepPath.indicator(1 - 1 / n, HORIZON)
    return H, X


def _limit_pair(height: float) -> Tuple[StepPath, StepPath]:
    return (
        StepPath.indicator(1.0, HORIZON, height=height, base=1.0),
        StepPath.indicator(1.0, HORIZON),
    )


class Example11(Scenario):
    """Bernoulli mixture of an integrand jumping just before or just after the integrator.

    The integral converges to 3·1_{[1,∞)} on the first event and to 1_{[1,∞)} on the second,
    i.e. to the limit integral with correction weight 1 or 0.

    Args:
        p: Probability that H jumps before X.
    """

    name = "example_1_1"
    correction_rule = "bernoulli"

    def __init__(self, p: float = 0.5, horizon: float = HORIZON):
        if horizon != HORIZON:
            raise DomainError(f"{self.name} lives on [0, {HORIZON}].")
        super().__init__(horizon)
        self.p = p

    def sample(self, n: int, rng: np.random.Generator) -> ScenarioSample:
        H, X = example_1_1(n, self.p, rng)
        atom = 0 if H.jump_times[0] < X.jump_times[0] else 1
        if self.p in (0.0, 1.0):
            atom = 0
        return ScenarioSample(H, X, _finite_variation(X), atom)

    def limit(self) -> LimitLaw:
        H, X = _limit_pair(2.0)
        atoms = [LimitAtom(self.p, H, X, 1.0), LimitAtom(1 - self.p, H, X, 0.0)]
        return LimitLaw(tuple(atom for atom in atoms if atom.weight > 0))


class Example21(Scenario):
    """Integrals (1/2)1_{[1−3/n,1−1/n)} converging pointwise to 0 but not in M1."""

    name = "example_2_1"

    def __init__(self, horizon: float = HORIZON):
        if horizon != HORIZON:
            raise DomainError(f"{self.name} lives on [0, {HORIZON}].")
        super().__init__(horizon)

    def sample(self, n: int, rng: np.random.Generator) -> ScenarioSample:
        H, X = example_2_1(n)
        return ScenarioSample(H, X, _finite_variation(X))

    def limit(self) -> LimitLaw:
        H, X = _limit_pair(-2.0)
        zero = StepPath.constant(0.0, HORIZON)
        return LimitLaw((LimitAtom(1.0, H, X, 1.0, integral_override=zero),))


class AntiAVCI(Scenario):
    """Integrand increments always precede the integrator's, so the full correction applies."""

    name = "anti_avci"
    correction_rule = "all-ones"

    def __init__(self, horizon: float = HORIZON):
        if horizon != HORIZON:
            raise DomainError(f"{self.name} lives on [0, {HORIZON}].")
        super().__init__(horizon)

    def sample(self, n: int, rng: np.random.Generator) -> ScenarioSample:
        H, X = anti_avci_scenario(n, rng)
        return ScenarioSample(H, X, _finite_variation(X))

    def limit(self) -> LimitLaw:
        H, X = _limit_pair(2.0)
        return LimitLaw((LimitAtom(1.0, H, X, 1.0),))


class M1J1(Scenario):
    """M1-converging sign-reversing integrand against a J1-converging integrator."""

    name = "m1_j1"
    correction_rule = "all-ones"

    def __init__(self, horizon: float = HORIZON):
        if horizon != HORIZON:
            raise DomainError(f"{self.name} lives on [0, {HORIZON}].")
        super().__init__(horizon)

    def sample(self, n: int, rng: np.random.Generator) -> ScenarioSample:
        H, X = m1_j1_scenario(n)
        return ScenarioSample(H, X, _finite_variation(X))

    def limit(self) -> LimitLaw:
        H, X = _limit_pair(-2.0)
        return LimitLaw((LimitAtom(1.0, H, X, 1.0),))
