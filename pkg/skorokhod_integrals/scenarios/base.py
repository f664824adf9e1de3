from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, ClassVar, Optional, Sequence, Tuple, Union

import numpy as np

from skorokhod_integrals.cadlag import StepPath
from skorokhod_integrals.integration import (
    SemimartingaleDecomposition,
    ito_integral,
    limit_integral,
)
from skorokhod_integrals.utils.exceptions import DomainError

Functional = Callable[[StepPath], float]
Seed = Union[int, np.random.Generator, np.random.SeedSequence, None]

# Smallest index for which the jump times of the example families stay ordered inside [0, 2].
MIN_INDEX = 4


def check_index(n: int) -> None:
    if n < MIN_INDEX:
        raise DomainError(f"Scenario index must be >= {MIN_INDEX}, got {n}.")


@dataclass(frozen=True)
class LimitAtom:
    """One outcome of a limit law: the limit pair and the correction weights at common jumps.

    Args:
        weight: Probability of the atom.
        H: Limit integrand H⁰.
        X: Limit integrator X⁰.
        correction_weights: Weights ξ at the common jump times of H⁰ and X⁰.
        integral_override: Pointwise limit of the integrals when it is not the corrected
            integral of the limit pair.
    """

    weight: float
    H: StepPath
    X: StepPath
    correction_weights: Union[float, Sequence[float]] = 1.0
    integral_override: Optional[StepPath] = None

    @property
    def integral(self) -> StepPath:
        if self.integral_override is not None:
            return self.integral_override
        return limit_integral(self.H, self.X, self.correction_weights)


@dataclass(frozen=True)
class LimitLaw:
    """Finitely supported law of the limit integral."""

    atoms: Tuple[LimitAtom, ...]

    def __post_init__(self):
        weights = np.array([atom.weight for atom in self.atoms])
        if not weights.size or np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
            raise DomainError(f"Atom weights must be nonnegative and sum to 1, got {weights}.")

    @property
    def weights(self) -> np.ndarray:
        return np.array([atom.weight for atom in self.atoms])

    def values(self, functional: Functional) -> np.ndarray:
        """Functional value of every atom's limit integral."""
        return np.array([functional(atom.integral) for atom in self.atoms])

    def expectation(self, functional: Functional) -> float:
        return float(np.dot(self.weights, self.values(functional)))

    def cdf(self, functional: Functional, x: Union[float, np.ndarray]) -> np.ndarray:
        """Distribution function of the functional under the mixture."""
        x = np.asarray(x, dtype=float)
        values = self.values(functional)
        return (values[None, :] <= x.reshape(-1, 1)).astype(float) @ self.weights

    def empirical_weights(self, samples: Sequence[float], functional: Functional) -> np.ndarray:
        """Frequencies of the atoms when every sampled value is assigned to the nearest atom."""
        samples = np.asarray(samples, dtype=float).reshape(-1)
        nearest = np.abs(samples[:, None] - self.values(functional)[None, :]).argmin(axis=1)
        return np.bincount(nearest, minlength=len(self.atoms)) / max(samples.size, 1)

    def __len__(self) -> int:
        return len(self.atoms)


@dataclass(frozen=True)
class ScenarioSample:
    """One draw (H_n, X_n) of a scenario, coupled to the limit atom with index `atom`."""

    H: StepPath
    X: StepPath
    decomposition: Optional[SemimartingaleDecomposition] = None
    atom: int = 0

    @property
    def integral(self) -> StepPath:
        return ito_integral(self.H, self.X)


class Scenario(ABC):
    """Family of integrand/integrator pairs indexed by n, with its limit law.

    Args:
        horizon: Time horizon T of all paths.
    """

    name: ClassVar[str]
    # all-ones | all-zeros | bernoulli | custom
    correction_rule: ClassVar[str] = "custom"

    def __init__(self, horizon: float = 2.0):
        self.horizon = horizon

    @abstractmethod
    def sample(self, n: int, rng: np.random.Generator) -> ScenarioSample:
        """Draws (H_n, X_n); deterministic given the generator state."""

    @abstractmethod
    def limit(self) -> LimitLaw:
        """Limit law of the integrals."""

    def sample_seeded(self, n: int, seed: Seed = None) -> ScenarioSample:
        return self.sample(n, np.random.default_rng(seed))

    def discontinuities(self) -> np.ndarray:
        """Known fixed discontinuity times of the limit (paths and integrals of every atom)."""
        times = [
            path.jump_times
            for atom in self.limit().atoms
            for path in (atom.H, atom.X, atom.integral)
        ]
        return np.unique(np.concatenate(times)) if times else np.empty(0)

    def limit_jump_sizes(self) -> np.ndarray:
        """Absolute jump sizes of every limit integrand."""
        sizes = [np.abs(atom.H.jump_sizes).ravel() for atom in self.limit().atoms]
        return np.concatenate(sizes) if sizes else np.empty(0)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name!r}, horizon={self.horizon})"
