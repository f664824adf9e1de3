from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from skorokhod_integrals.cadlag import StepPath
from skorokhod_integrals.utils.exceptions import GridError

# Keeps the geometric thresholds off dyadic jump sizes.
PERTURBATION = 1.0 + 1e-3 / np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class ThresholdLadder:
    """Strictly decreasing positive thresholds a_1 > a_2 > ... > a_K.

    Levels are addressed 1-based, as in `ladder.level(k)`.
    """

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if not values.size:
            raise GridError("A threshold ladder needs at least one level.")
        if np.any(values <= 0) or np.any(np.diff(values) >= 0):
            raise GridError(f"Thresholds must be positive and strictly decreasing, got {values}.")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def geometric(cls, a1: float, levels: int, perturb: bool = True) -> "ThresholdLadder":
        """a_k = a_1·2^−(k−1), optionally scaled by a fixed irrational factor."""
        values = a1 * 2.0 ** -np.arange(levels)
        return cls(values * PERTURBATION if perturb else values)

    def level(self, k: int) -> float:
        if not 1 <= k <= len(self):
            raise GridError(f"Ladder level {k} outside 1..{len(self)}.")
        return float(self.values[k - 1])

    def __len__(self) -> int:
        return self.values.size

    def validate_against(self, jump_sizes: Sequence[float], tol: float = 1e-12) -> None:
        """Raises if a threshold coincides with a known absolute jump size."""
        sizes = np.abs(np.asarray(jump_sizes, dtype=float).reshape(-1))
        if not sizes.size:
            return
        hits = np.abs(self.values[:, None] - sizes[None, :]) <= tol
        if hits.any():
            raise GridError(f"Thresholds {self.values[hits.any(axis=1)]} equal a jump size.")


@dataclass(frozen=True)
class JumpBands:
    """Jump times of a limit integrand sorted by the ladder.

    `exceeding[k-1]` holds the jump times with |ΔH| > a_k, `bands[k-1]` those with
    a_k < |ΔH| ≤ a_{k−1} (a_0 = ∞).
    """

    exceeding: List[np.ndarray]
    bands: List[np.ndarray]


def limit_jump_times(H: StepPath, ladder: ThresholdLadder) -> JumpBands:
    """Splits the jump times of `H` by jump size along the ladder."""
    sizes = np.abs(H.jump_sizes).max(axis=1) if H.num_jumps else np.empty(0)
    upper = np.concatenate(([np.inf], ladder.values[:-1]))
    exceeding, bands = [], []
    for a_k, a_prev in zip(ladder.values, upper):
        exceeding.append(H.jump_times[sizes > a_k])
        bands.append(H.jump_times[(sizes > a_k) & (sizes <= a_prev)])
    return JumpBands(exceeding, bands)
