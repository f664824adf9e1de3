from dataclasses import dataclass
from typing import Optional

from skorokhod_integrals.utils.exceptions import DomainError

# Default M1 resolution relative to the horizon.
DEFAULT_RELATIVE_STEP = 1e-3


@dataclass(frozen=True)
class MetricConfig:
    """Resolution settings of the metric computations.

    Args:
        discretization_step: Absolute resolution ε_dp of the M1 search. `None` means 1e-3·T.
        max_refinement_levels: Number of times the M1 bracket may be halved below ε_dp while the
            estimate keeps moving.
    """

    discretization_step: Optional[float] = None
    max_refinement_levels: int = 4

    def __post_init__(self):
        if self.discretization_step is not None and not self.discretization_step > 0:
            raise DomainError(f"discretization_step must be > 0, got {self.discretization_step}.")
        if self.max_refinement_levels < 0:
            raise DomainError(
                f"max_refinement_levels must be >= 0, got {self.max_refinement_levels}."
            )

    def resolution(self, horizon: float) -> float:
        """ε_dp for paths on [0, horizon]."""
        if self.discretization_step is None:
            return DEFAULT_RELATIVE_STEP * horizon
        return self.discretization_step
