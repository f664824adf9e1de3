"""Left-limit Stieltjes integrals of step paths and their correction terms.

With a step integrator the integral ∫ H_{s−} dX_s is the finite sum of H_{s−} ΔX_s over the
jump times of X, so every function here is exact. Multidimensional paths are integrated
coordinatewise.
"""
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Tuple, Union

import numpy as np

from skorokhod_integrals.cadlag import StepPath, as_vector, check_same_horizon
from skorokhod_integrals.utils.exceptions import DomainError, PathMismatchError

Weights = Union[float, Sequence[float], np.ndarray]


def _common_dimension(H: StepPath, X: StepPath) -> int:
    """Dimension of a coordinatewise product, broadcasting scalar paths."""
    check_same_horizon(H, X)
    if H.dimension == X.dimension or X.dimension == 1:
        return H.dimension
    if H.dimension == 1:
        return X.dimension
    raise PathMismatchError(f"Dimension mismatch: {H.dimension} != {X.dimension}.")


def _broadcast(rows: np.ndarray, dimension: int) -> np.ndarray:
    return rows if rows.shape[1] == dimension else np.repeat(rows, dimension, axis=1)


def ito_integral(H: StepPath, X: StepPath) -> StepPath:
    """The path t ↦ Σ_{s≤t} H_{s−} ΔX_s.

    Args:
        H: Integrand, evaluated through its left limits.
        X: Integrator.

    Returns:
        The integral path, starting at 0.

    Raises:
        PathMismatchError: If the horizons differ or the dimensions cannot be broadcast.
    """
    dimension = _common_dimension(H, X)
    times = X.jump_times
    increments = _broadcast(H.left_limits_at(times), dimension) * _broadcast(
        X.jump_sizes, dimension
    )
    return StepPath.from_increments(np.zeros(dimension), times, increments, X.horizon)


def window_integral(H: StepPath, X: StepPath, lo: float, hi: float) -> np.ndarray:
    """Σ_{s∈(lo,hi]} H_{s−} ΔX_s."""
    if hi < lo:
        raise DomainError(f"Empty window ({lo}, {hi}].")
    integral = ito_integral(H, X)
    return integral.eval(hi) - integral.eval(lo)


def jump_product_path(H: StepPath, X: StepPath) -> StepPath:
    """The path t ↦ Σ_{s≤t} ΔH_s ΔX_s."""
    dimension = _common_dimension(H, X)
    times = np.intersect1d(H.jump_times, X.jump_times)
    dh = _broadcast(H.values_at(times) - H.left_limits_at(times), dimension)
    dx = _broadcast(X.values_at(times) - X.left_limits_at(times), dimension)
    return StepPath.from_increments(np.zeros(dimension), times, dh * dx, X.horizon)


def jump_product_sum(H: StepPath, X: StepPath, t: float) -> np.ndarray:
    """Σ_{s≤t} ΔH_s ΔX_s, coordinatewise."""
    return jump_product_path(H, X).eval(t)


class CorrectionEntry(NamedTuple):
    """One corrected common jump: weight ξ applied to ΔH ⊙ ΔX at time σ."""

    time: float
    weight: np.ndarray
    dh: np.ndarray
    dx: np.ndarray

    @property
    def increment(self) -> np.ndarray:
        return self.weight * self.dh * self.dx


@dataclass(frozen=True)
class CorrectionTerm:
    """Jump-product correction Σ_σ ξ_σ ⊙ ΔH_σ ⊙ ΔX_σ 1_{[σ,∞)} of a limit integral.

    Raises:
        DomainError: If a weight leaves [0, 1], the times are not strictly increasing or a jump
            is zero.
    """

    entries: Tuple[CorrectionEntry, ...] = ()

    def __post_init__(self):
        entries = tuple(
            CorrectionEntry(float(e.time), as_vector(e.weight), as_vector(e.dh), as_vector(e.dx))
            for e in self.entries
        )
        times = np.array([e.time for e in entries])
        if np.any(np.diff(times) <= 0):
            raise DomainError(f"Correction times must be strictly increasing, got {times}.")
        for entry in entries:
            if np.any(entry.weight < 0) or np.any(entry.weight > 1):
                raise DomainError(f"Correction weight outside [0, 1] at {entry.time}.")
            if not (np.any(entry.dh != 0) and np.any(entry.dx != 0)):
                raise DomainError(f"Correction jump at {entry.time} must be nonzero.")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_paths(cls, H: StepPath, X: StepPath, weights: Weights = 1.0) -> "CorrectionTerm":
        """Entries at the common jump times of `H` and `X`.

        Args:
            H: Limit integrand.
            X: Limit integrator.
            weights: One weight for every common jump, or one per common jump (rows may be
                vectors).
        """
        dimension = _common_dimension(H, X)
        times = np.intersect1d(H.jump_times, X.jump_times)
        dh = _broadcast(H.values_at(times) - H.left_limits_at(times), dimension)
        dx = _broadcast(X.values_at(times) - X.left_limits_at(times), dimension)

        weights = np.asarray(weights, dtype=float)
        if weights.ndim == 0:
            weights = np.full((times.size, dimension), float(weights))
        else:
            if weights.shape[0] != times.size:
                raise DomainError(
                    f"Expected {times.size} correction weights, got {weights.shape[0]}."
                )
            weights = _broadcast(weights.reshape(times.size, -1), dimension)

        return cls(
            tuple(CorrectionEntry(t, w, h, x) for t, w, h, x in zip(times, weights, dh, dx))
        )

    @property
    def times(self) -> np.ndarray:
        return np.array([entry.time for entry in self.entries])

    def __len__(self) -> int:
        return len(self.entries)


def apply_correction(base: StepPath, correction: CorrectionTerm) -> StepPath:
    """base + Σ ξ ⊙ ΔH ⊙ ΔX 1_{[σ,∞)}.

    Raises:
        DomainError: If a correction time lies outside (0, T].
    """
    if not len(correction):
        return base
    times = correction.times
    if times[0] <= 0 or times[-1] > base.horizon:
        raise DomainError(f"Correction times {times} outside (0, {base.horizon}].")
    increments = np.array([as_vector(e.increment, base.dimension) for e in correction.entries])
    shift = StepPath.from_increments(np.zeros(base.dimension), times, increments, base.horizon)
    return base + shift


def limit_integral(H: StepPath, X: StepPath, weights: Weights = 1.0) -> StepPath:
    """∫ H_{s−} dX_s corrected by the weighted jump products at the common jump times."""
    return apply_correction(ito_integral(H, X), CorrectionTerm.from_paths(H, X, weights))


def integration_by_parts_residual(H: StepPath, X: StepPath) -> float:
    """|∫H_− dX (T) + ∫X_− dH (T) + Σ ΔH ΔX − (H_T X_T − H_0 X_0)| for scalar paths."""
    check_same_horizon(H, X)
    if H.dimension != 1 or X.dimension != 1:
        raise DomainError("Integration by parts is checked for scalar paths only.")
    lhs = (
        ito_integral(H, X).terminal_value
        + ito_integral(X, H).terminal_value
        + jump_product_path(H, X).terminal_value
    )
    rhs = H.terminal_value * X.terminal_value - H.initial_value * X.initial_value
    return float(np.abs(lhs - rhs)[0])
