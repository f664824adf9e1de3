"""Monotone step approximations of a scalar path on a short interval.

Both constructions follow the path through the stopping times σ_j at which it first departs by
more than γ from the current reference level. Under the M1 modulus bound w′(x, t2 − t1) < γ/2
the resulting step function is monotone and stays within γ of x on [t1, t2].

:func:`monotone_bridge` looks at the endpoint x(t2) and returns weights ξ ∈ [0, 1] along the
segment from x(t1) to x(t2). :func:`adapted_monotone_step` only looks at the past and returns
the sampled levels x(σ_j) themselves.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from skorokhod_integrals.cadlag import StepPath
from skorokhod_integrals.metrics.moduli import increment_count, w_prime
from skorokhod_integrals.utils.exceptions import DomainError, PreconditionError

_TOL = 1e-12


class BridgeTail(str, Enum):
    """How the bridge reaches 1."""

    # switch to 1 once x is within γ/2 of x(t2)
    CUTOFF = "A"
    # jump to 1 at t2
    TERMINAL = "B"


@dataclass(frozen=True)
class MonotonePiece:
    """Monotone step function on [t1, t2], stored as a path on the full horizon.

    The path is constant at its t1 value before t1 and at its t2 value after t2.
    """

    path: StepPath
    t1: float
    t2: float
    stopping_times: Tuple[float, ...]
    cutoff: Optional[float] = None

    def eval(self, t: float) -> float:
        return float(self.path.eval(t)[0])


def _check_window(x: StepPath, t1: float, t2: float, gamma: float) -> None:
    if x.dimension != 1:
        raise DomainError("Monotone pieces are built for scalar paths; split coordinates first.")
    if not 0 <= t1 < t2 <= x.horizon:
        raise DomainError(f"Invalid window [{t1}, {t2}] for horizon {x.horizon}.")
    if not gamma > 0:
        raise DomainError(f"gamma must be > 0, got {gamma}.")


def _departures(x: StepPath, t1: float, t2: float, gamma: float, level_of) -> list:
    """Stopping times σ_j in (t1, t2]: first jumps departing by > γ from `level_of(σ_{j−1})`."""
    times, values = x.jump_times, x.jump_values[:, 0]
    inside = (times > t1) & (times <= t2)
    sigmas = []
    level = level_of(t1)
    for time, value in zip(times[inside], values[inside]):
        if abs(value - level) > gamma + _TOL:
            sigmas.append(float(time))
            level = level_of(float(time))
    return sigmas


def build_bridge(
    x: StepPath, t1: float, t2: float, gamma: float, tail: BridgeTail = BridgeTail.TERMINAL
) -> MonotonePiece:
    """Bridge weights ξ on [t1, t2] without checking the modulus precondition."""
    tail = BridgeTail(tail)
    start, end = float(x.eval(t1)[0]), float(x.eval(t2)[0])
    span = end - start

    def weight(value: float) -> float:
        # argmin over the segment [x(t1), x(t2)]; a degenerate segment maps to 0
        if span == 0:
            return 0.0
        return float(np.clip((value - start) / span, 0.0, 1.0))

    weights = {t1: 0.0}

    def level_of(t: float) -> float:
        return start + weights[t] * span

    # σ_j and ξ(σ_j) are built together: the next reference level is ν(ξ(σ_j))
    times, values = x.jump_times, x.jump_values[:, 0]
    inside = (times > t1) & (times < t2)
    sigmas = []
    current = t1
    for time, value in zip(times[inside], values[inside]):
        if abs(value - level_of(current)) > gamma + _TOL:
            current = float(time)
            weights[current] = weight(float(value))
            sigmas.append(current)

    steps = [(t1, 0.0)] + [(s, weights[s]) for s in sigmas]
    cutoff = None
    if tail is BridgeTail.CUTOFF:
        candidates = [t1] + [float(t) for t in times[inside]] + [t2]
        cutoff = next(t for t in candidates if abs(float(x.eval(t)[0]) - end) <= gamma / 2 + _TOL)
        steps = [(s, w) for s, w in steps if s < cutoff] + [(cutoff, 1.0)]
    else:
        steps.append((t2, 1.0))

    initial = steps[0][1]
    later = [(s, w) for s, w in steps if s > t1]
    path = StepPath(
        initial, [s for s, _ in later], [w for _, w in later], horizon=x.horizon
    )
    return MonotonePiece(path, t1, t2, tuple(sigmas), cutoff)


def monotone_bridge(
    x: StepPath, t1: float, t2: float, gamma: float, tail: BridgeTail = BridgeTail.TERMINAL
) -> MonotonePiece:
    """Non-decreasing step function ξ: [t1, t2] → [0, 1] with ξ(t2) = 1 and
    |x(t) − [x(t1) + ξ(t)(x(t2) − x(t1))]| ≤ γ on [t1, t2].

    ξ(t1) = 0 unless the cutoff tail finds x within γ/2 of x(t2) already right after t1, in
    which case ξ ≡ 1.

    Args:
        x: Scalar path.
        t1: Left end of the window.
        t2: Right end of the window.
        gamma: Approximation level γ > 0.
        tail: `BridgeTail.CUTOFF` or `BridgeTail.TERMINAL`.

    Raises:
        PreconditionError: If w′(x, t2 − t1) ≥ γ/2 on [t1, t2].
    """
    _check_window(x, t1, t2, gamma)
    modulus = w_prime(x, t2 - t1, horizon=t2, start=t1)
    if modulus >= gamma / 2:
        raise PreconditionError(f"w'(x, {t2 - t1:.6g}) = {modulus:.6g} is not below {gamma / 2}.")
    return build_bridge(x, t1, t2, gamma, tail)


def build_adapted_step(x: StepPath, t1: float, t2: float, gamma: float) -> MonotonePiece:
    """Adapted step levels on [t1, t2] without checking the preconditions."""
    levels = {t1: float(x.eval(t1)[0])}

    def level_of(t: float) -> float:
        return levels.setdefault(t, float(x.eval(t)[0]))

    # σ_j ∧ t2 at t2 contributes nothing: ξ(t2) is the left limit
    sigmas = [s for s in _departures(x, t1, t2, gamma, level_of) if s < t2]
    path = StepPath(
        levels[t1], sigmas, [levels[s] for s in sigmas], horizon=x.horizon
    )
    return MonotonePiece(path, t1, t2, tuple(sigmas))


def adapted_monotone_step(
    x: StepPath, t1: float, t2: float, gamma: float, R: int
) -> MonotonePiece:
    """Monotone step function ξ(t) = x(σ_j) on [σ_j, σ_{j+1}) with ξ(t2) = ξ(t2−).

    σ_0 = t1 and σ_j is the first time after σ_{j−1} at which x departs from x(σ_{j−1}) by more
    than γ, so ξ on [t1, t] only depends on x on [t1, t]. |x − ξ| ≤ γ holds on [t1, t2), and at
    t2 when x does not jump there.

    Raises:
        PreconditionError: If w′(x, t2 − t1) ≥ γ/2 on [t1, t2] or N_γ(x) ≥ R.
    """
    _check_window(x, t1, t2, gamma)
    modulus = w_prime(x, t2 - t1, horizon=t2, start=t1)
    if modulus >= gamma / 2:
        raise PreconditionError(f"w'(x, {t2 - t1:.6g}) = {modulus:.6g} is not below {gamma / 2}.")
    count = increment_count(x, gamma)
    if count >= R:
        raise PreconditionError(f"N_gamma(x) = {count} is not below R = {R}.")
    return build_adapted_step(x, t1, t2, gamma)


def bridge_error(x: StepPath, piece: MonotonePiece) -> float:
    """max over [t1, t2] of |x(t) − [x(t1) + ξ(t)(x(t2) − x(t1))]|."""
    start, end = float(x.eval(piece.t1)[0]), float(x.eval(piece.t2)[0])
    times = _piece_times(x, piece)
    fitted = start + piece.path.values_at(times)[:, 0] * (end - start)
    return float(np.abs(x.values_at(times)[:, 0] - fitted).max())


def step_error(x: StepPath, piece: MonotonePiece, include_end: bool = False) -> float:
    """max of |x(t) − ξ(t)| over [t1, t2), or over [t1, t2] with `include_end`."""
    times = _piece_times(x, piece)
    if not include_end:
        times = times[times < piece.t2]
    return float(np.abs(x.values_at(times)[:, 0] - piece.path.values_at(times)[:, 0]).max())


def _piece_times(x: StepPath, piece: MonotonePiece) -> np.ndarray:
    critical = np.concatenate(([piece.t1, piece.t2], x.jump_times, piece.path.jump_times))
    return np.unique(critical[(critical >= piece.t1) & (critical <= piece.t2)])
