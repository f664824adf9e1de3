"""Moduli of continuity of step paths.

All suprema below range over continuous time, but a step path only takes finitely many values
on finitely many pieces. Each computation splits the time range into atoms (the critical times
themselves and the open intervals between them) and enumerates atom tuples; whether the time
constraints of a tuple can be met is decided from the atom endpoints, keeping track of which
endpoints are attained.
"""
from dataclasses import dataclass

import numpy as np

from skorokhod_integrals.cadlag import StepPath, check_compatible
from skorokhod_integrals.utils.exceptions import DomainError

_TOL = 1e-12


@dataclass(frozen=True)
class _TimeAtoms:
    """Ordered partition of [start, end] into points and open intervals."""

    lo: np.ndarray
    hi: np.ndarray
    is_point: np.ndarray

    @classmethod
    def between(cls, start: float, end: float, *critical: np.ndarray) -> "_TimeAtoms":
        times = np.concatenate([np.asarray(c, dtype=float).reshape(-1) for c in critical])
        inner = np.unique(times[(times > start) & (times < end)])
        points = np.concatenate(([start], inner, [end])) if end > start else np.array([start])

        size = 2 * points.size - 1
        lo, hi = np.empty(size), np.empty(size)
        lo[0::2], hi[0::2] = points, points
        lo[1::2], hi[1::2] = points[:-1], points[1:]
        is_point = np.zeros(size, dtype=bool)
        is_point[0::2] = True
        return cls(lo, hi, is_point)

    def __len__(self) -> int:
        return self.lo.size

    def right_values(self, path: StepPath) -> np.ndarray:
        return path.values_at(np.where(self.is_point, self.lo, 0.5 * (self.lo + self.hi)))

    def left_values(self, path: StepPath) -> np.ndarray:
        return np.where(
            self.is_point[:, None],
            path.left_limits_at(self.lo),
            path.values_at(0.5 * (self.lo + self.hi)),
        )


def _tighter(first, first_closed, second, second_closed, upper: bool):
    """Combines two bounds of the same side; a tie is closed only if both bounds are."""
    if upper:
        value = np.minimum(first, second)
        first_wins, second_wins = first < second - _TOL, second < first - _TOL
    else:
        value = np.maximum(first, second)
        first_wins, second_wins = first > second + _TOL, second > first + _TOL
    tie = np.where(second_wins, second_closed, first_closed & second_closed)
    closed = np.where(first_wins, first_closed, tie)
    return value, closed


def _resolve_range(path: StepPath, start: float, horizon: float):
    horizon = path.horizon if horizon is None else float(horizon)
    if not 0 <= start <= horizon <= path.horizon + _TOL:
        raise DomainError(f"Invalid time range [{start}, {horizon}] for horizon {path.horizon}.")
    return float(start), min(horizon, path.horizon)


def _check_positive(name: str, value: float) -> None:
    if not value > 0:
        raise DomainError(f"{name} must be > 0, got {value}.")


def w_prime(x: StepPath, delta: float, horizon: float = None, start: float = 0.0) -> float:
    """M1 modulus w′(x, δ) on [start, T].

    Supremum over start ∨ (t − δ) ≤ s ≤ t ≤ r ≤ (t + δ) ∧ T of the distance from x_t to the
    segment [x_s, x_r], taken coordinatewise and maximized over coordinates.

    Args:
        x: Path.
        delta: Window half-width δ > 0.
        horizon: Right end T of the time range, at most the path horizon.
        start: Left end of the time range.

    Returns:
        The modulus, 0 for coordinatewise monotone paths.
    """
    _check_positive("delta", delta)
    start, horizon = _resolve_range(x, start, horizon)
    atoms = _TimeAtoms.between(start, horizon, x.jump_times)
    values = atoms.right_values(x)
    size = len(atoms)

    worst = 0.0
    for b in range(size):
        a_idx = np.arange(b + 1)[:, None]
        c_idx = np.arange(b, size)[None, :]

        # feasible t in atom b: t <= hi_a + δ (a < b) and t >= lo_c − δ (c > b)
        reach_back = np.where(a_idx == b, np.inf, atoms.hi[a_idx] + delta)
        upper, upper_closed = _tighter(
            np.full(reach_back.shape, atoms.hi[b]),
            np.full(reach_back.shape, atoms.is_point[b]),
            reach_back,
            (a_idx == b) | atoms.is_point[a_idx],
            upper=True,
        )
        reach_ahead = np.where(c_idx == b, -np.inf, atoms.lo[c_idx] - delta)
        lower, lower_closed = _tighter(
            np.full(reach_ahead.shape, atoms.lo[b]),
            np.full(reach_ahead.shape, atoms.is_point[b]),
            reach_ahead,
            (c_idx == b) | atoms.is_point[c_idx],
            upper=False,
        )
        feasible = (lower < upper - _TOL) | (
            (np.abs(lower - upper) <= _TOL) & lower_closed & upper_closed
        )
        if not feasible.any():
            continue

        xa = values[: b + 1][:, None, :]
        xc = values[b:][None, :, :]
        xb = values[b][None, None, :]
        outside = np.maximum(xb - np.maximum(xa, xc), np.minimum(xa, xc) - xb)
        distance = np.maximum(outside, 0.0).max(axis=2)
        worst = max(worst, float(np.where(feasible, distance, 0.0).max()))
    return worst


def u_osc(x: StepPath, t: float, delta: float, horizon: float = None) -> float:
    """Local oscillation u(x, t, δ): sup |x_r − x_s| over r, s ∈ [0 ∨ (t − δ), (t + δ) ∧ T]."""
    _check_positive("delta", delta)
    _, horizon = _resolve_range(x, 0.0, horizon)
    if not 0 <= t <= horizon:
        raise DomainError(f"Time {t} outside [0, {horizon}].")
    lo, hi = max(0.0, t - delta), min(t + delta, horizon)
    inside = x.jump_values[(x.jump_times > lo) & (x.jump_times <= hi)]
    window = np.vstack([x.eval(lo)[None, :], inside])
    return float((window.max(axis=0) - window.min(axis=0)).max())


def hat_w(
    x: StepPath,
    y: StepPath,
    delta: float,
    horizon: float = None,
    start: float = 0.0,
    y_left: bool = False,
) -> float:
    """Largest consecutive increment ŵ_δ(x, y) on [start, T].

    Supremum over start ≤ s < t < u ≤ (s + δ) ∧ T and coordinates i of
    |x_i(s) − x_i(t)| ∧ |y_i(t) − y_i(u)|: an increment of `x` followed within δ by an increment
    of `y`.

    Args:
        x: Path whose increment comes first.
        y: Path whose increment comes second.
        delta: Period δ > 0.
        horizon: Right end T of the time range.
        start: Left end of the time range.
        y_left: Evaluate `y` through its left limits y(t−).

    Returns:
        The modulus value.
    """
    check_compatible(x, y)
    _check_positive("delta", delta)
    start, horizon = _resolve_range(x, start, horizon)
    atoms = _TimeAtoms.between(start, horizon, x.jump_times, y.jump_times)
    xs = atoms.right_values(x)
    ys = atoms.left_values(y) if y_left else atoms.right_values(y)
    size = len(atoms)

    worst = 0.0
    for b in range(1, size - 1):
        first = np.abs(xs[:b] - xs[b])[:, None, :]
        second = np.abs(ys[b] - ys[b + 1 :])[None, :, :]
        gap = atoms.lo[b + 1 :][None, :] - atoms.hi[:b][:, None]
        attained = atoms.is_point[:b][:, None] & atoms.is_point[b + 1 :][None, :]
        feasible = (gap < delta - _TOL) | ((np.abs(gap - delta) <= _TOL) & attained)
        if not feasible.any():
            continue
        value = np.minimum(first, second).max(axis=2)
        worst = max(worst, float(np.where(feasible, value, 0.0).max()))
    return worst


def increment_count(x: StepPath, a: float, horizon: float = None) -> int:
    """Maximal number N of disjoint consecutive increments of size at least `a` on [0, T].

    Counts chains 0 ≤ t_1 ≤ t_2 ≤ ... ≤ t_2N ≤ T with |x(t_2i) − x(t_2i−1)| ≥ a; every
    increment found by the large-increment stopping times is one link of such a chain.

    The ends are not pinned: t_1 may exceed 0 and t_2N may fall before T, so the count is the
    largest number of increments anywhere in [0, T] and bounds the number of stopping times.
    Pinning t_1 = 0 and t_2N = T can only lower the count.
    """
    _check_positive("a", a)
    _, horizon = _resolve_range(x, 0.0, horizon)
    keep = x.jump_times <= horizon
    table = np.vstack([x.initial_value[None, :], x.jump_values[keep]])
    large = np.abs(table[:, None, :] - table[None, :, :]).max(axis=2) >= a - _TOL

    size = table.shape[0]
    # prefix[i]: most increments completed by value index i
    prefix = np.zeros(size, dtype=int)
    for j in range(1, size):
        starts = np.flatnonzero(large[: j, j])
        ending_here = prefix[starts].max() + 1 if starts.size else 0
        prefix[j] = max(prefix[j - 1], ending_here)
    return int(prefix[-1])


def varsigma_sentinel(horizon: float) -> float:
    """Value standing for +∞ in :func:`varsigma`; every consumer compares against T."""
    return horizon + 1.0


def varsigma(
    alpha: StepPath, a: float, t: float, mu: float, inclusive: bool = False
) -> float:
    """First large increment time ς_{a,t,μ}(α).

    inf{s > t : sup{|α_i(r) − α_i(s)| : t ∨ (s − μ) ≤ r ≤ s, 1 ≤ i ≤ d} > a}. Between jumps the
    window only loses values, so the infimum is attained at a jump time of α.

    Args:
        alpha: Path.
        a: Threshold a > 0.
        t: Start time.
        mu: Look-back length μ > 0.
        inclusive: Use ≥ a instead of > a, which gives the left-limit version ς_{a−}.

    Returns:
        The stopping time, or `varsigma_sentinel(T)` when no such s ≤ T exists.
    """
    _check_positive("a", a)
    _check_positive("mu", mu)
    if t < 0:
        raise DomainError(f"Start time must be >= 0, got {t}.")

    sentinel = varsigma_sentinel(alpha.horizon)
    times, values = alpha.jump_times, alpha.jump_values
    for index in np.flatnonzero(times > t):
        s = times[index]
        lo = max(t, s - mu)
        window = np.vstack([alpha.eval(lo)[None, :], values[(times > lo) & (times <= s)]])
        excursion = float(np.abs(window - values[index]).max())
        if excursion > a or (inclusive and excursion >= a):
            return float(s)
    return sentinel
