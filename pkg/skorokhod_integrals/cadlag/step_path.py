"""Piecewise-constant càdlàg paths on a compact horizon [0, T].

A :class:`StepPath` is stored in a canonical form: an initial value and a strictly increasing
list of jump times in (0, T] with the post-jump values. Zero-size jumps are merged away on
construction, so two paths describing the same function always compare equal.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Callable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from skorokhod_integrals.utils.exceptions import DomainError, PathMismatchError

# Tolerance used when a time is checked against the horizon.
TIME_TOL = 1e-12

Operand = Union["StepPath", float, Sequence[float], np.ndarray]


def as_vector(
    value: Union[float, Sequence[float], np.ndarray], dimension: Optional[int] = None
) -> np.ndarray:
    """Converts a scalar or a sequence to a float vector, broadcasting scalars to `dimension`."""
    vector = np.atleast_1d(np.asarray(value, dtype=float))
    if vector.ndim != 1:
        raise DomainError(f"Expected a scalar or a vector, got an array of shape {vector.shape}.")
    if dimension is not None and vector.shape[0] != dimension:
        if vector.shape[0] != 1:
            raise PathMismatchError(
                f"Vector of dimension {vector.shape[0]} does not match dimension {dimension}."
            )
        vector = np.repeat(vector, dimension)
    return vector


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array, dtype=float)
    array.flags.writeable = False
    return array


class StepPath:
    """Immutable d-dimensional càdlàg step path on [0, T].

    The value on [0, t_1) is `initial_value`, the value on [t_i, t_{i+1}) is `jump_values[i]`
    and the value at T is the last stored value.
    """

    __slots__ = ("_horizon", "_initial", "_times", "_values")

    def __init__(
        self,
        initial_value: Union[float, Sequence[float], np.ndarray],
        times: Sequence[float] = (),
        values: Union[Sequence[float], Sequence[Sequence[float]], np.ndarray] = (),
        horizon: float = 1.0,
    ):
        """Initialize class instance.

        Args:
            initial_value: Value on [0, first jump).
            times: Strictly increasing jump times in (0, horizon].
            values: Post-jump values, one row (or scalar) per jump time.
            horizon: Time horizon T > 0.

        Raises:
            DomainError: If the horizon is not positive or a jump time lies outside (0, T].
            PathMismatchError: If the values do not match the dimension of the initial value.
        """
        horizon = float(horizon)
        if not np.isfinite(horizon) or horizon <= 0:
            raise DomainError(f"Horizon must be a positive finite time, got {horizon}.")

        initial = as_vector(initial_value)
        dimension = initial.shape[0]
        times = np.asarray(times, dtype=float).reshape(-1)
        values = np.asarray(values, dtype=float)

        if times.size == 0:
            values = np.empty((0, dimension))
        else:
            values = values.reshape(times.size, -1)
            if values.shape[1] == 1 and dimension > 1:
                values = np.repeat(values, dimension, axis=1)
            if values.shape[1] != dimension:
                raise PathMismatchError(
                    f"Jump values have dimension {values.shape[1]}, expected {dimension}."
                )
            if times[0] <= 0 or times[-1] > horizon:
                raise DomainError(f"Jump times must lie in (0, {horizon}], got {times}.")
            if np.any(np.diff(times) <= 0):
                raise DomainError(f"Jump times must be strictly increasing, got {times}.")
            if not (np.all(np.isfinite(values)) and np.all(np.isfinite(initial))):
                raise DomainError("Path values must be finite.")

            # a stored value equal to its predecessor is a zero-size jump
            previous = np.vstack([initial[None, :], values[:-1]])
            keep = np.any(values != previous, axis=1)
            times, values = times[keep], values[keep]

        self._horizon = horizon
        self._initial = _frozen(initial)
        self._times = _frozen(times)
        self._values = _frozen(values.reshape(-1, dimension))

    # ------------------------------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------------------------------
    @classmethod
    def constant(cls, value: Union[float, Sequence[float]], horizon: float) -> StepPath:
        """Constant path."""
        return cls(value, horizon=horizon)

    @classmethod
    def indicator(
        cls, start: float, horizon: float, height: float = 1.0, base: float = 0.0
    ) -> StepPath:
        """Scalar path `base + height * 1_{[start, ∞)}` restricted to [0, horizon]."""
        if start > horizon:
            return cls(base, horizon=horizon)
        return cls(base, [start], [base + height], horizon=horizon)

    @classmethod
    def from_increments(
        cls,
        initial_value: Union[float, Sequence[float]],
        times: Sequence[float],
        increments: Union[Sequence[float], np.ndarray],
        horizon: float,
    ) -> StepPath:
        """Builds a path from (possibly unsorted, possibly repeated) jump times and jump sizes.

        Increments sharing a time are added together; times beyond the horizon are dropped.
        """
        initial = as_vector(initial_value)
        times = np.asarray(times, dtype=float).reshape(-1)
        if not times.size:
            return cls(initial, horizon=horizon)
        increments = np.asarray(increments, dtype=float).reshape(times.size, -1)
        if increments.shape[1] == 1 and initial.shape[0] > 1:
            increments = np.repeat(increments, initial.shape[0], axis=1)

        inside = times <= horizon
        times, increments = times[inside], increments[inside]
        unique_times, inverse = np.unique(times, return_inverse=True)
        summed = np.zeros((unique_times.size, initial.shape[0]))
        np.add.at(summed, inverse, increments)
        values = initial[None, :] + np.cumsum(summed, axis=0)
        return cls(initial, unique_times, values, horizon=horizon)

    @classmethod
    def tabulate(
        cls,
        horizon: float,
        breakpoints: Sequence[float],
        value_fn: Callable[[float], Union[float, np.ndarray]],
    ) -> StepPath:
        """Builds the path whose value on [b_k, b_{k+1}) is `value_fn(b_k)`.

        Args:
            horizon: Time horizon of the result.
            breakpoints: Candidate jump times; 0 is always added, times outside (0, T] ignored.
            value_fn: Value of the path at a breakpoint, constant until the next one.

        Returns:
            The tabulated path.
        """
        times = np.unique(np.asarray(breakpoints, dtype=float))
        times = times[(times > 0) & (times <= horizon)]
        initial = as_vector(value_fn(0.0))
        values = np.array([as_vector(value_fn(t), initial.shape[0]) for t in times])
        return cls(initial, times, values.reshape(times.size, initial.shape[0]), horizon=horizon)

    @classmethod
    def stack(cls, coordinates: Sequence[StepPath]) -> StepPath:
        """Joins scalar paths on a common horizon into one multidimensional path."""
        check_same_horizon(*coordinates)
        times = np.unique(np.concatenate([p.jump_times for p in coordinates]))
        return cls(
            np.concatenate([p.initial_value for p in coordinates]),
            times,
            np.hstack([p.values_at(times) for p in coordinates]),
            horizon=coordinates[0].horizon,
        )

    # ------------------------------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------------------------------
    @property
    def horizon(self) -> float:
        return self._horizon

    @property
    def dimension(self) -> int:
        return self._initial.shape[0]

    @property
    def initial_value(self) -> np.ndarray:
        return self._initial

    @property
    def jump_times(self) -> np.ndarray:
        return self._times

    @property
    def jump_values(self) -> np.ndarray:
        return self._values

    @property
    def num_jumps(self) -> int:
        return self._times.size

    @property
    def jump_sizes(self) -> np.ndarray:
        """Jump sizes Δp(t_i), one row per stored jump."""
        if not self.num_jumps:
            return np.empty((0, self.dimension))
        previous = np.vstack([self._initial[None, :], self._values[:-1]])
        return self._values - previous

    @property
    def terminal_value(self) -> np.ndarray:
        return self._values[-1] if self.num_jumps else self._initial

    def critical_times(self) -> np.ndarray:
        """0 followed by the jump times: the path is constant between consecutive entries."""
        return np.concatenate(([0.0], self._times))

    def coordinate(self, index: int) -> StepPath:
        """Scalar path of a single coordinate."""
        return StepPath(
            self._initial[index], self._times, self._values[:, index], horizon=self._horizon
        )

    # ------------------------------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------------------------------
    def _check_time(self, t: float, strictly_positive: bool = False) -> float:
        t = float(t)
        lower_ok = t > 0 if strictly_positive else t >= -TIME_TOL
        if not lower_ok or t > self._horizon + TIME_TOL or not np.isfinite(t):
            bound = "(0" if strictly_positive else "[0"
            raise DomainError(f"Time {t} outside {bound}, {self._horizon}].")
        return min(max(t, 0.0), self._horizon)

    def eval(self, t: float) -> np.ndarray:
        """Right-continuous value at `t`."""
        t = self._check_time(t)
        index = int(np.searchsorted(self._times, t, side="right"))
        return self._values[index - 1] if index else self._initial

    __call__ = eval

    def values_at(self, times: Sequence[float]) -> np.ndarray:
        """Vectorized right-continuous evaluation, one row per time."""
        times = np.asarray(times, dtype=float).reshape(-1)
        indices = np.searchsorted(self._times, times, side="right")
        table = np.vstack([self._initial[None, :], self._values])
        return table[indices]

    def left_limits_at(self, times: Sequence[float]) -> np.ndarray:
        """Vectorized left limits, one row per time (the initial value at t=0)."""
        times = np.asarray(times, dtype=float).reshape(-1)
        indices = np.searchsorted(self._times, times, side="left")
        table = np.vstack([self._initial[None, :], self._values])
        return table[indices]

    def left_limit(self, t: float) -> np.ndarray:
        """Left limit p(t−) for 0 < t ≤ T."""
        t = self._check_time(t, strictly_positive=True)
        index = int(np.searchsorted(self._times, t, side="left"))
        return self._values[index - 1] if index else self._initial

    def jump_at(self, t: float) -> np.ndarray:
        """Jump Δp(t) = p(t) − p(t−) for 0 < t ≤ T."""
        return self.eval(t) - self.left_limit(t)

    def jumps_up_to(self, t: float) -> List[Tuple[float, np.ndarray]]:
        """All nonzero jumps in (0, t] as (time, Δ) pairs."""
        t = self._check_time(t, strictly_positive=True)
        count = int(np.searchsorted(self._times, t, side="right"))
        sizes = self.jump_sizes
        return [(float(self._times[i]), sizes[i]) for i in range(count)]

    def total_variation(self, t: float = None) -> float:
        """Sum of absolute jump sizes over (0, t], summed over coordinates."""
        t = self._horizon if t is None else self._check_time(t)
        count = int(np.searchsorted(self._times, t, side="right"))
        return float(np.abs(self.jump_sizes[:count]).sum())

    def variation_between(self, lo: float, hi: float) -> float:
        """Total variation over (lo, hi]."""
        return self.total_variation(hi) - self.total_variation(lo)

    def running_sup(self, t: float = None) -> float:
        """|p|*_t: supremum of the max-coordinate absolute value over [0, t]."""
        t = self._horizon if t is None else self._check_time(t)
        return self.sup_norm(0.0, t)

    def sup_norm(self, lo: float = 0.0, hi: float = None) -> float:
        """Supremum of the max-coordinate absolute value over [lo, hi]."""
        hi = self._horizon if hi is None else self._check_time(hi)
        lo = self._check_time(lo)
        inside = self._values[(self._times > lo) & (self._times <= hi)]
        candidates = np.vstack([self.eval(lo)[None, :], inside])
        return float(np.abs(candidates).max())

    # ------------------------------------------------------------------------------------------
    # Transformations
    # ------------------------------------------------------------------------------------------
    def truncate(self, t: float) -> StepPath:
        """The path frozen after time `t` (equal to p on [0, t], constant afterwards)."""
        t = self._check_time(t)
        keep = self._times <= t
        return StepPath(self._initial, self._times[keep], self._values[keep], self._horizon)

    def completed_graph(self) -> CompletedGraph:
        """Completed graph traversed in time order, each jump filled by a vertical segment."""
        rows = [np.concatenate(([0.0], self._initial))]
        previous = self._initial
        for time, value in zip(self._times, self._values):
            rows.append(np.concatenate(([time], previous)))
            rows.append(np.concatenate(([time], value)))
            previous = value
        if not self.num_jumps or self._times[-1] < self._horizon:
            rows.append(np.concatenate(([self._horizon], previous)))
        return CompletedGraph(vertices=_frozen(np.array(rows)))

    def _combine(self, other: Operand, op: Callable) -> StepPath:
        if isinstance(other, StepPath):
            check_compatible(self, other)
            times = np.union1d(self._times, other._times)
            return StepPath(
                op(self._initial, other._initial),
                times,
                op(self.values_at(times), other.values_at(times)),
                horizon=self._horizon,
            )
        constant = as_vector(other, self.dimension)
        return StepPath(
            op(self._initial, constant),
            self._times,
            op(self._values, constant[None, :]),
            horizon=self._horizon,
        )

    def __add__(self, other: Operand) -> StepPath:
        return self._combine(other, operator.add)

    __radd__ = __add__

    def __sub__(self, other: Operand) -> StepPath:
        return self._combine(other, operator.sub)

    def __rsub__(self, other: Operand) -> StepPath:
        return (-self) + other

    def __mul__(self, other: Operand) -> StepPath:
        return self._combine(other, operator.mul)

    __rmul__ = __mul__

    def __neg__(self) -> StepPath:
        return StepPath(-self._initial, self._times, -self._values, horizon=self._horizon)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StepPath):
            return NotImplemented
        return (
            self._horizon == other._horizon
            and np.array_equal(self._initial, other._initial)
            and np.array_equal(self._times, other._times)
            and np.array_equal(self._values, other._values)
        )

    __hash__ = None

    def is_close(self, other: StepPath, atol: float = 1e-12) -> bool:
        """Whether both paths agree within `atol` in time and in value.

        Jump times are matched one to one within `atol`; values are compared at every critical
        time of either path.
        """
        if self._horizon != other._horizon or self.dimension != other.dimension:
            return False
        if self.num_jumps != other.num_jumps:
            return False
        if not np.allclose(self._times, other._times, rtol=0.0, atol=atol):
            return False
        return np.allclose(self._initial, other._initial, rtol=0.0, atol=atol) and np.allclose(
            self._values, other._values, rtol=0.0, atol=atol
        )

    def __repr__(self) -> str:
        return (
            f"StepPath(initial_value={self._initial.tolist()}, times={self._times.tolist()}, "
            f"values={self._values.tolist()}, horizon={self._horizon})"
        )


def check_compatible(*paths: StepPath) -> None:
    """Raises unless every path has the horizon and dimension of the first one."""
    first = paths[0]
    for path in paths[1:]:
        if path.horizon != first.horizon:
            raise PathMismatchError(f"Horizon mismatch: {first.horizon} != {path.horizon}.")
        if path.dimension != first.dimension:
            raise PathMismatchError(f"Dimension mismatch: {first.dimension} != {path.dimension}.")


def check_same_horizon(*paths: StepPath) -> None:
    """Raises unless every path shares the horizon of the first one."""
    for path in paths[1:]:
        if path.horizon != paths[0].horizon:
            raise PathMismatchError(f"Horizon mismatch: {paths[0].horizon} != {path.horizon}.")


class Segment(NamedTuple):
    """Straight piece of a completed graph, from (t0, v0) to (t1, v1)."""

    t0: float
    v0: np.ndarray
    t1: float
    v1: np.ndarray

    @property
    def is_vertical(self) -> bool:
        return self.t0 == self.t1


@dataclass(frozen=True, eq=False)
class CompletedGraph:
    """Polyline through the completed graph of a step path.

    `vertices` holds one row `(t, v_1, ..., v_d)` per vertex, in traversal order: horizontal
    pieces follow the constancy intervals and vertical pieces go from the pre-jump to the
    post-jump value.
    """

    vertices: np.ndarray

    def segments(self) -> Iterator[Segment]:
        for start, end in zip(self.vertices[:-1], self.vertices[1:]):
            yield Segment(float(start[0]), start[1:], float(end[0]), end[1:])

    def __len__(self) -> int:
        return len(self.vertices) - 1
