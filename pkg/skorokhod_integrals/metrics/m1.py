"""Skorokhod M1 distance between step paths.

The M1 distance of two step paths is the Fréchet distance, under the max-norm on
(time, value), between the polylines through their completed graphs. The decision version is
the classical free-space reachability sweep: in every cell of the free-space diagram the free
set is convex, so each cell boundary carries one free interval and reachability propagates
cell by cell keeping the lowest reachable entry point.

The optimum is bracketed by the exactly computable critical values (endpoint distances and
vertex-to-segment distances) and the remaining gap is closed by bisection down to ε_dp.
"""
from typing import Optional, Tuple

import numpy as np

from skorokhod_integrals.cadlag import StepPath, check_compatible
from skorokhod_integrals.metrics.config import MetricConfig

_TOL = 1e-12
# Marks an impassable cell boundary.
_BLOCKED = 2.0


def _free_intervals(points: np.ndarray, starts: np.ndarray, ends: np.ndarray, eps: float):
    """Free intervals {μ ∈ [0,1] : ‖c − (a + μ(b − a))‖∞ ≤ ε} for every point c and segment [a, b].

    Args:
        points: Array (P, D) of points c.
        starts: Array (S, D) of segment starts a.
        ends: Array (S, D) of segment ends b.
        eps: Distance threshold.

    Returns:
        Arrays `lo`, `hi` of shape (P, S); the interval is empty where lo > hi.
    """
    a = starts[None, :, :]
    d = (ends - starts)[None, :, :]
    c = points[:, None, :]
    flat = np.abs(d) < 1e-15
    with np.errstate(divide="ignore", invalid="ignore"):
        t1 = (c - eps - a) / d
        t2 = (c + eps - a) / d
    lower = np.where(flat, -np.inf, np.minimum(t1, t2))
    upper = np.where(flat, np.inf, np.maximum(t1, t2))
    # a degenerate coordinate is either always or never within eps
    blocked = flat & (np.abs(c - a) > eps + _TOL)
    lo = np.maximum(lower.max(axis=2), 0.0)
    hi = np.minimum(upper.min(axis=2), 1.0)
    hi = np.where(blocked.any(axis=2), -1.0, hi)
    return lo, hi


def frechet_decision(first: np.ndarray, second: np.ndarray, eps: float) -> bool:
    """Whether the max-norm Fréchet distance between two polylines is at most `eps`."""
    if np.abs(first[0] - second[0]).max() > eps + _TOL:
        return False
    if np.abs(first[-1] - second[-1]).max() > eps + _TOL:
        return False

    p, q = len(first), len(second)
    # left[i, j]: vertex i of `first` against segment j of `second`
    left_lo, left_hi = _free_intervals(first, second[:-1], second[1:], eps)
    # bottom[i, j]: vertex j of `second` against segment i of `first`
    bottom_lo, bottom_hi = _free_intervals(second, first[:-1], first[1:], eps)
    bottom_lo, bottom_hi = bottom_lo.T, bottom_hi.T

    def passable(lo, hi, entry):
        value = max(lo, entry)
        return value if value <= hi + _TOL else _BLOCKED

    left = np.full((p, q - 1), _BLOCKED)
    bottom = np.full((p - 1, q), _BLOCKED)

    # boundary edges are reachable only along fully free prefixes from the start corner
    for j in range(q - 1):
        if left_lo[0, j] > _TOL:
            break
        left[0, j] = 0.0
        if left_hi[0, j] < 1.0 - _TOL:
            break
    for i in range(p - 1):
        if bottom_lo[i, 0] > _TOL:
            break
        bottom[i, 0] = 0.0
        if bottom_hi[i, 0] < 1.0 - _TOL:
            break

    for i in range(p - 1):
        for j in range(q - 1):
            from_left = left[i, j] <= 1.0
            from_bottom = bottom[i, j] <= 1.0
            if not (from_left or from_bottom):
                continue
            # exit through the right edge
            if from_bottom:
                left[i + 1, j] = passable(left_lo[i + 1, j], left_hi[i + 1, j], 0.0)
            else:
                left[i + 1, j] = passable(left_lo[i + 1, j], left_hi[i + 1, j], left[i, j])
            # exit through the top edge
            if from_left:
                bottom[i, j + 1] = passable(bottom_lo[i, j + 1], bottom_hi[i, j + 1], 0.0)
            else:
                bottom[i, j + 1] = passable(
                    bottom_lo[i, j + 1], bottom_hi[i, j + 1], bottom[i, j]
                )

    through_right = left[p - 1, q - 2] <= 1.0 and left_hi[p - 1, q - 2] >= 1.0 - _TOL
    through_top = bottom[p - 2, q - 1] <= 1.0 and bottom_hi[p - 2, q - 1] >= 1.0 - _TOL
    return bool(through_right or through_top)


def _point_segment_distance(c: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    """min over μ ∈ [0,1] of ‖c − (a + μ(b − a))‖∞ (convex piecewise linear in μ)."""
    d = b - a
    offset = a - c
    candidates = [0.0, 1.0]
    for k in range(len(d)):
        if d[k] != 0:
            candidates.append(-offset[k] / d[k])
        for l in range(k + 1, len(d)):
            for sign in (1.0, -1.0):
                slope = d[k] - sign * d[l]
                if slope != 0:
                    candidates.append(-(offset[k] - sign * offset[l]) / slope)
    mus = np.clip(np.array(candidates), 0.0, 1.0)
    values = np.abs(offset[None, :] + mus[:, None] * d[None, :]).max(axis=1)
    return float(values.min())


def frechet_critical_values(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """Endpoint distances, vertex-to-segment distances and the all-pairs upper bound."""
    values = [
        np.abs(first[0] - second[0]).max(),
        np.abs(first[-1] - second[-1]).max(),
        np.abs(first[:, None, :] - second[None, :, :]).max(),
    ]
    for points, polyline in ((first, second), (second, first)):
        for c in points[1:-1]:
            for a, b in zip(polyline[:-1], polyline[1:]):
                values.append(_point_segment_distance(c, a, b))
    return np.unique(np.array(values, dtype=float))


def frechet_distance(
    first: np.ndarray, second: np.ndarray, resolution: float, max_refinement_levels: int = 4
) -> float:
    """Max-norm Fréchet distance between two polylines, as a feasible upper bound.

    The returned value is feasible and lies within `resolution` of the infimum.
    """
    lower = max(np.abs(first[0] - second[0]).max(), np.abs(first[-1] - second[-1]).max())
    candidates = frechet_critical_values(first, second)
    candidates = candidates[candidates >= lower]

    # smallest feasible critical value; the all-pairs bound always is
    low, high = 0, candidates.size - 1
    while low < high:
        middle = (low + high) // 2
        if frechet_decision(first, second, candidates[middle]):
            high = middle
        else:
            low = middle + 1
    upper_bound = float(candidates[low])
    lower_bound = float(candidates[low - 1]) if low > 0 else float(lower)
    if low == 0 or upper_bound - lower_bound <= _TOL:
        return upper_bound

    # the optimum lies in (lower_bound, upper_bound]
    estimate: Optional[float] = None
    tolerance = resolution
    for _ in range(max_refinement_levels + 1):
        while upper_bound - lower_bound > tolerance:
            middle = 0.5 * (lower_bound + upper_bound)
            if frechet_decision(first, second, middle):
                upper_bound = middle
            else:
                lower_bound = middle
        if estimate is not None and abs(estimate - upper_bound) < tolerance:
            break
        estimate = upper_bound
        tolerance *= 0.5
    return upper_bound


def _graph_polyline(path: StepPath) -> np.ndarray:
    return np.asarray(path.completed_graph().vertices)


def d_M1(x: StepPath, y: StepPath, cfg: MetricConfig = None, strong: bool = False) -> float:
    """M1 distance on [0, T] between completed graphs.

    Args:
        x: First path.
        y: Second path.
        cfg: Resolution settings; defaults to ε_dp = 1e-3·T.
        strong: Compare the d-dimensional completed graphs with a single parametrization
            instead of the product (coordinatewise maximum) metric.

    Returns:
        A feasible upper bound within ε_dp of the distance.

    Raises:
        PathMismatchError: If the horizons or dimensions differ.
    """
    check_compatible(x, y)
    cfg = cfg or MetricConfig()
    resolution = cfg.resolution(x.horizon)

    if strong or x.dimension == 1:
        pairs: Tuple = ((x, y),)
    else:
        pairs = tuple((x.coordinate(i), y.coordinate(i)) for i in range(x.dimension))

    return max(
        frechet_distance(
            _graph_polyline(first),
            _graph_polyline(second),
            resolution,
            cfg.max_refinement_levels,
        )
        for first, second in pairs
    )
