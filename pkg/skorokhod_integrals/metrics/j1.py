"""Skorokhod J1 distance between step paths.

For step paths, a time change only matters through the new positions u_i of the jumps of `x`.
The pair (x∘λ, y) then moves through states (i, j) = (number of x jumps passed, number of y
jumps passed), and each visited state needs |x_i − y_j| ≤ ε. A state is reachable when the jump
positions can be chosen inside [s_i − ε, s_i + ε] in the right order; keeping the earliest
possible time of the latest event per state makes the reachability check exact. The distance is
the smallest critical value (time gap or value gap) that passes the check.
"""
import numpy as np

from skorokhod_integrals.cadlag import StepPath, check_compatible
from skorokhod_integrals.metrics.config import MetricConfig

_TOL = 1e-12


def _value_table(path: StepPath) -> np.ndarray:
    return np.vstack([path.initial_value[None, :], path.jump_values])


def _value_gaps(x: StepPath, y: StepPath) -> np.ndarray:
    """gaps[i, j] = max-norm of x_i − y_j over the value sequences of both paths."""
    xv, yv = _value_table(x), _value_table(y)
    return np.abs(xv[:, None, :] - yv[None, :, :]).max(axis=2)


def j1_feasible(x: StepPath, y: StepPath, eps: float, gaps: np.ndarray = None) -> bool:
    """Whether some time change λ with ‖λ − id‖ ≤ ε gives ‖x∘λ − y‖ ≤ ε (closure of the set)."""
    gaps = _value_gaps(x, y) if gaps is None else gaps
    tol = _TOL * max(1.0, x.horizon)
    ok = gaps <= eps + tol
    if not ok[0, 0] or not ok[-1, -1]:
        return False

    s, r, horizon = x.jump_times, y.jump_times, x.horizon
    m, n = s.size, r.size
    latest = np.full((m + 1, n + 1), np.inf)
    latest[0, 0] = 0.0

    for i in range(m + 1):
        for j in range(n + 1):
            current = latest[i, j]
            if current == np.inf:
                continue

            if i < m and ok[i + 1, j]:
                # place the next x jump before the next y jump
                u = horizon if s[i] >= horizon else max(current, s[i] - eps)
                ceiling = min(s[i] + eps, r[j] if j < n else horizon, horizon)
                if u <= ceiling + tol and u < latest[i + 1, j]:
                    latest[i + 1, j] = u

            if j < n and r[j] >= current - tol and ok[i, j + 1]:
                if r[j] < latest[i, j + 1]:
                    latest[i, j + 1] = r[j]

            if i < m and j < n and ok[i + 1, j + 1] and r[j] >= current - tol:
                # both jumps at the same time
                pinned_ok = s[i] < horizon or r[j] >= horizon
                if pinned_ok and abs(s[i] - r[j]) <= eps + tol and r[j] < latest[i + 1, j + 1]:
                    latest[i + 1, j + 1] = r[j]

    return bool(latest[m, n] < np.inf)


def j1_critical_values(x: StepPath, y: StepPath) -> np.ndarray:
    """Sorted candidate distances: 0, all jump-time gaps and all value gaps."""
    time_gaps = np.abs(x.jump_times[:, None] - y.jump_times[None, :]).ravel()
    return np.unique(np.concatenate(([0.0], time_gaps, _value_gaps(x, y).ravel())))


def d_J1(x: StepPath, y: StepPath, cfg: MetricConfig = None) -> float:
    """J1 distance on [0, T]: inf over increasing bijections λ of max(‖x∘λ − y‖, ‖λ − id‖).

    The result is exact for step paths (one of the critical values), `cfg` is accepted for
    symmetry with :func:`d_M1`.

    Raises:
        PathMismatchError: If the horizons or dimensions differ.
    """
    check_compatible(x, y)
    gaps = _value_gaps(x, y)
    candidates = j1_critical_values(x, y)

    # the largest value gap bounds ‖x − y‖ and is always feasible
    low, high = 0, candidates.size - 1
    while low < high:
        middle = (low + high) // 2
        if j1_feasible(x, y, candidates[middle], gaps):
            high = middle
        else:
            low = middle + 1
    return float(candidates[low])
