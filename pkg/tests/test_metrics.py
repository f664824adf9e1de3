import numpy as np
import pytest

from skorokhod_integrals.cadlag import StepPath
from skorokhod_integrals.metrics import MetricConfig, d_J1, d_M1, frechet_distance
from skorokhod_integrals.utils.exceptions import DomainError, PathMismatchError
from tests.conftest import random_step_path


def _lattice_paths(m: int, n: int):
    """Monotone lattice paths (0, 0) → (m, n) with unit, diagonal or tied steps."""
    if m == 0 and n == 0:
        yield [(0, 0)]
        return
    for di, dj in ((1, 0), (0, 1), (1, 1)):
        if di <= m and dj <= n:
            for tail in _lattice_paths(m - di, n - dj):
                yield [(0, 0)] + [(i + di, j + dj) for i, j in tail]


def brute_force_j1(x: StepPath, y: StepPath) -> float:
    """Minimum over all interleavings of the jumps of x with those of y.

    For a fixed interleaving every jump of x is moved to the closest admissible time, which lies
    between the surrounding jumps of y (or on y's jump when both are tied).
    """
    xv = np.vstack([x.initial_value[None, :], x.jump_values])
    yv = np.vstack([y.initial_value[None, :], y.jump_values])
    s, r, horizon = x.jump_times, y.jump_times, x.horizon

    best = np.inf
    for states in _lattice_paths(s.size, r.size):
        values = max(np.abs(xv[i] - yv[j]).max() for i, j in states)
        times = 0.0
        for (i0, j0), (i1, j1) in zip(states[:-1], states[1:]):
            if i1 == i0:
                continue
            if j1 > j0:
                u = r[j0]
            else:
                lo = r[j0 - 1] if j0 > 0 else 0.0
                hi = r[j0] if j0 < r.size else horizon
                u = min(max(s[i0], lo), hi)
            times = max(times, abs(u - s[i0]))
        best = min(best, max(values, times))
    return float(best)


def _resample(vertices: np.ndarray, spacing: float) -> np.ndarray:
    points = [vertices[:1]]
    for start, end in zip(vertices[:-1], vertices[1:]):
        pieces = max(1, int(np.ceil(np.abs(end - start).max() / spacing)))
        mus = np.arange(1, pieces + 1)[:, None] / pieces
        points.append(start[None, :] + mus * (end - start)[None, :])
    return np.vstack(points)


def discrete_frechet(first: np.ndarray, second: np.ndarray) -> float:
    """Max-norm discrete Fréchet distance by the coupling recursion."""
    distance = np.abs(first[:, None, :] - second[None, :, :]).max(axis=2)
    table = np.full(distance.shape, np.inf)
    for i in range(distance.shape[0]):
        for j in range(distance.shape[1]):
            if i == 0 and j == 0:
                previous = 0.0
            else:
                previous = min(
                    table[i - 1, j] if i else np.inf,
                    table[i, j - 1] if j else np.inf,
                    table[i - 1, j - 1] if i and j else np.inf,
                )
            table[i, j] = max(distance[i, j], previous)
    return float(table[-1, -1])


def test_j1_of_shifted_indicators():
    x = StepPath.indicator(0.5, 1.0)
    y = StepPath.indicator(0.6, 1.0)

    assert d_J1(x, y) == pytest.approx(0.1, abs=1e-12)
    assert d_J1(x, x) == 0.0


def test_j1_cannot_merge_jumps_but_m1_can():
    staircase = StepPath(0.0, [0.5, 0.51], [0.5, 1.0], horizon=1.0)
    single = StepPath.indicator(0.5, 1.0)

    assert d_J1(staircase, single) == pytest.approx(0.5, abs=1e-12)
    assert d_M1(staircase, single) == pytest.approx(0.01, abs=1e-3)


def test_strong_m1_is_at_least_the_product_metric():
    x = StepPath.stack([StepPath.indicator(0.5, 1.0), StepPath.indicator(0.5, 1.0)])
    y = StepPath.stack([StepPath.indicator(0.5, 1.0), StepPath.indicator(0.6, 1.0)])
    cfg = MetricConfig(discretization_step=1e-4)

    assert d_M1(x, y, cfg) == pytest.approx(0.1, abs=1e-3)
    assert d_M1(x, y, cfg, strong=True) >= 0.5 - 1e-3


def test_metrics_reject_incompatible_paths():
    with pytest.raises(PathMismatchError):
        d_J1(StepPath.constant(0.0, 1.0), StepPath.constant(0.0, 2.0))
    with pytest.raises(PathMismatchError):
        d_M1(StepPath.constant(0.0, 1.0), StepPath.constant([0.0, 0.0], 1.0))
    with pytest.raises(DomainError):
        MetricConfig(discretization_step=0.0)


def test_metric_config_resolution_scales_with_horizon():
    assert MetricConfig().resolution(2.0) == pytest.approx(2e-3)
    assert MetricConfig(discretization_step=1e-5).resolution(2.0) == 1e-5


def test_frechet_distance_of_identical_polylines_is_zero():
    line = np.array([[0.0, 0.0], [0.5, 1.0], [1.0, 1.0]])

    assert frechet_distance(line, line, 1e-3) == 0.0


@pytest.mark.parametrize("dimension", [1, 2])
def test_j1_matches_brute_force(rng, dimension):
    for _ in range(40):
        x = random_step_path(rng, max_jumps=4, dimension=dimension)
        y = random_step_path(rng, max_jumps=4, dimension=dimension)

        assert d_J1(x, y) == pytest.approx(brute_force_j1(x, y), abs=1e-9)
        assert d_J1(x, y) == pytest.approx(d_J1(y, x), abs=1e-9)


def test_m1_is_dominated_by_j1(rng):
    cfg = MetricConfig(discretization_step=1e-4)
    for _ in range(20):
        x = random_step_path(rng, max_jumps=3)
        y = random_step_path(rng, max_jumps=3)

        assert d_M1(x, y, cfg) <= d_J1(x, y) + 1e-4 + 1e-9


@pytest.mark.slow
def test_m1_matches_discrete_frechet(rng):
    spacing = 0.02
    cfg = MetricConfig(discretization_step=1e-4)
    for _ in range(20):
        x = random_step_path(rng, max_jumps=3, scale=0.5)
        y = random_step_path(rng, max_jumps=3, scale=0.5)
        discrete = discrete_frechet(
            _resample(x.completed_graph().vertices, spacing),
            _resample(y.completed_graph().vertices, spacing),
        )

        distance = d_M1(x, y, cfg)
        assert distance <= discrete + 1e-4 + 1e-9
        assert discrete <= distance + spacing + 1e-9


@pytest.mark.slow
def test_triangle_inequality(rng):
    cfg = MetricConfig(discretization_step=1e-4)
    for _ in range(20):
        x, y, z = (random_step_path(rng) for _ in range(3))
        assert d_J1(x, z) <= d_J1(x, y) + d_J1(y, z) + 1e-9
        assert d_M1(x, z, cfg) <= d_M1(x, y, cfg) + d_M1(y, z, cfg) + 2e-4
