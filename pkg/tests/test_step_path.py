import numpy as np
import pytest
from hypothesis import given, settings

from skorokhod_integrals.cadlag import StepPath
from skorokhod_integrals.utils.exceptions import DomainError, PathMismatchError
from tests.conftest import step_paths


def test_zero_jumps_are_merged():
    path = StepPath(0.0, [0.2, 0.5, 0.7], [1.0, 1.0, 2.0], horizon=1.0)

    assert path.jump_times.tolist() == [0.2, 0.7]
    assert path == StepPath(0.0, [0.2, 0.7], [1.0, 2.0], horizon=1.0)


def test_evaluation_is_right_continuous():
    path = StepPath.indicator(0.5, 1.0, height=2.0, base=1.0)

    assert path.eval(0.4)[0] == 1.0
    assert path.eval(0.5)[0] == 3.0
    assert path.left_limit(0.5)[0] == 1.0
    assert path.jump_at(0.5)[0] == 2.0
    assert path.jump_at(0.7)[0] == 0.0


@pytest.mark.parametrize("t", [-0.1, 1.1, np.nan])
def test_evaluation_outside_horizon_raises(t):
    with pytest.raises(DomainError):
        StepPath.constant(0.0, 1.0).eval(t)


def test_invalid_construction_raises():
    with pytest.raises(DomainError):
        StepPath(0.0, [0.0], [1.0], horizon=1.0)
    with pytest.raises(DomainError):
        StepPath(0.0, [0.5, 0.4], [1.0, 2.0], horizon=1.0)
    with pytest.raises(DomainError):
        StepPath(0.0, horizon=0.0)
    with pytest.raises(PathMismatchError):
        StepPath([0.0, 0.0], [0.5], [[1.0, 2.0, 3.0]], horizon=1.0)


def test_arithmetic_is_pointwise():
    x = StepPath(0.0, [0.3, 0.6], [1.0, -1.0], horizon=1.0)
    y = StepPath(1.0, [0.6], [2.0], horizon=1.0)

    total = x + y
    assert total.jump_times.tolist() == [0.3, 0.6]
    assert total.eval(0.7)[0] == 1.0
    assert (x - x) == StepPath.constant(0.0, 1.0)
    assert (2.0 * x).eval(0.4)[0] == 2.0
    assert (-x).eval(0.4)[0] == -1.0

    with pytest.raises(PathMismatchError):
        x + StepPath.constant(0.0, 2.0)


def test_variation_and_running_sup():
    path = StepPath(0.0, [0.2, 0.4, 0.8], [1.0, -2.0, 0.5], horizon=1.0)

    assert path.total_variation() == pytest.approx(1.0 + 3.0 + 2.5)
    assert path.total_variation(0.5) == pytest.approx(4.0)
    assert path.variation_between(0.3, 1.0) == pytest.approx(5.5)
    assert path.running_sup(0.3) == 1.0
    assert path.running_sup() == 2.0
    assert path.sup_norm(0.5, 1.0) == 2.0


def test_completed_graph_inserts_vertical_segments():
    graph = StepPath.indicator(0.5, 1.0).completed_graph()

    np.testing.assert_array_equal(
        graph.vertices, [[0.0, 0.0], [0.5, 0.0], [0.5, 1.0], [1.0, 1.0]]
    )
    assert [segment.is_vertical for segment in graph.segments()] == [False, True, False]


def test_tabulate_stack_and_truncate():
    path = StepPath.tabulate(1.0, [0.25, 0.5, 2.0], lambda t: 4 * t)
    assert path.jump_times.tolist() == [0.25, 0.5]
    assert path.eval(0.3)[0] == 1.0

    stacked = StepPath.stack([StepPath.indicator(0.5, 1.0), StepPath.indicator(0.7, 1.0)])
    assert stacked.dimension == 2
    np.testing.assert_array_equal(stacked.eval(0.6), [1.0, 0.0])
    assert stacked.coordinate(1) == StepPath.indicator(0.7, 1.0)

    truncated = StepPath(0.0, [0.2, 0.6], [1.0, 3.0], horizon=1.0).truncate(0.5)
    assert truncated.eval(1.0)[0] == 1.0


@settings(max_examples=50, deadline=None)
@given(step_paths(max_jumps=6))
def test_increments_rebuild_the_path(path):
    rebuilt = StepPath.from_increments(
        path.initial_value, path.jump_times, path.jump_sizes, path.horizon
    )

    assert rebuilt.is_close(path, atol=1e-9)
    assert path.total_variation() == pytest.approx(np.abs(path.jump_sizes).sum())
