import numpy as np
import pytest

from skorokhod_integrals.cadlag import StepPath
from skorokhod_integrals.constructions import ThresholdLadder
from skorokhod_integrals.integration import ito_integral
from skorokhod_integrals.metrics import d_M1
from skorokhod_integrals.scenarios import (
    M1J1,
    SCENARIOS,
    AntiAVCI,
    Condition,
    Example11,
    Example21,
    LimitAtom,
    LimitLaw,
    anti_avci_scenario,
    build_scenario,
    check_index,
    check_R1,
    check_R2_tail,
    empirical_condition,
    example_1_1,
    m1_j1_scenario,
)
from skorokhod_integrals.utils.exceptions import ConfigError, DomainError


def terminal(path: StepPath) -> float:
    return float(path.eval(path.horizon)[0])


def test_registry():
    assert sorted(SCENARIOS) == ["anti_avci", "example_1_1", "example_2_1", "m1_j1"]
    assert build_scenario("example_1_1", p=0.3).p == 0.3
    with pytest.raises(ConfigError):
        build_scenario("brownian")


def test_invalid_indices_and_parameters():
    with pytest.raises(DomainError):
        check_index(3)
    with pytest.raises(DomainError):
        example_1_1(10, p=1.5)
    with pytest.raises(DomainError):
        Example11(horizon=1.0)


def test_example_1_1_sample_is_coupled_to_its_atom():
    scenario = Example11(p=0.5)
    for seed in range(20):
        sample = scenario.sample_seeded(10, seed)
        before = sample.H.jump_times[0] < sample.X.jump_times[0]

        assert sample.atom == (0 if before else 1)
        assert terminal(sample.integral) == (3.0 if before else 1.0)
        assert sample.decomposition.X == sample.X
        assert scenario.sample_seeded(10, seed).H == sample.H


def test_mixture_law():
    law = Example11(p=0.5).limit()
    functional = terminal

    np.testing.assert_array_equal(law.values(functional), [3.0, 1.0])
    np.testing.assert_allclose(law.cdf(functional, [0.5, 2.0, 3.0]), [0.0, 0.5, 1.0])
    assert law.expectation(functional) == pytest.approx(2.0)
    weights = law.empirical_weights([3.0, 3.0, 1.0, 2.9], functional)
    np.testing.assert_allclose(weights, [0.75, 0.25])
    assert len(Example11(p=1.0).limit()) == 1


def test_limit_law_rejects_bad_weights():
    H, X = Example11().limit().atoms[0].H, Example11().limit().atoms[0].X
    with pytest.raises(DomainError):
        LimitLaw((LimitAtom(0.5, H, X),))
    with pytest.raises(DomainError):
        LimitLaw(())


def test_discontinuities_and_limit_jumps():
    scenario = Example11(p=0.5)

    np.testing.assert_array_equal(scenario.discontinuities(), [1.0])
    np.testing.assert_array_equal(scenario.limit_jump_sizes(), [2.0, 2.0])


def test_m1_j1_integrals_match_the_corrected_limit():
    for n in (10, 100, 1000):
        assert terminal(ito_integral(*m1_j1_scenario(n))) == -1.0
    assert terminal(M1J1().limit().atoms[0].integral) == -1.0


def test_anti_avci_integrals_approach_the_full_correction():
    limit = terminal(AntiAVCI().limit().atoms[0].integral)
    assert limit == 3.0
    for n in (10, 100, 1000):
        H, X = anti_avci_scenario(n, seed=n)
        assert 1 - 2 / n < H.jump_times[0] < X.jump_times[0] == 1 - 1 / n
        assert terminal(ito_integral(H, X)) - limit == pytest.approx(3 / n)


def test_example_2_1_integrals_stay_away_in_m1():
    zero = StepPath.constant(0.0, 2.0)
    for n in (10, 100, 1000):
        integral = Example21().sample_seeded(n, 0).integral
        assert d_M1(integral, zero) == pytest.approx(0.5, abs=2e-3)
    assert terminal(Example21().limit().atoms[0].integral) == 0.0


def test_sign_condition_on_the_limits():
    mixture = Example11().limit().atoms[0]
    reversing = Example21().limit().atoms[0]

    assert check_R1(mixture.H, mixture.X)
    assert not check_R1(reversing.H, reversing.X)


def test_tail_of_the_jump_products():
    atom = Example11().limit().atoms[0]
    ladder = ThresholdLadder.geometric(1.0, 3)

    assert check_R2_tail(atom.H, atom.X, ladder, k=1) == 2.0
    assert check_R2_tail(atom.H, atom.X, ladder, k=2) == 0.0

    H = StepPath(0.0, [0.5, 1.5], [2.0, 2.3], horizon=2.0)
    X = StepPath(0.0, [0.5, 1.5], [1.0, 2.0], horizon=2.0)
    coarse = ThresholdLadder(np.array([1.0, 0.1]))
    assert check_R2_tail(H, X, coarse, k=2) == pytest.approx(0.3)
    assert check_R2_tail(H, X, coarse, k=2, horizon=1.0) == 0.0
    with pytest.raises(DomainError):
        check_R2_tail(H, X, coarse, k=0)


@pytest.mark.parametrize(
    "scenario, condition, delta, expected",
    [
        (Example11(p=1.0), Condition.AVCI, 0.2, 1.0),
        (Example11(p=0.0), Condition.AVCI, 0.05, 0.0),
        (AntiAVCI(), Condition.ANTI_AVCI, 0.2, 0.0),
        (AntiAVCI(), Condition.AVCI, 0.2, 1.0),
    ],
)
def test_empirical_condition(scenario, condition, delta, expected):
    frequency = empirical_condition(scenario, condition, delta, gamma=0.5, n=10, reps=200, seed=1)

    assert frequency == expected


def test_empirical_condition_needs_replications():
    with pytest.raises(DomainError):
        empirical_condition(Example11(), Condition.AVCI, 0.1, 0.5, n=10, reps=0, seed=0)


@pytest.mark.parametrize("p", [1.0, 0.5, 0.0])
@pytest.mark.parametrize("k, expected", [(1, 1.0), (2, 0.0)])
def test_r2_frequency_on_the_coupled_limit(p, k, expected):
    # the limit integrand jumps by 2, inside the band of level 1 only
    ladder = ThresholdLadder.geometric(1.0, 3)

    frequency = empirical_condition(
        Example11(p=p), Condition.R2, 0.1, gamma=0.5, n=10, reps=50, seed=2, ladder=ladder, k=k
    )

    assert frequency == expected


def test_r2_frequency_needs_a_ladder():
    with pytest.raises(DomainError):
        empirical_condition(Example11(), Condition.R2, 0.1, 0.5, n=10, reps=5, seed=0)
