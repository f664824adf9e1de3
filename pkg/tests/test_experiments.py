import logging

import numpy as np
import pandas as pd
import pytest

from skorokhod_integrals.experiments import (
    CONDITION_COLUMNS,
    DECAY_COLUMNS,
    STUDY_COLUMNS,
    TRACE_COLUMNS,
    ConditionConfig,
    ConstructionConfig,
    EvalAt,
    ExperimentConfig,
    RunningSupAt,
    TotalVariationAt,
    draw,
    ks_statistic,
    replicate,
    run_condition_study,
    run_convergence_study,
    run_machinery_trace,
    run_metric_decay,
    write_table,
)
from skorokhod_integrals.scenarios import M1J1, AntiAVCI, Example11, Example21
from skorokhod_integrals.utils.exceptions import ConfigError, DomainError, GridError

AT_T = [EvalAt(2.0)]


def test_functional_names_and_values():
    pulse = Example21().sample_seeded(10).integral

    assert EvalAt(2.0).name == "eval_at(2)"
    assert RunningSupAt(1.5, coordinate=1).name == "running_sup_at(1.5)[1]"
    assert EvalAt(0.8)(pulse) == 0.5
    assert RunningSupAt(2.0)(pulse) == 0.5
    assert TotalVariationAt(2.0)(pulse) == 1.0
    with pytest.raises(DomainError):
        EvalAt(-1.0)
    with pytest.raises(DomainError):
        EvalAt(1.0, coordinate=1)(pulse)


@pytest.mark.parametrize(
    "params",
    [
        {"indices": []},
        {"indices": [10, 10]},
        {"indices": [3, 10]},
        {"indices": [10], "reps": 0},
        {"indices": [10], "chunk_size": 0},
        {"indices": [10], "seed": -1},
    ],
)
def test_invalid_experiment_configs(params):
    with pytest.raises(ConfigError):
        ExperimentConfig(Example11(), **params)


@pytest.mark.parametrize("functionals", [[EvalAt(1.0)], [EvalAt(3.0)], []])
def test_functionals_must_avoid_limit_discontinuities(functionals):
    cfg = ExperimentConfig(Example11(), [10], reps=2, functionals=functionals)

    with pytest.raises(ConfigError):
        run_convergence_study(cfg)


def test_replication_streams_do_not_depend_on_the_index():
    scenario = Example11(p=0.5)
    for r in range(10):
        coarse, fine = draw(scenario, 10, 3, r), draw(scenario, 1000, 3, r)
        assert coarse.atom == fine.atom


def test_ks_statistic_of_a_mixture():
    law = Example11(p=0.5).limit()

    assert ks_statistic(np.array([3.0] * 5 + [1.0] * 5), law, AT_T[0]) == 0.0
    assert ks_statistic(np.full(10, 3.0), law, AT_T[0]) == pytest.approx(0.5)


def test_deterministic_limit_has_no_gap():
    cfg = ExperimentConfig(Example11(p=1.0), [10, 100], reps=20, functionals=AT_T)

    frame = run_convergence_study(cfg)

    assert frame.columns.tolist() == STUDY_COLUMNS
    assert frame["gap"].tolist() == [0.0, 0.0]
    assert frame["estimate"].tolist() == [3.0, 3.0]
    assert frame["ks_stat"].isna().all()


def test_sign_reversing_integrand_has_no_gap():
    cfg = ExperimentConfig(M1J1(), [10, 100, 1000], reps=5, functionals=AT_T)

    frame = run_convergence_study(cfg)

    assert frame["limit_value"].tolist() == [-1.0] * 3
    assert frame["gap"].tolist() == [0.0] * 3


def test_anti_avci_gap_shrinks():
    cfg = ExperimentConfig(AntiAVCI(), [10, 100, 1000], reps=10, functionals=AT_T, seed=4)

    gaps = run_convergence_study(cfg)["gap"].to_numpy()

    np.testing.assert_allclose(gaps, [0.3, 0.03, 0.003], rtol=1e-9)
    assert np.all(np.diff(gaps) < 0)
    assert gaps[-1] < 0.05


def test_mixture_limit(tmp_path):
    cfg = ExperimentConfig(
        Example11(p=0.5),
        [1000],
        reps=2000,
        functionals=AT_T + [RunningSupAt(2.0)],
        seed=11,
        out=tmp_path / "mixture.csv",
    )

    frame = run_convergence_study(cfg)

    assert frame["limit_value"].tolist() == [2.0, 2.0]
    assert (frame["ks_stat"] < 0.05).all()
    assert (frame["gap"] < 0.1).all()
    lines = (tmp_path / "mixture.csv").read_text().splitlines()
    assert lines[0] == "# scenario=example_1_1"
    assert lines[1].startswith("# ks_stat compares")
    assert lines[2] == ",".join(STUDY_COLUMNS)


@pytest.mark.parametrize("p", [0.5, 0.3])
def test_frequency_of_the_upper_value_matches_the_bernoulli_parameter(p):
    reps = 10_000
    cfg = ExperimentConfig(Example11(p=p), [1000], reps=reps, seed=13)

    values = np.array(replicate(lambda sample, r: sample.integral.eval(2.0)[0], cfg, 1000))

    assert set(np.unique(values)) <= {1.0, 3.0}
    assert abs(np.mean(values == 3.0) - p) <= 3 * np.sqrt(p * (1 - p) / reps)


@pytest.mark.slow
def test_mixture_limit_with_many_replications():
    cfg = ExperimentConfig(Example11(p=0.5), [1000], reps=10_000, functionals=AT_T, n_jobs=2)

    frame = run_convergence_study(cfg)

    assert frame["ks_stat"].iloc[0] < 0.05


def test_output_does_not_depend_on_the_worker_count(tmp_path):
    tables = []
    for n_jobs in (1, 2):
        cfg = ExperimentConfig(
            Example11(p=0.3),
            [10, 100],
            reps=40,
            functionals=AT_T,
            seed=5,
            n_jobs=n_jobs,
            chunk_size=7,
            out=tmp_path / f"jobs_{n_jobs}.csv",
        )
        run_convergence_study(cfg)
        tables.append((tmp_path / f"jobs_{n_jobs}.csv").read_bytes())

    assert tables[0] == tables[1]


def test_j1_distance_decays():
    cfg = ExperimentConfig(Example11(p=1.0), [10, 20, 40, 80])

    frame = run_metric_decay(cfg)

    assert frame.columns.tolist() == DECAY_COLUMNS
    np.testing.assert_allclose(frame["d_j1"], [0.1, 0.05, 0.025, 0.0125], atol=1e-12)
    assert frame["j1_decay"].isna().tolist() == [True, False, False, False]
    assert frame["j1_decay"].iloc[1:].all()


def test_m1_distance_of_a_vanishing_pulse_does_not_decay(caplog):
    cfg = ExperimentConfig(Example21(), [10, 20, 40, 80])

    with caplog.at_level(logging.WARNING):
        frame = run_metric_decay(cfg)

    np.testing.assert_allclose(frame["d_m1"], 0.5, atol=2e-3)
    assert not frame["m1_decay"].iloc[1:].any()
    assert "does not decay" in caplog.text


def test_write_table_formats_floats(tmp_path):
    frame = pd.DataFrame({"n": [10], "value": [1 / 3]})

    target = write_table(frame, tmp_path / "deep" / "t.csv", comments=["note"])

    assert target.read_text().splitlines() == ["# note", "n,value", "10,0.333333333333"]


def test_machinery_trace_on_an_integrand_jumping_first(tmp_path):
    cfg = ExperimentConfig(Example11(p=1.0), [100], reps=3, out=tmp_path / "trace.csv")

    report = run_machinery_trace(cfg, ConstructionConfig())

    assert report.table.columns.tolist() == TRACE_COLUMNS
    assert len(report.table) == 3
    assert report.event_A_frequency == 1.0
    assert report.bound_violations == 0
    assert report.max_reconstruction_error == 0.0
    np.testing.assert_allclose(report.table["tau"], 0.98)
    assert (report.table["Y"] == 1.0).all()
    assert (tmp_path / "trace.csv").exists()


def test_machinery_trace_rejects_a_grid_hitting_the_limit_jump():
    cfg = ExperimentConfig(Example11(p=1.0), [100])

    # the level-0 grid with offset 1/2 is {0, 1}
    with pytest.raises(GridError):
        run_machinery_trace(cfg, ConstructionConfig(level=0))
    with pytest.raises(ConfigError):
        ConstructionConfig(k=9)


def test_condition_study(tmp_path):
    cfg = ExperimentConfig(Example11(p=1.0), [10, 100], reps=20, out=tmp_path / "cond.csv")

    frame = run_condition_study(cfg, ConditionConfig(condition="r2", gamma=0.5, levels=3, k=1))

    assert frame.columns.tolist() == CONDITION_COLUMNS
    assert frame["frequency"].tolist() == [1.0, 1.0]
    assert (frame["condition"] == "r2").all()
    lines = (tmp_path / "cond.csv").read_text().splitlines()
    assert lines[0] == "# scenario=example_1_1"
    assert lines[3] == ",".join(CONDITION_COLUMNS)


@pytest.mark.parametrize(
    "params", [{"condition": "gd"}, {"delta": 0.0}, {"gamma": -1.0}, {"k": 9}, {"a1": 0.0}]
)
def test_invalid_condition_configs(params):
    with pytest.raises(ConfigError):
        ConditionConfig(**params)
