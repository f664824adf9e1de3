import pandas as pd
import pytest

from skorokhod_integrals.cadlag import StepPath, read_path_csv, write_path_csv
from skorokhod_integrals.construct import SkorokhodConstructRunner
from skorokhod_integrals.integrate import SkorokhodIntegrateRunner
from skorokhod_integrals.metric import SkorokhodMetricRunner
from skorokhod_integrals.scenarios import example_1_1
from skorokhod_integrals.study import SkorokhodStudyRunner
from skorokhod_integrals.trace import SkorokhodTraceRunner
from skorokhod_integrals.utils.exceptions import ConfigError

AT_T_ONLY = ["functionals.running_sup=null", "functionals.total_variation=null"]


@pytest.fixture
def acceptance_files(tmp_path):
    H, X = example_1_1(100, 1.0)
    return write_path_csv(H, tmp_path / "h.csv"), write_path_csv(X, tmp_path / "x.csv")


def test_convergence_study(compose_cfg, tmp_path):
    cfg = compose_cfg("study", ["scenario.p=1.0", "indices=[10,100]", "reps=5", *AT_T_ONLY])

    metric_dict, object_dict = SkorokhodStudyRunner.run_system(cfg)

    assert metric_dict == {"max_gap": 0.0}
    assert len(object_dict["table"]) == 2
    assert (tmp_path / "study.csv").exists()
    assert (tmp_path / "run_parameters.yaml").exists()


def test_decay_experiment(compose_cfg, tmp_path):
    cfg = compose_cfg("study", ["experiment=j1_decay"])

    metric_dict, object_dict = SkorokhodStudyRunner.run_system(cfg)

    assert metric_dict["last_d_j1"] == pytest.approx(1 / 80)
    assert object_dict["table"]["n"].tolist() == [10, 20, 40, 80]
    assert (tmp_path / "j1_decay.csv").exists()


@pytest.mark.parametrize("k, frequency", [(1, 1.0), (2, 0.0)])
def test_condition_study(compose_cfg, tmp_path, k, frequency):
    overrides = ["study=conditions", "indices=[10,100]", "reps=10", "condition.condition=r2"]
    cfg = compose_cfg("study", [*overrides, "condition.levels=3", f"condition.k={k}"])

    metric_dict, object_dict = SkorokhodStudyRunner.run_system(cfg)

    assert metric_dict == {"last_frequency": frequency}
    assert object_dict["condition"].k == k
    assert (tmp_path / "study.csv").exists()


def test_unknown_study(compose_cfg):
    cfg = compose_cfg("study", ["study=bogus"])

    with pytest.raises(ConfigError):
        SkorokhodStudyRunner.run_system(cfg)


def test_flat_config_file(compose_cfg, tmp_path):
    flat = tmp_path / "run.cfg"
    flat.write_text("# sign-reversing integrand\nscenario=m1_j1\nn=10\n\nreps=3  # few\nseed=7\n")
    cfg = compose_cfg("study", [f"config_file={flat}"])

    metric_dict, object_dict = SkorokhodStudyRunner.run_system(cfg)

    assert object_dict["scenario"].name == "m1_j1"
    assert object_dict["experiment"].indices == [10]
    assert object_dict["experiment"].reps == 3
    assert object_dict["experiment"].seed == 7
    assert metric_dict["max_gap"] == 0.0


@pytest.mark.parametrize("text", ["reps\n", "scenario=brownian\n", "n=3\n"])
def test_invalid_flat_config_files(compose_cfg, tmp_path, text):
    flat = tmp_path / "bad.cfg"
    flat.write_text(text)
    cfg = compose_cfg("study", [f"config_file={flat}", "reps=2"])

    with pytest.raises(ConfigError):
        SkorokhodStudyRunner.run_system(cfg)


@pytest.mark.parametrize("kind, expected", [("j1", 0.1), ("m1", 0.1)])
def test_metric(compose_cfg, tmp_path, capsys, kind, expected):
    x = write_path_csv(StepPath.indicator(0.5, 1.0), tmp_path / "a.csv")
    y = write_path_csv(StepPath.indicator(0.6, 1.0), tmp_path / "b.csv")
    cfg = compose_cfg("metric", [f"x={x}", f"y={y}", f"kind={kind}"])

    metric_dict, _ = SkorokhodMetricRunner.run_system(cfg)

    assert metric_dict[f"d_{kind}"] == pytest.approx(expected, abs=1e-3)
    assert capsys.readouterr().out.strip().splitlines()[-1].startswith("0.1")


def test_unknown_metric(compose_cfg, tmp_path):
    x = write_path_csv(StepPath.indicator(0.5, 1.0), tmp_path / "a.csv")
    cfg = compose_cfg("metric", [f"x={x}", f"y={x}", "kind=d1"])

    with pytest.raises(ConfigError):
        SkorokhodMetricRunner.run_system(cfg)


@pytest.mark.parametrize("overrides, terminal", [([], 1.0), (["correction_weights=1.0"], 3.0)])
def test_integrate(compose_cfg, tmp_path, overrides, terminal):
    H = write_path_csv(StepPath.indicator(1.0, 2.0, height=2.0, base=1.0), tmp_path / "h.csv")
    X = write_path_csv(StepPath.indicator(1.0, 2.0), tmp_path / "x.csv")
    cfg = compose_cfg("integrate", [f"H={H}", f"X={X}", *overrides])

    metric_dict, _ = SkorokhodIntegrateRunner.run_system(cfg)

    assert metric_dict == {"terminal_value_1": terminal}
    written = read_path_csv(tmp_path / "integrate.csv")
    assert written == StepPath.indicator(1.0, 2.0, height=terminal)


def test_trace(compose_cfg, tmp_path):
    cfg = compose_cfg("trace", ["experiment=machinery", "reps=3"])

    metric_dict, object_dict = SkorokhodTraceRunner.run_system(cfg)

    assert metric_dict == {
        "event_A_frequency": 1.0,
        "bound_violations": 0,
        "max_reconstruction_error": 0.0,
    }
    assert len(object_dict["report"].table) == 3
    assert (tmp_path / "machinery.csv").exists()


def test_construct_windows(compose_cfg, tmp_path, acceptance_files):
    H, _ = acceptance_files
    cfg = compose_cfg("construct", [f"H={H}", "op=windows"])

    metric_dict, _ = SkorokhodConstructRunner.run_system(cfg)

    assert metric_dict == {"windows": 1}
    frame = pd.read_csv(tmp_path / "construct.csv")
    assert frame["tau"].tolist() == pytest.approx([0.98])
    assert frame["rho"].tolist() == [0.984375]


def test_construct_corrected(compose_cfg, tmp_path, acceptance_files):
    H, _ = acceptance_files
    target = tmp_path / "corrected.csv"
    cfg = compose_cfg("construct", [f"H={H}", "op=corrected", f"out={target}"])

    SkorokhodConstructRunner.run_system(cfg)

    corrected = read_path_csv(target)
    assert corrected.jump_times.tolist() == pytest.approx([0.98, 0.984375])
    assert corrected.eval(0.981)[0] == 2.0
    assert corrected.eval(1.0)[0] == 0.0


@pytest.mark.parametrize("tail", ["A", "B", "adapted"])
def test_construct_bridge(compose_cfg, tmp_path, tail):
    x = write_path_csv(StepPath.indicator(1.0, 2.0), tmp_path / "x.csv")
    cfg = compose_cfg("construct", [f"H={x}", "op=bridge", "t1=0.5", "t2=1.5", f"tail={tail}"])

    metric_dict, _ = SkorokhodConstructRunner.run_system(cfg)

    assert metric_dict == {"steps": 1}
    assert read_path_csv(tmp_path / "construct.csv") == StepPath.indicator(1.0, 2.0)


def test_construct_split(compose_cfg, tmp_path, acceptance_files):
    H, X = acceptance_files
    cfg = compose_cfg("construct", [f"H={H}", f"X={X}", "op=split"])

    metric_dict, _ = SkorokhodConstructRunner.run_system(cfg)

    assert metric_dict == {
        "windows": 1,
        "bound_violations": 0,
        "max_reconstruction_error": 0.0,
        "max_term1": 0.0,
    }
    frame = pd.read_csv(tmp_path / "construct.csv")
    assert frame["Y"].tolist() == [1.0]


@pytest.mark.parametrize("overrides", [["op=sweep"], ["op=split"]])
def test_construct_rejects_bad_requests(compose_cfg, acceptance_files, overrides):
    H, _ = acceptance_files
    cfg = compose_cfg("construct", [f"H={H}", *overrides])

    with pytest.raises(ConfigError):
        SkorokhodConstructRunner.run_system(cfg)
