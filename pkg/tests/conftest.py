from typing import Callable, Sequence

import numpy as np
import pytest
from hydra import compose, initialize
from hydra.core.global_hydra import GlobalHydra
from hydra.core.hydra_config import HydraConfig
from hypothesis import strategies as st
from omegaconf import DictConfig, open_dict

from skorokhod_integrals import ENV_SKOROKHOD_HOME, setup_root
from skorokhod_integrals.cadlag import StepPath

CONFIG_PATH = "../skorokhod_integrals/configs"


def random_step_path(
    rng: np.random.Generator,
    max_jumps: int = 4,
    horizon: float = 1.0,
    dimension: int = 1,
    scale: float = 1.0,
) -> StepPath:
    """Path with up to `max_jumps` jumps at distinct times of the 1/100 grid inside (0, T)."""
    count = int(rng.integers(0, max_jumps + 1))
    times = np.sort(rng.choice(np.arange(1, 100), size=count, replace=False)) / 100 * horizon
    values = rng.uniform(-scale, scale, size=(count, dimension))
    return StepPath(rng.uniform(-scale, scale, dimension), times, values, horizon=horizon)


@st.composite
def step_paths(draw, max_jumps: int = 4, horizon: float = 1.0, dimension: int = 1) -> StepPath:
    count = draw(st.integers(0, max_jumps))
    ticks = draw(st.lists(st.integers(1, 99), min_size=count, max_size=count, unique=True))
    value = st.integers(-8, 8).map(lambda k: k / 4)
    rows = draw(
        st.lists(
            st.lists(value, min_size=dimension, max_size=dimension),
            min_size=count + 1,
            max_size=count + 1,
        )
    )
    times = np.sort(np.array(ticks, dtype=float)) / 100 * horizon
    return StepPath(rows[0], times, np.array(rows[1:]).reshape(count, dimension), horizon=horizon)


def compose_config(config_name: str, output_dir, overrides: Sequence[str] = ()) -> DictConfig:
    """Composes a primary config the way `@hydra.main` would, writing outputs to `output_dir`."""
    GlobalHydra.instance().clear()
    with initialize(version_base="1.3", config_path=CONFIG_PATH):
        cfg = compose(config_name=config_name, return_hydra_config=True, overrides=list(overrides))

    with open_dict(cfg):
        cfg.paths.output_dir = str(output_dir)
        cfg.paths.log_dir = str(output_dir)
        cfg.extras.print_config = False
    HydraConfig().set_config(cfg)
    return cfg


@pytest.fixture
def compose_cfg(tmp_path, monkeypatch) -> Callable[..., DictConfig]:
    monkeypatch.setenv(ENV_SKOROKHOD_HOME, str(tmp_path))
    setup_root()

    def _compose(config_name: str, overrides: Sequence[str] = ()) -> DictConfig:
        return compose_config(config_name, tmp_path, overrides)

    yield _compose

    GlobalHydra.instance().clear()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240617)
