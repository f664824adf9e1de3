import warnings
from functools import wraps
from pathlib import Path
from typing import Callable, List, Union

from omegaconf import DictConfig, OmegaConf, open_dict

from skorokhod_integrals.utils import pylogger, rich_utils
from skorokhod_integrals.utils.exceptions import (
    ConfigError,
    DomainError,
    GridError,
    PathMismatchError,
    PreconditionError,
)

log = pylogger.get_pylogger(__name__)

INPUT_ERRORS = (DomainError, PathMismatchError, PreconditionError, GridError, ConfigError)


def task_wrapper(task_func: Callable) -> Callable:
    """Decorator around a runner's task function.

    Invalid inputs (paths, parameters, grids, configs) raise subclasses of `ValueError` from
    `utils.exceptions`. They are logged on one line, while anything else is logged with its
    traceback. Both are re-raised. The summary figures and the output directory are always
    reported.

    Example:
    ```
    @utils.task_wrapper
    def run_system(cfg: DictConfig) -> Tuple[dict, dict]:
        ...
        return metric_dict, object_dict
    ```
    """

    @wraps(task_func)
    def wrap(cfg: DictConfig):
        try:
            metric_dict, object_dict = task_func(cfg=cfg)
        except INPUT_ERRORS as ex:
            log.error(f"{type(ex).__name__}: {ex}")
            raise
        except Exception:
            log.exception("")
            raise
        finally:
            log.info(f"Output dir: {cfg.paths.output_dir}")

        for name, value in metric_dict.items():
            log.info(f"{name}: {value}")
        return metric_dict, object_dict

    return wrap


def extras(cfg: DictConfig) -> None:
    """Applies optional utilities before the task is started.

    Utilities:
    - Merging a flat `key=value` config file given as `config_file`
    - Ignoring python warnings
    - Rich config printing
    """

    if cfg.get("config_file"):
        log.info(f"Merging flat config file! <cfg.config_file={cfg.config_file}>")
        apply_flat_config(cfg, cfg.config_file)

    # return if no `extras` config
    if not cfg.get("extras"):
        log.warning("Extras config not found! <cfg.extras=null>")
        return

    # disable python warnings
    if cfg.extras.get("ignore_warnings"):
        log.info("Disabling python warnings! <cfg.extras.ignore_warnings=True>")
        warnings.filterwarnings("ignore")

    # pretty print config tree using Rich library
    if cfg.extras.get("print_config"):
        log.info("Printing config tree with Rich! <cfg.extras.print_config=True>")
        rich_utils.print_config_tree(cfg, resolve=True, save_to_file=True)


def read_flat_config(path: Union[str, Path]) -> List[str]:
    """Reads `key=value` lines, dropping blank lines and `#` comments."""
    dotlist = []
    for number, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{number}: expected `key=value`, got {raw!r}.")
        key, value = (part.strip() for part in line.split("=", 1))
        dotlist.append(f"{key}={value}")
    return dotlist


def apply_flat_config(cfg: DictConfig, path: Union[str, Path]) -> DictConfig:
    """Merges a flat `key=value` config file into a composed config, in place.

    - `scenario=<name>` replaces the scenario node with `configs/scenario/<name>.yaml`;
    - `n=<int>` runs a single index, i.e. sets `indices=[n]`;
    - keys present on the scenario node set scenario parameters;
    - any other key updates the top level of the config.
    """
    from skorokhod_integrals import get_root

    flat = OmegaConf.from_dotlist(read_flat_config(path))

    with open_dict(cfg):
        if "scenario" in flat:
            scenario_file = get_root() / "configs" / "scenario" / f"{flat.scenario}.yaml"
            if not scenario_file.exists():
                raise ConfigError(f"Unknown scenario <{flat.scenario}> in {path}.")
            cfg.scenario = OmegaConf.load(scenario_file)

        for key, value in flat.items():
            if key == "scenario":
                continue
            if key == "n":
                cfg.indices = [value]
            elif cfg.get("scenario") is not None and key in cfg.scenario:
                cfg.scenario[key] = value
            else:
                OmegaConf.update(cfg, key, value, force_add=True)

    return cfg


def show_table(cfg: DictConfig, frame, title: str) -> None:
    """Prints a result table unless `extras.print_tables` is off."""
    if cfg.get("extras") and cfg.extras.get("print_tables"):
        rich_utils.print_table(frame, title=title)
