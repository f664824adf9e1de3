from pathlib import Path
from typing import Sequence

import pandas as pd
import rich
import rich.syntax
import rich.table
import rich.tree
from omegaconf import DictConfig, OmegaConf

from skorokhod_integrals.utils import pylogger

log = pylogger.get_pylogger(__name__)


@pylogger.main_process_only
def print_config_tree(
    cfg: DictConfig,
    groups: Sequence[str] = (
        "scenario",
        "functionals",
        "condition",
        "metric",
        "construction",
        "paths",
    ),
    resolve: bool = False,
    save_to_file: bool = False,
) -> None:
    """Prints the composed config as a Rich tree.

    Config groups come first, in the order of `groups`. Top-level scalars (indices, reps, seed,
    input paths...) are gathered under a single `run` branch.

    Args:
        cfg (DictConfig): Configuration composed by Hydra.
        groups (Sequence[str], optional): Config groups printed first, in this order.
        resolve (bool, optional): Whether to resolve interpolations.
        save_to_file (bool, optional): Whether to also write the tree to `config_tree.log`.
    """
    style = "dim"
    tree = rich.tree.Tree("CONFIG", style=style, guide_style=style)

    content = OmegaConf.to_container(cfg, resolve=resolve)
    present = [group for group in groups if group in content]
    log.debug(f"Config groups absent from this run: {sorted(set(groups) - set(present))}")
    nested = present + [k for k, v in content.items() if isinstance(v, dict) and k not in present]
    scalars = {k: v for k, v in content.items() if k not in nested}

    for key in nested:
        yaml = OmegaConf.to_yaml(content[key])
        tree.add(key, style=style, guide_style=style).add(rich.syntax.Syntax(yaml, "yaml"))
    if scalars:
        yaml = OmegaConf.to_yaml(scalars)
        tree.add("run", style=style, guide_style=style).add(rich.syntax.Syntax(yaml, "yaml"))

    rich.print(tree)

    if save_to_file:
        with open(Path(cfg.paths.output_dir, "config_tree.log"), "w") as file:
            rich.print(tree, file=file)


@pylogger.main_process_only
def print_table(frame: pd.DataFrame, title: str = None, float_digits: int = 6) -> None:
    """Prints a result table using Rich."""
    table = rich.table.Table(title=title)
    for column in frame.columns:
        table.add_column(str(column), justify="right")
    for row in frame.itertuples(index=False):
        cells = (f"{v:.{float_digits}g}" if isinstance(v, float) else str(v) for v in row)
        table.add_row(*cells)
    rich.print(table)
