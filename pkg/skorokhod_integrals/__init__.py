"""Step-path Skorokhod metrics, Stieltjes integrals and the excursion machinery behind M1 limits
of stochastic integrals."""
import os
from pathlib import Path

from dotenv import load_dotenv

__version__ = "0.1.0"

ENV_SKOROKHOD_HOME = "SKOROKHOD_INTEGRALS_HOME"
DEFAULT_CACHE_DIR = "~/.cache"


def get_root() -> Path:
    """Resolves the directory of the installed `skorokhod_integrals` package (holding `configs/`).

    Returns:
        Path to the package directory.
    """
    return Path(__file__).resolve().parent


def get_home() -> Path:
    """Resolves the home directory where runs without an explicit `out` store their tables.

    The `SKOROKHOD_INTEGRALS_HOME` variable (possibly set in a `.env` file) takes precedence over
    `$XDG_CACHE_HOME/skorokhod_integrals`.

    Returns:
        Path to the home directory.
    """
    load_dotenv()
    home = os.getenv(ENV_SKOROKHOD_HOME)
    if home is None:
        home = os.path.join(os.getenv("XDG_CACHE_HOME", DEFAULT_CACHE_DIR), "skorokhod_integrals")
    return Path(home).expanduser()


def setup_root(project_root_env_var: bool = True, dotenv: bool = True) -> Path:
    """Exports the package directory as `PROJECT_ROOT` for the Hydra `paths` config.

    Args:
        project_root_env_var: Whether to set the PROJECT_ROOT environment variable.
        dotenv: Whether to load a `.env` file first, so it can override `SKOROKHOD_INTEGRALS_HOME`.

    Raises:
        FileNotFoundError: If the package directory cannot be found.

    Returns:
        Path to the package directory.
    """
    root = get_root()
    if not root.is_dir():
        raise FileNotFoundError(f"Package root does not exist: {root}")

    if dotenv:
        load_dotenv()

    if project_root_env_var:
        os.environ["PROJECT_ROOT"] = str(root)
        os.environ.setdefault(ENV_SKOROKHOD_HOME, str(get_home()))

    return root
