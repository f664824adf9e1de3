"""CSV files holding step paths.

Format: header `t,v1,...,vd`; the first row has t=0 and holds the initial value; every
following row is a jump (time, post-jump value); a final comment line `# T=<horizon>` fixes
the horizon.
"""
import io
import re
from pathlib import Path
from typing import Union

import pandas as pd

from skorokhod_integrals.cadlag.step_path import StepPath
from skorokhod_integrals.utils.exceptions import DomainError

_HORIZON_LINE = re.compile(r"^#\s*T\s*=\s*(?P<horizon>\S+)\s*$")


def path_to_frame(path: StepPath) -> pd.DataFrame:
    """Tabulates a path as the rows of its CSV representation."""
    columns = ["t"] + [f"v{i + 1}" for i in range(path.dimension)]
    rows = [[0.0, *path.initial_value]]
    rows.extend([time, *value] for time, value in zip(path.jump_times, path.jump_values))
    return pd.DataFrame(rows, columns=columns)


def write_path_csv(path: StepPath, target: Union[str, Path]) -> Path:
    """Writes a path to `target` and returns the written file path."""
    target = Path(target)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", newline="") as file:
        path_to_frame(path).to_csv(file, index=False, float_format="%.17g")
        file.write(f"# T={path.horizon!r}\n")
    return target


def read_path_csv(source: Union[str, Path]) -> StepPath:
    """Reads a path written in the CSV path format.

    Raises:
        DomainError: If the horizon line is missing or the first row is not at t=0.
    """
    text = Path(source).read_text()
    horizon = None
    body = []
    for line in text.splitlines():
        match = _HORIZON_LINE.match(line.strip())
        if match:
            horizon = float(match.group("horizon"))
        elif line.strip() and not line.lstrip().startswith("#"):
            body.append(line)

    if horizon is None:
        raise DomainError(f"Missing `# T=<horizon>` line in {source}.")

    frame = pd.read_csv(io.StringIO("\n".join(body)))
    if frame.empty or frame.columns[0] != "t":
        raise DomainError(f"Expected a header `t,v1,...` and an initial row in {source}.")
    if frame["t"].iloc[0] != 0:
        raise DomainError(f"The first row of {source} must be at t=0.")

    values = frame.drop(columns="t").to_numpy(dtype=float)
    times = frame["t"].to_numpy(dtype=float)
    return StepPath(values[0], times[1:], values[1:], horizon=horizon)
