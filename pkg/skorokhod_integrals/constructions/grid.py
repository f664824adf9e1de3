from dataclasses import dataclass
from typing import Sequence

import numpy as np

from skorokhod_integrals.utils.exceptions import GridError

# Tolerance of grid membership and Disc collision tests.
GRID_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PartitionGrid:
    """Finite partition Θ = {0 = ν_1 < ν_2 < ...} of the time axis.

    Args:
        points: Strictly increasing grid points starting at 0.
    """

    points: np.ndarray

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float).reshape(-1)
        if points.size < 2:
            raise GridError("A partition grid needs at least two points.")
        if points[0] != 0.0:
            raise GridError(f"A partition grid starts at 0, got {points[0]}.")
        if np.any(np.diff(points) <= 0):
            raise GridError("Grid points must be strictly increasing.")
        points.flags.writeable = False
        object.__setattr__(self, "points", points)

    @classmethod
    def uniform(cls, points: Sequence[float]) -> "PartitionGrid":
        """Grid from explicit points."""
        return cls(np.asarray(points, dtype=float))

    @classmethod
    def dyadic(
        cls,
        level: int,
        horizon: float,
        offset_fraction: float = 0.5,
        disc: Sequence[float] = (),
    ) -> "PartitionGrid":
        """Shifted dyadic grid {0} ∪ {o + k·h} ∩ [0, T] with h = 2^−level·T and o = offset·h.

        Args:
            level: Refinement level ℓ ≥ 0.
            horizon: Time horizon T.
            offset_fraction: Shift of the dyadic points in units of h, in (0, 1).
            disc: Known fixed discontinuity times the grid has to avoid.

        Raises:
            GridError: If a grid point hits `disc` or the mesh equals a difference of two
                discontinuity times.
        """
        if level < 0 or not 0 < offset_fraction < 1:
            raise GridError(f"Invalid dyadic grid: level={level}, offset={offset_fraction}.")
        step = horizon * 2.0**-level
        shifted = offset_fraction * step + step * np.arange(2**level)
        grid = cls(np.concatenate(([0.0], shifted[shifted <= horizon + GRID_TOL])))
        grid.validate_against(disc)
        return grid

    @property
    def mesh(self) -> float:
        """|Θ|, the largest gap."""
        return float(np.diff(self.points).max())

    @property
    def min_gap(self) -> float:
        """|Θ|↓, the smallest gap."""
        return float(np.diff(self.points).min())

    def contains(self, x: float) -> bool:
        return bool(np.any(np.abs(self.points - x) <= GRID_TOL))

    def validate_against(self, disc: Sequence[float]) -> None:
        """Checks Θ ∩ Disc = ∅ and |Θ| ∉ {|x − y| : x, y ∈ Disc}."""
        disc = np.asarray(disc, dtype=float).reshape(-1)
        if not disc.size:
            return
        hits = disc[np.abs(disc[:, None] - self.points[None, :]).min(axis=1) <= GRID_TOL]
        if hits.size:
            raise GridError(f"Grid points coincide with discontinuities {hits.tolist()}.")
        differences = np.abs(disc[:, None] - disc[None, :])
        if np.any(np.abs(differences - self.mesh) <= GRID_TOL):
            raise GridError(f"Mesh {self.mesh} equals a difference of discontinuity times.")

    def __len__(self) -> int:
        return self.points.size


def grid_ceil(grid: PartitionGrid, x: float) -> float:
    """⌈x⌉_Θ: the smallest grid point ≥ x, or > x when x itself is a grid point.

    Raises:
        GridError: If no such grid point exists.
    """
    target = x + grid.min_gap / 2 if grid.contains(x) else x
    above = grid.points[grid.points >= target]
    if x < 0 or not above.size:
        raise GridError(f"No grid point above {x} (last point {grid.points[-1]}).")
    return float(above[0])


def grid_floor(grid: PartitionGrid, x: float) -> float:
    """⌊x⌋_Θ: the largest grid point ≤ x, or < x when x itself is a grid point.

    Raises:
        GridError: If no such grid point exists.
    """
    target = x - grid.min_gap / 2 if grid.contains(x) else x
    below = grid.points[grid.points <= target]
    if x > grid.points[-1] + grid.mesh or not below.size:
        raise GridError(f"No grid point below {x}.")
    return float(below[-1])
