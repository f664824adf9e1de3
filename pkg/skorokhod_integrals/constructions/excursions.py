"""Large-increment stopping times, their grid windows and the corrected integrand."""
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Tuple

import numpy as np

from skorokhod_integrals.cadlag import StepPath
from skorokhod_integrals.constructions.grid import PartitionGrid, grid_ceil, grid_floor
from skorokhod_integrals.metrics.moduli import varsigma
from skorokhod_integrals.utils.exceptions import DomainError, GridError
from skorokhod_integrals.utils.pylogger import get_pylogger

log = get_pylogger(__name__)


class Window(NamedTuple):
    """Excursion window [τ, ρ) of a large increment.

    `ceiling` is ⌈τ⌉_Θ (infinite when the grid ends before it), `rho` = min(⌈τ⌉_Θ, T) and
    `floor` = ⌊τ⌋_Θ.
    """

    tau: float
    rho: float
    floor: float
    ceiling: float

    def active(self, t: float) -> bool:
        """Whether τ ≤ t < ⌈τ⌉ (the window is closed at T when it was cut there)."""
        return self.tau <= t < self.ceiling

    @property
    def length(self) -> float:
        return self.rho - self.floor


@dataclass(frozen=True)
class ExcursionWindows:
    """Ordered windows ρ_{j−1} ≤ τ_j < ρ_j generated by threshold `a_k` and `grid`."""

    windows: Tuple[Window, ...]
    threshold: float
    grid: PartitionGrid
    horizon: float
    k: Optional[int] = None
    level: Optional[int] = None

    def __iter__(self) -> Iterator[Window]:
        return iter(self.windows)

    def __len__(self) -> int:
        return len(self.windows)

    def __getitem__(self, index: int) -> Window:
        return self.windows[index]

    @property
    def taus(self) -> np.ndarray:
        return np.array([w.tau for w in self.windows])

    def containing(self, t: float) -> Optional[Window]:
        """The window active at `t`, if any."""
        for window in self.windows:
            if window.active(t):
                return window
        return None


def excursion_windows(
    H: StepPath,
    a_k: float,
    grid: PartitionGrid,
    k: Optional[int] = None,
    level: Optional[int] = None,
) -> ExcursionWindows:
    """Greedy scan for the stopping times τ_j and their grid ceilings ρ_j.

    τ_j is the first t > ρ_{j−1} at which some coordinate of H has an increment exceeding `a_k`
    over [ρ_{j−1} ∨ (t − |Θ|), t]; ρ_j = ⌈τ_j⌉_Θ, cut at T when the grid ends first.

    Args:
        H: Integrand.
        a_k: Threshold a_k > 0.
        grid: Partition Θ.
        k: Ladder index, recorded on the result.
        level: Grid level ℓ, recorded on the result.

    Returns:
        The windows, in time order.
    """
    if not a_k > 0:
        raise DomainError(f"Threshold must be > 0, got {a_k}.")
    horizon = H.horizon
    windows = []
    rho = 0.0
    while rho < horizon:
        tau = varsigma(H, a_k, rho, grid.mesh)
        if tau > horizon:
            break
        try:
            ceiling = grid_ceil(grid, tau)
        except GridError:
            ceiling = np.inf
        rho = min(ceiling, horizon)
        windows.append(Window(tau, rho, grid_floor(grid, tau), ceiling))

    log.debug(f"{len(windows)} excursion windows above a_k={a_k:.6g} on mesh {grid.mesh:.6g}.")
    return ExcursionWindows(tuple(windows), a_k, grid, horizon, k, level)


def corrected_integrand(H: StepPath, windows: ExcursionWindows) -> Tuple[StepPath, StepPath]:
    """H̃ = H − H_{τ_j−} on every window [τ_j, ρ_j) and 0 elsewhere.

    Returns:
        The pair (H̃, H − H̃); the second path freezes H at H_{τ_j−} inside each window and
        agrees with H at every grid point.
    """
    if windows.horizon != H.horizon:
        raise DomainError("Windows were generated on a different horizon.")
    anchors = {w.tau: H.left_limit(w.tau) for w in windows}
    breakpoints = np.concatenate(
        [H.jump_times, [w.tau for w in windows], [w.ceiling for w in windows]]
    )

    def value(t: float) -> np.ndarray:
        window = windows.containing(t)
        if window is None:
            return np.zeros(H.dimension)
        return H.eval(t) - anchors[window.tau]

    corrected = StepPath.tabulate(H.horizon, breakpoints, value)
    return corrected, H - corrected
