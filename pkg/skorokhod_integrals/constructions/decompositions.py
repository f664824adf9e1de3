"""Window decompositions of integrator and corrected integrand, and the remainder split.

On a window [⌊τ⌋, ⌈τ⌉] the integrator is written as

    X_t = X_⌊τ⌋ + ξ_t ⊙ (X_⌈τ⌉ − X_⌊τ⌋) + φ_t

with a monotone ξ from :func:`build_bridge`, and the corrected integrand H̃ = H − H_{τ−} as

    H̃_t = (H_⌊τ⌋ − H_{τ−}) + ζ_t ⊙ (H_⌈τ⌉ − H_⌊τ⌋) + ψ_t        (bridge, looks ahead)
    H̃_t = ζ̂_t + ψ̂_t                                              (adapted step)

Multiplying out ∫ H̃_{s−} dX_s over (t∧τ, t∧ρ] gives five terms; the first carries the scaling
term Y = ∫ ζ_{s−} dξ_s and the other four are bounded by γ, a_k and the window variations.
The residual paths are defined on the whole horizon so the five terms add up to the window
integral exactly.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from skorokhod_integrals.cadlag import StepPath, check_compatible
from skorokhod_integrals.constructions.excursions import ExcursionWindows, Window
from skorokhod_integrals.constructions.monotone import (
    BridgeTail,
    MonotonePiece,
    build_adapted_step,
    build_bridge,
)
from skorokhod_integrals.integration.stieltjes import window_integral
from skorokhod_integrals.metrics.moduli import increment_count, w_prime
from skorokhod_integrals.utils.exceptions import DomainError, PreconditionError
from skorokhod_integrals.utils.pylogger import get_pylogger

log = get_pylogger(__name__)

_TOL = 1e-12
TERM_NAMES = ("term1", "term2", "term3", "term4", "term5")


def _require_small_modulus(path: StepPath, lo: float, hi: float, gamma: float, name: str):
    modulus = w_prime(path, hi - lo, horizon=hi, start=lo)
    if modulus > gamma / 2 + _TOL:
        raise PreconditionError(
            f"w'({name}) = {modulus:.6g} exceeds gamma/2 = {gamma / 2} on [{lo:.6g}, {hi:.6g}]."
        )


def _coordinatewise(pieces: Tuple[MonotonePiece, ...]) -> StepPath:
    return StepPath.stack([piece.path for piece in pieces])


@dataclass(frozen=True)
class IntegratorDecomposition:
    """X = X_lo + ξ ⊙ ΔX_grid + φ on [lo, hi]."""

    xi: StepPath
    phi: StepPath
    lo: float
    hi: float
    increment: np.ndarray

    @property
    def residual(self) -> float:
        return self.phi.sup_norm(self.lo, self.hi)


@dataclass(frozen=True)
class IntegrandDecomposition:
    """H − H_{τ−} = offset + ζ ⊙ ΔH_grid + ψ on [τ, hi]."""

    zeta: StepPath
    psi: StepPath
    offset: np.ndarray
    increment: np.ndarray
    tau: float
    hi: float

    @property
    def residual(self) -> float:
        return self.psi.sup_norm(self.tau, self.hi)


@dataclass(frozen=True)
class AdaptedIntegrandDecomposition:
    """H − H_{τ−} = ζ̂ + ψ̂ on [τ, hi), with ζ̂ built from the past only."""

    zeta_hat: StepPath
    psi_hat: StepPath
    tau: float
    hi: float

    @property
    def residual(self) -> float:
        """sup |ψ̂| over [τ, hi)."""
        times = np.concatenate(([self.tau], self.psi_hat.jump_times))
        times = times[(times >= self.tau) & (times < self.hi)]
        return float(np.abs(self.psi_hat.values_at(times)).max())


def decompose_integrator(
    X: StepPath, lo: float, hi: float, gamma: float, check: bool = True
) -> IntegratorDecomposition:
    """Splits X on the grid window [lo, hi] into a monotone interpolation and a residual.

    Raises:
        PreconditionError: If w′(X, hi − lo) > γ/2 on the window.
    """
    if check:
        _require_small_modulus(X, lo, hi, gamma, "X")
    pieces = tuple(
        build_bridge(X.coordinate(i), lo, hi, gamma, BridgeTail.TERMINAL)
        for i in range(X.dimension)
    )
    xi = _coordinatewise(pieces)
    increment = X.eval(hi) - X.eval(lo)
    phi = X - X.eval(lo) - xi * increment
    return IntegratorDecomposition(xi, phi, lo, hi, increment)


def decompose_integrand(
    H: StepPath, window: Window, gamma: float, check: bool = True
) -> IntegrandDecomposition:
    """Bridge decomposition of the corrected integrand on [τ, ρ], built on [⌊τ⌋, ρ].

    Raises:
        PreconditionError: If w′(H, ρ − ⌊τ⌋) > γ/2 on the window.
    """
    lo, hi = window.floor, window.rho
    if check:
        _require_small_modulus(H, lo, hi, gamma, "H")
    pieces = tuple(
        build_bridge(H.coordinate(i), lo, hi, gamma, BridgeTail.CUTOFF)
        for i in range(H.dimension)
    )
    zeta = _coordinatewise(pieces)
    increment = H.eval(hi) - H.eval(lo)
    offset = H.eval(lo) - H.left_limit(window.tau)
    psi = H - H.eval(lo) - zeta * increment
    return IntegrandDecomposition(zeta, psi, offset, increment, window.tau, hi)


def decompose_integrand_adapted(
    H: StepPath, window: Window, gamma: float, R: int, check: bool = True
) -> AdaptedIntegrandDecomposition:
    """Adapted decomposition of H − H_{τ−} on [τ, ρ].

    Raises:
        PreconditionError: If w′(H, ρ − τ) > γ/2 on the window or N_γ(H) ≥ R.
    """
    tau, hi = window.tau, window.rho
    if hi <= tau:
        raise DomainError(f"Degenerate window [{tau}, {hi}].")
    shifted = H - H.left_limit(tau)
    if check:
        _require_small_modulus(H, tau, hi, gamma, "H")
        count = increment_count(H, gamma)
        if count >= R:
            raise PreconditionError(f"N_gamma(H) = {count} is not below R = {R}.")
    pieces = tuple(
        build_adapted_step(shifted.coordinate(i), tau, hi, gamma) for i in range(H.dimension)
    )
    zeta_hat = _coordinatewise(pieces)
    return AdaptedIntegrandDecomposition(zeta_hat, shifted - zeta_hat, tau, hi)


def scaling_term_Y(zeta: StepPath, xi: StepPath, window: Window, t: float) -> np.ndarray:
    """Y_t = ∫ ζ_{s−} dξ_s over (t∧τ, t∧ρ]."""
    return window_integral(zeta, xi, min(t, window.tau), min(t, window.rho))


@dataclass(frozen=True)
class WindowTerms:
    """Five-term breakdown of one window integral at time t.

    `terms` has one row per term; `bounds` holds the magnitude bounds of terms 2 to 5.
    """

    window: Window
    terms: np.ndarray
    integral: np.ndarray
    bounds: np.ndarray
    scaling: np.ndarray

    @property
    def reconstruction_error(self) -> float:
        return float(np.abs(self.terms.sum(axis=0) - self.integral).max())

    @property
    def magnitudes(self) -> np.ndarray:
        return np.abs(self.terms).max(axis=1)

    @property
    def violations(self) -> Tuple[str, ...]:
        """Names of the terms 2 to 5 exceeding their bound."""
        exceeded = self.magnitudes[1:] > self.bounds + 1e-9
        return tuple(name for name, bad in zip(TERM_NAMES[1:], exceeded) if bad)


@dataclass(frozen=True)
class RemainderSplit:
    """Per-window breakdowns of ∫_0^t H̃_{s−} dX_s."""

    t: float
    windows: Tuple[WindowTerms, ...]

    @property
    def integral(self) -> np.ndarray:
        if not self.windows:
            return np.zeros(0)
        return np.sum([w.integral for w in self.windows], axis=0)

    @property
    def max_reconstruction_error(self) -> float:
        return max((w.reconstruction_error for w in self.windows), default=0.0)

    @property
    def bound_violations(self) -> int:
        return sum(len(w.violations) for w in self.windows)


def _split_window(
    H: StepPath,
    X: StepPath,
    window: Window,
    a_k: float,
    gamma: float,
    R: int,
    t: float,
) -> WindowTerms:
    d = H.dimension
    a, b = min(t, window.tau), min(t, window.rho)
    anchor = H.left_limit(window.tau)
    integral = window_integral(H - anchor, X, a, b)
    if window.rho <= window.tau or b <= a:
        zeros = np.zeros((len(TERM_NAMES), d))
        return WindowTerms(window, zeros, integral, np.zeros(4), np.zeros(d))

    integrator = decompose_integrator(X, window.floor, window.rho, gamma)
    integrand = decompose_integrand(H, window, gamma)
    # event A bounds N by R inclusively
    adapted = decompose_integrand_adapted(H, window, gamma, R + 1)

    xi, dx = integrator.xi, integrator.increment
    scaling = window_integral(integrand.zeta, xi, a, b)
    terms = np.stack(
        [
            integrand.increment * dx * scaling,
            dx * integrand.offset * (xi.eval(b) - xi.eval(a)),
            dx * window_integral(integrand.psi, xi, a, b),
            window_integral(adapted.zeta_hat, integrator.phi, a, b),
            window_integral(adapted.psi_hat, integrator.phi, a, b),
        ]
    )

    dx_size = float(np.abs(dx).max())
    zeta_sup = adapted.zeta_hat.sup_norm(window.tau, window.rho)
    zeta_variation = adapted.zeta_hat.variation_between(window.tau, window.rho)
    bounds = np.array(
        [
            2 * d * a_k * dx_size,
            d**2 * gamma * dx_size,
            (2 * zeta_sup + zeta_variation) * d * gamma,
            d * gamma * integrator.phi.variation_between(window.tau, window.rho),
        ]
    )
    return WindowTerms(window, terms, integral, bounds, scaling)


def remainder_split(
    H: StepPath,
    X: StepPath,
    windows: ExcursionWindows,
    gamma: float,
    R: int,
    t: float,
) -> RemainderSplit:
    """Five-term breakdown of every window integral ∫_{t∧τ_j}^{t∧ρ_j} H̃_{s−} dX_s.

    Args:
        H: Integrand the windows were generated from.
        X: Integrator.
        windows: Excursion windows of H.
        gamma: Approximation level γ.
        R: Bound on the number of large increments and the running suprema.
        t: Evaluation time.

    Raises:
        PreconditionError: If a window decomposition fails its modulus or count condition.
    """
    check_compatible(H, X)
    split = RemainderSplit(
        t, tuple(_split_window(H, X, w, windows.threshold, gamma, R, t) for w in windows)
    )
    if split.bound_violations:
        log.warning(f"{split.bound_violations} remainder term bounds exceeded at t={t}.")
    return split
