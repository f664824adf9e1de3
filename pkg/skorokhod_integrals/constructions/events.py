from skorokhod_integrals.cadlag import StepPath, check_compatible
from skorokhod_integrals.constructions.excursions import ExcursionWindows
from skorokhod_integrals.metrics.moduli import hat_w, increment_count, w_prime


def event_A(
    H: StepPath,
    X: StepPath,
    gamma: float,
    delta: float,
    R: float,
    a_k: float,
    horizon: float = None,
) -> bool:
    """{w′(X, δ) ∨ w′(H, δ) ≤ γ/2} ∩ {N_{a_k∧γ}(H) ∨ |X|*_T ∨ |H|*_T ≤ R}."""
    check_compatible(H, X)
    horizon = H.horizon if horizon is None else horizon
    moduli = max(w_prime(X, delta, horizon), w_prime(H, delta, horizon))
    if moduli > gamma / 2:
        return False
    size = max(
        increment_count(H, min(a_k, gamma), horizon),
        X.running_sup(horizon),
        H.running_sup(horizon),
    )
    return size <= R


def event_Gamma(H: StepPath, X: StepPath, windows: ExcursionWindows, gamma: float) -> bool:
    """No X increment followed by an increment of H_− by more than γ/4 inside a window.

    Checks sup{|X_u − X_s| ∧ |H_{s−} − H_{r−}| : ⌊τ_j⌋ ≤ u < s < r ≤ ρ_j ∧ T} ≤ γ/4 for every j.
    """
    check_compatible(H, X)
    for window in windows:
        end = min(window.rho, H.horizon)
        # the period covers the whole window
        period = end - window.floor + 1.0
        if hat_w(X, H, period, horizon=end, start=window.floor, y_left=True) > gamma / 4:
            return False
    return True
