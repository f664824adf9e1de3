from skorokhod_integrals.constructions.decompositions import (
    AdaptedIntegrandDecomposition,
    IntegrandDecomposition,
    IntegratorDecomposition,
    RemainderSplit,
    WindowTerms,
    decompose_integrand,
    decompose_integrand_adapted,
    decompose_integrator,
    remainder_split,
    scaling_term_Y,
)
from skorokhod_integrals.constructions.events import event_A, event_Gamma
from skorokhod_integrals.constructions.excursions import (
    ExcursionWindows,
    Window,
    corrected_integrand,
    excursion_windows,
)
from skorokhod_integrals.constructions.grid import PartitionGrid, grid_ceil, grid_floor
from skorokhod_integrals.constructions.ladder import (
    JumpBands,
    ThresholdLadder,
    limit_jump_times,
)
from skorokhod_integrals.constructions.monotone import (
    BridgeTail,
    MonotonePiece,
    adapted_monotone_step,
    bridge_error,
    build_adapted_step,
    build_bridge,
    monotone_bridge,
    step_error,
)
