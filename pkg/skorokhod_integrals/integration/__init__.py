from skorokhod_integrals.integration.semimartingale import (
    GDStatistics,
    SemimartingaleDecomposition,
    first_passage,
    gd_bound_check,
    gd_statistics,
    jump_domination_check,
)
from skorokhod_integrals.integration.stieltjes import (
    CorrectionEntry,
    CorrectionTerm,
    apply_correction,
    integration_by_parts_residual,
    ito_integral,
    jump_product_path,
    jump_product_sum,
    limit_integral,
    window_integral,
)
