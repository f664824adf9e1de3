from skorokhod_integrals.experiments.base import (
    ExperimentConfig,
    draw,
    replicate,
    replication_rng,
    write_table,
)
from skorokhod_integrals.experiments.convergence import (
    KS_CAVEAT,
    STUDY_COLUMNS,
    ks_statistic,
    run_convergence_study,
)
from skorokhod_integrals.experiments.functionals import (
    EvalAt,
    PathFunctional,
    RunningSupAt,
    TotalVariationAt,
    validate_functionals,
)
from skorokhod_integrals.experiments.machinery import (
    TRACE_COLUMNS,
    ConstructionConfig,
    MachineryReport,
    run_machinery_trace,
)
from skorokhod_integrals.experiments.metric_decay import DECAY_COLUMNS, run_metric_decay
from skorokhod_integrals.experiments.conditions import (
    CONDITION_COLUMNS,
    ConditionConfig,
    run_condition_study,
)
