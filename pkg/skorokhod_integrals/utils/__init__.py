from skorokhod_integrals.utils.exceptions import (
    ConfigError,
    DomainError,
    GridError,
    PathMismatchError,
    PreconditionError,
)
from skorokhod_integrals.utils.instantiators import (
    instantiate_experiment_config,
    instantiate_functionals,
    instantiate_metric_config,
    instantiate_scenario,
)
from skorokhod_integrals.utils.logging_utils import log_run_parameters
from skorokhod_integrals.utils.pylogger import get_pylogger, main_process_only
from skorokhod_integrals.utils.rich_utils import print_config_tree, print_table
from skorokhod_integrals.utils.utils import (
    apply_flat_config,
    extras,
    read_flat_config,
    show_table,
    task_wrapper,
)
