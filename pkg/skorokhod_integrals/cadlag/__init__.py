from skorokhod_integrals.cadlag.io import path_to_frame, read_path_csv, write_path_csv
from skorokhod_integrals.cadlag.step_path import (
    CompletedGraph,
    Segment,
    StepPath,
    as_vector,
    check_compatible,
    check_same_horizon,
)
