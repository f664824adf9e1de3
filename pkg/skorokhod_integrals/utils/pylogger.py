import logging
import multiprocessing
from functools import wraps
from typing import Callable


def main_process_only(fn: Callable) -> Callable:
    """Makes `fn` a no-op when called from a worker process (e.g. a joblib worker)."""

    @wraps(fn)
    def wrapped(*args, **kwargs):
        if multiprocessing.parent_process() is None:
            return fn(*args, **kwargs)
        return None

    return wrapped


def get_pylogger(name=__name__) -> logging.Logger:
    """Initializes a worker-friendly python command line logger."""

    logger = logging.getLogger(name)

    # this ensures all logging levels get marked with the main process decorator
    # otherwise logs would get multiplied for each replication worker
    logging_levels = ("debug", "info", "warning", "error", "exception", "fatal", "critical")
    for level in logging_levels:
        setattr(logger, level, main_process_only(getattr(logger, level)))

    return logger
