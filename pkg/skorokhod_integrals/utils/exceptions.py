class DomainError(ValueError):
    """Raised when a time or parameter lies outside the range an operation is defined on."""


class PathMismatchError(ValueError):
    """Raised when two paths combined by an operation have different horizons or dimensions."""


class PreconditionError(ValueError):
    """Raised when the hypothesis a construction relies on does not hold for its input."""


class GridError(ValueError):
    """Raised for grid range violations and collisions with known discontinuities."""


class ConfigError(ValueError):
    """Raised for invalid experiment or command line configurations."""
