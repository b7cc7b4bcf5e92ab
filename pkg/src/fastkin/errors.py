"""Exception types shared across the solver."""


class ConfigError(ValueError):
    """Raised for invalid run configuration (grids, problems, CLI input)."""


class InvalidStateError(RuntimeError):
    """Raised when a moment field leaves the physical region (rho <= 0 or theta <= 0)."""
