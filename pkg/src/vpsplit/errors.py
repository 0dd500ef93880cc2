"""Exception and warning types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid grid, scheme, or run configuration."""


class DimensionError(ValueError):
    """Operands live on different grids or have mismatched shapes."""


class CompatibilityError(ValueError):
    """Charge density incompatible with the periodic field solve (mean != 1)."""


class SnapshotFormatError(ValueError):
    """Snapshot file is corrupt, truncated, or carries the wrong magic/version."""


class NumericalFailureError(RuntimeError):
    """Non-finite values produced while advancing the solution."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested accuracy."""


class SupportEscapeWarning(UserWarning):
    """Non-negligible mass reached the velocity-domain boundary rows."""
