"""Exception hierarchy shared by every package under ``src``."""


class HOCMError(Exception):
    """Base class for all errors raised by this project."""


class ConfigError(HOCMError, ValueError):
    """Scenario file, CLI argument or builtin name is invalid."""


class AlgebraError(HOCMError, ValueError):
    """Malformed operator expression, unknown mode or empty quadrature."""


class CutoffError(HOCMError, ValueError):
    """A Fock cutoff or memory budget is too small for the requested work."""

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class EvolutionError(HOCMError, RuntimeError):
    """Time evolution failed (step control, norm drift, boundary leakage)."""

    def __init__(self, message: str, xi: float | None = None):
        if xi is not None:
            message = f"{message} (xi={xi:.6g})"
        super().__init__(message)
        self.xi = xi


class LocalityError(HOCMError, ValueError):
    """A quadrature element straddles the two sides of a bipartition."""

    def __init__(self, message: str, violations: list | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class NumericalError(HOCMError, ArithmeticError):
    """A numerical self-check failed (non-real moments, eigen-residual, singular block)."""


class OutputError(HOCMError, OSError):
    """A result file could not be written."""
