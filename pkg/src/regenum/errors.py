"""Shared exception types with stable CLI exit codes."""

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CAP = 3
EXIT_VALIDATION = 4
EXIT_DEGENERATE = 5


class RegenumError(Exception):
    """Base class for errors raised by this package."""

    exit_code = 1


class ConfigError(RegenumError):
    """Invalid or inconsistent configuration or arguments."""

    exit_code = EXIT_CONFIG


class CapExceededError(RegenumError):
    """A brute-force enumeration was asked to exceed its size cap."""

    exit_code = EXIT_CAP


class ValidationError(RegenumError):
    """An acceptance check failed."""

    exit_code = EXIT_VALIDATION


class DegenerateCriticalPointError(RegenumError):
    """A critical point with (numerically) singular Hessian was encountered."""

    exit_code = EXIT_DEGENERATE


class NonConvergenceError(RegenumError):
    """An iterative routine failed to reach its tolerance."""

    exit_code = 1
