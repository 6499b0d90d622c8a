"""Exception types shared across the package."""


class EitSlmError(Exception):
    """Base class for all package-specific errors."""


class DomainError(EitSlmError, ValueError):
    """An argument lies outside the physically meaningful domain."""


class RegimeError(EitSlmError, RuntimeError):
    """A computation left the regime where the model is valid."""


class GridMismatchError(EitSlmError, ValueError):
    """Two gridded objects do not share the same sampling."""


class NoSolutionError(EitSlmError, RuntimeError):
    """A solver has no admissible solution for the given inputs."""


class ConfigError(EitSlmError, ValueError):
    """A pipeline configuration is malformed or inconsistent."""


class FieldFormatError(EitSlmError, ValueError):
    """A field-grid file is not in the expected binary format."""
