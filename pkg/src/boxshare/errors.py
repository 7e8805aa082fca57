"""Exception types shared across the package."""


class BoxshareError(Exception):
    """Base class for all package errors."""


class ParameterError(BoxshareError, ValueError):
    """An argument is missing, out of range, or inconsistent with another."""


class DomainError(BoxshareError, ValueError):
    """A real-valued argument lies outside the function's mathematical domain."""


class ResourceError(BoxshareError):
    """A computation would exceed a caller-supplied size cap."""


class FitError(BoxshareError):
    """Maximum-likelihood estimation cannot produce a finite estimate."""
