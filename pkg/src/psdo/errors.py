"""Exception hierarchy shared across the package.

Everything derives from :class:`PsdoError` so the CLI can map library
failures to a single validation exit code.
"""


class PsdoError(Exception):
    """Base class for all errors raised by this package."""


class ModeMismatch(PsdoError):
    """Operation requires an integer matrix parameter in ``mod`` arithmetic."""


class ZeroWindow(PsdoError):
    """Analysis window is identically zero."""


class DomainMismatch(PsdoError):
    """Weight domains or array shapes are incompatible."""


class DimMismatch(PsdoError):
    """Operator dimensions are incompatible."""


class InvalidParams(PsdoError):
    """Parameters outside the documented range."""


class InvalidExponent(PsdoError):
    """Lebesgue exponent outside (0, inf]."""


class InvalidDimension(PsdoError):
    """Ambient dimension outside the supported range."""


class UnsupportedDimension(PsdoError):
    """Orthogonal-group averaging is only implemented for d in {1, 2}."""


class ArityMismatch(PsdoError):
    """Exponent or weight tuple has the wrong number of entries."""


class TooFewEntries(PsdoError):
    """Functional needs at least three exponent entries."""


class SizeLimit(PsdoError):
    """Requested dense array would exceed the configured memory cap."""


class ValidationError(PsdoError):
    """Manifest or file-format validation failure."""
