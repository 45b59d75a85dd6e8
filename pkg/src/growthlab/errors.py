"""Exception taxonomy shared across the library.

Every error raised by this package derives from :class:`GrowthError` and
carries the name of the module it was raised from, so front ends can print
module-qualified diagnostics without string matching.
"""


class GrowthError(Exception):
    """Base class for all library errors."""

    default_module = "growthlab"

    def __init__(self, message, module=None):
        super().__init__(message)
        self.module = module or self.default_module

    def qualified(self):
        """Return the message prefixed with the originating module."""
        return f"{self.module}: {self}"


# series ---------------------------------------------------------------

class LengthMismatch(GrowthError):
    default_module = "series"


class NonMonotonicTime(GrowthError):
    default_module = "series"


class NonPositiveValue(GrowthError):
    default_module = "series"


# rates ----------------------------------------------------------------

class SeriesTooShort(GrowthError):
    default_module = "rates"


class DegenerateWindow(GrowthError):
    default_module = "rates"


class ZeroTransformedValue(GrowthError):
    default_module = "rates"


# models ---------------------------------------------------------------

class InvalidParameter(GrowthError):
    default_module = "models"


class OutsideDomain(GrowthError):
    default_module = "models"


class Overflow(GrowthError):
    default_module = "models"


class NonPositiveAnchor(GrowthError):
    default_module = "models"


class UnreachableAnchor(GrowthError):
    default_module = "models"


class UnnormalizedModel(GrowthError):
    default_module = "models"


# fitting --------------------------------------------------------------

class TooFewPoints(GrowthError):
    default_module = "fitting"


class DegenerateX(GrowthError):
    default_module = "fitting"


class ZeroRate(GrowthError):
    default_module = "fitting"


class NonPositiveRate(GrowthError):
    default_module = "fitting"


# forecast -------------------------------------------------------------

class EmptyGrid(GrowthError):
    default_module = "forecast"


# oracle ---------------------------------------------------------------

class DomainViolation(GrowthError):
    default_module = "oracle"


class NonPositiveStart(GrowthError):
    default_module = "oracle"


class SingularIntegrand(GrowthError):
    default_module = "oracle"


class ZeroDelta(GrowthError):
    default_module = "oracle"


# cli ------------------------------------------------------------------

class ParseError(GrowthError):
    default_module = "cli"


class DuplicateYear(GrowthError):
    default_module = "cli"


class TooFewRows(GrowthError):
    default_module = "cli"
