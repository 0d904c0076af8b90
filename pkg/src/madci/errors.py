"""Exception hierarchy shared by every module of the package."""


class MadciError(Exception):
    """Base class; ``code`` is the machine-readable tag used by the CLI."""

    code = "error"
    exit_status = 1


class EmptyInput(MadciError, ValueError):
    code = "empty_input"
    exit_status = 3


class InvalidProbability(MadciError, ValueError):
    code = "invalid_probability"
    exit_status = 4


class InvalidInput(MadciError, ValueError):
    code = "invalid_input"
    exit_status = 5


class DegenerateSample(MadciError, ValueError):
    """The sample has zero spread (MAD or IQR equal to zero)."""

    code = "degenerate_sample"
    exit_status = 6


class FitFailure(MadciError, RuntimeError):
    code = "fit_failure"
    exit_status = 7


class RootFindFailure(MadciError, RuntimeError):
    code = "root_find_failure"
    exit_status = 8


class AsvUndefined(MadciError, ValueError):
    """Density at the median, or at the MAD endpoints, vanishes."""

    code = "asv_undefined"
    exit_status = 9


class ZeroDenominatorMad(MadciError, ZeroDivisionError):
    code = "zero_denominator_mad"
    exit_status = 10


class TooManyGroups(MadciError, ValueError):
    code = "too_many_groups"
    exit_status = 11


class SchemaError(MadciError, ValueError):
    code = "schema_error"
    exit_status = 12


class SampleError(MadciError):
    """Wraps a per-sample failure in a two-sample procedure.

    ``which`` is 1 or 2; ``cause`` is the original exception, whose code
    and exit status are reused.
    """

    def __init__(self, which, cause):
        super().__init__(f"sample {which}: {cause}")
        self.which = which
        self.cause = cause
        self.code = cause.code if isinstance(cause, MadciError) else "error"
        self.exit_status = getattr(cause, "exit_status", 1)
