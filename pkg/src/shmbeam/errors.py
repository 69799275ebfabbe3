"""Exception types shared across the workbench.

The CLI maps these onto exit codes: usage problems exit 1,
``InvalidInputError`` and its subclasses exit 2, ``NumericalError`` and
its subclasses exit 3.
"""


class ShmBeamError(Exception):
    """Base class for all workbench errors."""


class InvalidInputError(ShmBeamError):
    """Bad argument, malformed data, or violated precondition."""


class MalformedFileError(InvalidInputError):
    """A persisted file cannot be parsed or is missing a field."""


class UnsupportedFormatError(InvalidInputError):
    """A persisted file declares a format_version this code does not read."""


class InsufficientModesError(InvalidInputError):
    """Fewer modes could be matched than the consumer requires."""


class NumericalError(ShmBeamError):
    """A factorization, eigensolve, or fit failed numerically."""


class TrainingDivergedError(NumericalError):
    """Training loss exploded; the message names the offending epoch."""
