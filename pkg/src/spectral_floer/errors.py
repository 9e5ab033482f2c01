"""Exception hierarchy.

Every error raised on bad input derives from :class:`InputError`; the CLI maps
those to exit status 2.  Check failures are never raised, they are reported.
"""


class SpectralFloerError(Exception):
    pass


class InputError(SpectralFloerError, ValueError):
    pass


class GroupMismatch(InputError):
    pass


class DirectionMismatch(InputError):
    pass


class EmptyElement(InputError):
    pass


class AmbiguousLeadingTerm(InputError):
    pass


class SourceMismatch(InputError):
    pass


class ShiftBoundViolated(InputError):
    pass


class InfiniteWindowPopulation(InputError):
    pass


class NotACycle(InputError):
    pass


class ZeroClass(InputError):
    """The class is null-homologous, so its spectral number is not defined."""


class BoxTooSmall(InputError):
    pass


class DegenerateMorseFunction(InputError):
    pass


class ExplosionGuard(InputError):
    pass


class PreconditionEpsilonTooLarge(InputError):
    pass


class MissingClass(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class ModelMismatch(InputError):
    pass


class MorseBoundaryNotSquareZero(InputError):
    pass


class NotNormalized(InputError):
    pass


class TransportNotBijective(InputError):
    pass


class EmptyLiftList(InputError):
    pass


class EmptyList(InputError):
    pass


class UnknownTask(InputError):
    pass


class DanglingReference(InputError):
    pass


class DuplicateLabel(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
