"""Exception hierarchy shared by all costmc modules."""


class CostMCError(Exception):
    """Base class for every error raised by costmc."""


class DegenerateVector(CostMCError):
    """A vector has no component outside the current basis span."""


class RankDeficientRestriction(CostMCError):
    """The row-restricted basis lost rank, so back-projection is ambiguous.

    Raised when too few rows were sampled for the column space at hand.
    """


class DimensionCapExceeded(CostMCError):
    """An exhaustive search was asked to run above its size cap."""


class ZeroMatrix(CostMCError):
    pass


class IndexOutOfRange(CostMCError, IndexError):
    pass


class InvalidD(CostMCError, ValueError):
    pass


class InvalidRank(CostMCError, ValueError):
    pass


class LengthMismatch(CostMCError, ValueError):
    pass


class ModelMismatch(CostMCError, TypeError):
    pass


class NoFeasiblePlan(CostMCError):
    pass


class OutOfBandAccess(CostMCError):
    """Something tried to read the hidden matrix without paying for it."""


class UnknownFixture(CostMCError, KeyError):
    pass


class DimensionMismatch(CostMCError, ValueError):
    pass


class ParseError(CostMCError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
