"""Exception hierarchy shared by all rangesets modules."""


class RangesetsError(Exception):
    """Base class for every error raised by this package."""


class TooFewPoints(RangesetsError):
    """Fewer than three distinct points remain after duplicate merging."""


class AllCollinear(RangesetsError):
    """Every point lies on one straight line; no triangle exists."""


class NegativeEpsilon(RangesetsError):
    """A filtration threshold must be >= 0."""


class InconsistentInput(RangesetsError):
    """A filtered complex was paired with a triangulation it was not built from."""


class SinglePoint(RangesetsError):
    """An operation that needs at least two vertices got one."""


class ConstantColumn(RangesetsError):
    """A column with zero variance cannot be standardized."""

    def __init__(self, column: str):
        super().__init__(f"column {column!r} is constant and cannot be standardized")
        self.column = column


class EigenFailure(RangesetsError):
    """The symmetric eigensolver did not converge."""


class KTooLarge(RangesetsError):
    """Neighborhood size k must be smaller than the number of points."""


class RowCountMismatch(RangesetsError):
    """An ingested embedding has a different row count than the dataset."""


class NonNumeric(RangesetsError):
    """A value that must be numeric could not be parsed."""


class ParseError(RangesetsError):
    """A CSV cell or row could not be parsed."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class EmptyDataset(RangesetsError):
    """The dataset contains no data rows."""


class UnknownAttribute(RangesetsError):
    """The requested attribute is not part of the document or dataset."""


class ComputationSuperseded(RangesetsError):
    """A newer request for the same session key replaced this computation."""
