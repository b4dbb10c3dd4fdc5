"""Exception hierarchy shared by every fuzzyshrink module."""


class FuzzyShrinkError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FuzzyShrinkError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularDesignError(FuzzyShrinkError):
    """The regression design matrix is rank deficient."""


class DegenerateDataError(FuzzyShrinkError):
    """Resampling kept producing unusable (rank-deficient) data."""


class CsvParseError(FuzzyShrinkError, ValueError):
    """Malformed CSV input.

    Carries the 1-based data row and the offending column name when known.
    """

    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        if where:
            message = f"{message} at {', '.join(where)}"
        super().__init__(message)
