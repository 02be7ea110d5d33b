"""Exception hierarchy shared across the library.

The three branches map onto the CLI exit codes: input problems exit 1,
analysis problems (fitting, diagnostics, plotting) exit 2, and internal
consistency failures exit 3.
"""


class TailscopeError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TailscopeError):
    """Problem with input data or its declared schema (CLI exit 1)."""


class MalformedRecordError(InputError):
    """A traffic record violates the record contract.

    Carries the zero-based index of the offending record.
    """

    def __init__(self, index: int, message: str):
        super().__init__(f"record {index}: {message}")
        self.index = index


class SchemaError(InputError):
    """CSV schema configuration does not match the file."""


class RowError(InputError):
    """A CSV data row cannot be parsed.  Carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class AnalysisError(TailscopeError):
    """Problem in fitting, diagnostics or plotting (CLI exit 2)."""


class DomainError(AnalysisError):
    """Value outside an operation's mathematical domain."""


class InsufficientDataError(AnalysisError):
    """Too little data to produce a meaningful result."""


class PlotError(AnalysisError):
    """Requested plot cannot be drawn from the given report."""


class InvariantError(TailscopeError):
    """An internal invariant was violated (CLI exit 3)."""
