"""Exception types raised across the logmin pipeline.

Everything inherits from LogMinError so CLI code can catch input problems
with a single except clause and map them to exit code 1.
"""


class LogMinError(Exception):
    """Base class for all logmin input and contract errors."""


class MalformedRow(LogMinError):
    """A log row is missing fields or carries an unparseable value.

    `line` is the 1-based line number in the source file, or None when the
    row did not come from a file.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BadHeader(LogMinError):
    """A CSV file does not start with the expected header row."""


class DuplicateId(LogMinError):
    """Two records share a call-log id."""


class BadPrefixTable(LogMinError):
    """The provider prefix table file is malformed or has duplicate prefixes."""


class TooManyClusters(LogMinError):
    """k exceeds the number of distinct points available for clustering."""


class EmptyInput(LogMinError):
    """An operation that needs at least one element got none."""


class OracleTooLarge(LogMinError):
    """The exhaustive clustering oracle was asked to enumerate too large an instance."""


class NotOrderable(LogMinError):
    """Cluster labelling requires 1-D centroids."""


class BadScore(LogMinError):
    """A relevance session score is outside its allowed range."""
