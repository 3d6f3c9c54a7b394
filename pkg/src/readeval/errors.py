"""Exception hierarchy.

Everything raised on purpose by the package derives from :class:`ReadEvalError`,
so callers (and the CLI) can catch one type and map it to an exit code.
"""


class ReadEvalError(Exception):
    """Base class for all package errors."""

    exit_code = 2


class EmptyText(ReadEvalError, ValueError):
    """Text contains no word tokens."""


class WordListMissing(ReadEvalError, KeyError):
    """A familiarity list required by a metric was not loaded."""


class UnsupportedBinarization(ReadEvalError, ValueError):
    pass


class EmptySummary(ReadEvalError, ValueError):
    pass


class ParseFailure(ReadEvalError, ValueError):
    """LM response does not follow the Score/Reason contract."""

    def __init__(self, message, raw=""):
        super().__init__(message)
        self.raw = raw


class EndpointError(ReadEvalError):
    exit_code = 3

    def __init__(self, message, status=None):
        super().__init__(message)
        self.status = status


class JudgeTimeout(EndpointError):
    pass


class JudgeConfigError(ReadEvalError):
    """Unusable endpoint configuration; aborts a whole batch."""

    exit_code = 1


class DegenerateVariance(ReadEvalError, ValueError):
    pass


class AllTied(ReadEvalError, ValueError):
    pass


class DomainError(ReadEvalError, ValueError):
    pass


class EmptyInput(ReadEvalError, ValueError):
    pass


class EmptyRatings(ReadEvalError, ValueError):
    pass


class RangeError(ReadEvalError, ValueError):
    pass


class CorpusParseError(ReadEvalError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DuplicateId(CorpusParseError):
    pass


class KeyMismatch(ReadEvalError, ValueError):
    pass


class AlignmentError(ReadEvalError, ValueError):
    pass


class EmptyDataset(ReadEvalError, ValueError):
    pass


class MissingInput(ReadEvalError, FileNotFoundError):
    pass
