"""Exception types shared across the toolkit."""


class DichromaError(Exception):
    """Base class for toolkit-specific failures."""


class LimitExceededError(DichromaError):
    """An enumeration or construction would exceed a configured size limit."""


class BudgetExceededError(DichromaError):
    """A search ran out of its node or time budget; the answer is unknown."""


class CertificationError(DichromaError):
    """Rejection sampling exhausted its attempts without a verified witness."""


class GraphFormatError(DichromaError):
    """A graph file violates the text format.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
