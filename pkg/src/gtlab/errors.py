"""Exception and warning types shared across the package."""

from __future__ import annotations


class GTLabError(Exception):
    """Base class for all package-specific errors."""


class MismatchedContext(GTLabError):
    """Operands live over different puncture counts / alphabets."""


class DomainError(GTLabError):
    """A precondition on counits or series domains was violated."""


class MissingCoefficient(GTLabError):
    """An associator coefficient needed at the requested degree is absent."""


class ZeroParameter(GTLabError):
    """A parameter that must be nonzero was zero."""


class InconsistentCoeffs(GTLabError):
    """Associator coefficients violate phi(-X) - phi(X) - 1/2 = s(X) at truncation."""


class SolverInconsistent(GTLabError):
    """A graded linear system had no solution; indicates an implementation bug."""


class ParseError(GTLabError):
    """Word-grammar parse failure; carries byte offset and expected tokens."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...]):
        super().__init__(f"{message} at offset {offset} (expected {', '.join(expected)})")
        self.offset = offset
        self.expected = expected


class TruncationLoss(UserWarning):
    """Degree-doubling embedded a series beyond the target truncation."""
