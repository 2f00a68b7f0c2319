"""Exact-arithmetic loop operations on a punctured disk.

The library realizes the homotopy intersection pairing, the framed
self-intersection map, the Goldman bracket and the Turaev cobracket of a
disk with p punctures through formal expansions into a truncated completed
tensor algebra, entirely over exact rationals.
"""

from .errors import (
    DomainError,
    GTLabError,
    InconsistentCoeffs,
    MismatchedContext,
    MissingCoefficient,
    ParseError,
    SolverInconsistent,
    TruncationLoss,
    ZeroParameter,
)

__version__ = "0.1.0"

__all__ = [
    "GTLabError",
    "MismatchedContext",
    "DomainError",
    "MissingCoefficient",
    "ZeroParameter",
    "InconsistentCoeffs",
    "SolverInconsistent",
    "ParseError",
    "TruncationLoss",
    "__version__",
]
