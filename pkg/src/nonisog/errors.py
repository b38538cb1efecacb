"""Exception types shared across the package."""

from __future__ import annotations


class DegenerateInputError(ValueError):
    """Zero or constant polynomial passed to an analytical operation."""


class PreconditionError(ValueError):
    """An operation's documented precondition does not hold."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of the operation."""


class ResourceLimitError(RuntimeError):
    """A desk-scale cap (degree, order) would be exceeded."""


class PolySyntaxError(ValueError):
    """Polynomial expression could not be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SimplicityUnknown(RuntimeError):
    """Norton's test was inconclusive and the module is too large to scan.

    Carries whatever was computed before giving up.
    """

    def __init__(self, dimension: int, endomorphism_dimension: int, attempts: int):
        super().__init__(
            f"simplicity undecided for dimension {dimension} after {attempts} attempts"
        )
        self.dimension = dimension
        self.endomorphism_dimension = endomorphism_dimension
        self.attempts = attempts
