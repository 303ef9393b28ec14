"""Exceptions raised by quadsemi."""
from typing import Optional


class QuadSemiError(Exception):
    """Base class for all quadsemi errors."""


class InvalidFieldError(QuadSemiError, ValueError):
    """Raised when an integer does not define a real quadratic field."""

    def __init__(self, D: int, square_factor: Optional[int] = None) -> None:
        """Initialize the exception.

        Args:
            D: The rejected integer.
            square_factor: A square greater than 1 dividing D, if that is the
                reason for rejection.
        """
        self.D = D
        self.square_factor = square_factor
        if square_factor is not None:
            message = f'D={D} is not squarefree (divisible by {square_factor})'
        else:
            message = f'D={D} must be an integer at least 2'
        super().__init__(message)


class FieldMismatchError(QuadSemiError, ValueError):
    """Raised when elements of two different fields are combined."""

    def __init__(self, left_D: int, right_D: int) -> None:
        """Initialize the exception.

        Args:
            left_D: The field of the left operand.
            right_D: The field of the right operand.
        """
        super().__init__(f'Cannot combine elements of Q(sqrt({left_D})) '
                         f'and Q(sqrt({right_D}))')


class NotTotallyPositiveError(QuadSemiError, ValueError):
    """Raised when an operation requires a totally positive element."""

    def __init__(self, element: object, operation: str) -> None:
        """Initialize the exception.

        Args:
            element: The offending element.
            operation: The name of the operation that was attempted.
        """
        self.element = element
        super().__init__(f'{operation} requires a totally positive element, '
                         f'got {element}')


class IndexRangeError(QuadSemiError, ValueError):
    """Raised when an index or parameter is outside its admissible range."""

    def __init__(self, name: str, value: object, expected: str) -> None:
        """Initialize the exception.

        Args:
            name: The name of the parameter.
            value: The rejected value.
            expected: A human-readable description of the admissible range.
        """
        super().__init__(f'{name}={value} is out of range (expected {expected})')


class EngineInvariantError(QuadSemiError, AssertionError):
    """Raised when an internal verification fails.

    This never signals bad input. It means that some computed object does
    not satisfy an identity that holds for every real quadratic field, i.e.
    there is a bug in the engine.
    """


class InvalidPeriodError(QuadSemiError, ValueError):
    """Raised when a label sequence is not the period of any sigma_D."""

    def __init__(self, period: object, reason: str) -> None:
        """Initialize the exception.

        Args:
            period: The rejected sequence.
            reason: Why the sequence was rejected.
        """
        self.period = period
        super().__init__(f'{list(period)} is not a valid period: {reason}')


class ReconstructionError(QuadSemiError):
    """Base class for failures of the field reconstruction pipeline."""


class RetriableReconstructionError(ReconstructionError):
    """Raised when reconstruction may succeed with a larger search radius."""


class ChainTopologyError(ReconstructionError):
    """Raised when the companion graph does not have the shape of a path."""
