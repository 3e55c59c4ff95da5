"""Exception hierarchy shared by every thresec module."""


class ThresecError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(ThresecError, ValueError):
    """Operands belong to different finite fields."""


class SingularMatrixError(ThresecError, ArithmeticError):
    """A matrix that had to be invertible is not."""


class InconsistentSystemError(ThresecError, ArithmeticError):
    """x·A = b has no solution."""


class NonUniqueSolutionError(ThresecError, ArithmeticError):
    """x·A = b has more than one solution."""

    def __init__(self, message, rank=None, rows=None):
        super().__init__(message)
        self.rank = rank
        self.rows = rows


class NotProper(ThresecError):
    """Index assignment fails one of the two full-row-rank conditions.

    ``side`` is ``"message"`` or ``"key"``; ``rank`` is the rank that was
    found and ``expected`` the rank that was required.
    """

    def __init__(self, side, rank, expected):
        self.side = side
        self.rank = rank
        self.expected = expected
        super().__init__(
            f"scheme is not proper ({side}-side): rank {rank}, expected {expected}"
        )


class IntegrityError(ThresecError):
    """A received word is not in the coset selected by the key."""


class DecodingFailure(ThresecError):
    """The channel damage exceeds what the decoder can repair."""


class CapabilityError(ThresecError):
    """The requested operation is not available for this object."""


class BudgetExceeded(CapabilityError):
    """An exhaustive enumeration would exceed the configured budget."""

    def __init__(self, what, size, budget):
        self.size = size
        self.budget = budget
        super().__init__(f"{what}: {size} states exceeds budget {budget}")
