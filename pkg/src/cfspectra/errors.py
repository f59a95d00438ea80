"""Exception hierarchy shared by all modules."""


class CFSpectraError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZeroError(CFSpectraError, ZeroDivisionError):
    pass


class UnsupportedFieldError(CFSpectraError, ValueError):
    """Negative radicand: the value would leave the real quadratic fields."""


class FieldMismatchError(CFSpectraError, ValueError):
    """Arithmetic between surds living in different quadratic fields."""


class DomainError(CFSpectraError, ValueError):
    pass


class IndeterminateComparison(CFSpectraError):
    """Interval refinement hit its cap without separating the operands.

    Carries both final enclosures; in practice this means a perfect-square
    (equality) case was not detected symbolically.
    """

    def __init__(self, message, left=None, right=None):
        super().__init__(message)
        self.left = left
        self.right = right


class BudgetExceededError(CFSpectraError):
    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class ParseError(CFSpectraError, ValueError):
    """Syntax error in a surd expression or CF literal; ``offset`` is a byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset
