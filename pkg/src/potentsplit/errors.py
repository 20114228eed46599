"""Exception hierarchy shared by every module of the package."""


class PotentSplitError(Exception):
    """Base class for all errors raised by potentsplit."""


class RingSpecError(PotentSplitError, ValueError):
    """A ring or polynomial specification string could not be parsed.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)


class UnsupportedRing(PotentSplitError, TypeError):
    pass


class NotInvertible(PotentSplitError, ArithmeticError):
    pass


class NotSquareZero(PotentSplitError, ValueError):
    pass


class NotIdempotentModIdeal(PotentSplitError, ValueError):
    pass


class NotPotentModIdeal(PotentSplitError, ValueError):
    pass


class CornerMismatch(PotentSplitError, ValueError):
    pass


class LiftIdentityFailed(PotentSplitError, AssertionError):
    """An identity that the lifting steps guarantee did not hold.

    Either a precondition was violated by the caller or there is a bug.
    """


class ShapeMismatch(PotentSplitError, ValueError):
    pass


class BudgetExceeded(PotentSplitError, RuntimeError):
    def __init__(self, message, examined=0):
        self.examined = examined
        super().__init__(f"{message} (examined {examined} candidates)")


class IterationLimit(PotentSplitError, RuntimeError):
    pass
