"""Exception types shared across the toolkit."""


class SynchroError(Exception):
    """Base class for all errors raised by this package."""


class InvalidWord(SynchroError):
    pass


class InvalidParameter(SynchroError):
    pass


class Undefined(SynchroError):
    """The requested quantity does not exist for this input (e.g. former rank of a 1-state automaton)."""


class InvalidPartition(SynchroError):
    pass


class InvalidState(SynchroError):
    pass


class NotACongruence(SynchroError):
    pass


class NotSynchronizing(SynchroError):
    pass


class NotSemisimple(SynchroError):
    pass


class DimensionMismatch(SynchroError):
    pass


class NotSquare(SynchroError):
    pass


class MonoidTooLarge(SynchroError):
    pass


class CapExceeded(SynchroError):
    """A configurable search cap (e.g. subset-BFS state limit) was exceeded."""


class DecompositionFailed(SynchroError):
    """Numerical component split failed; carries residual diagnostics."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or {}


class ToleranceAmbiguity(SynchroError):
    """A numerical equality test landed inside the guard band around the threshold."""

    def __init__(self, message, distance=None):
        super().__init__(message)
        self.distance = distance


class RepresentationFailure(SynchroError):
    pass


class BoundViolation(SynchroError):
    pass


class BudgetExceeded(SynchroError):
    """Exact search ran out of budget; carries the best-known interval."""

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class ParseError(SynchroError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
