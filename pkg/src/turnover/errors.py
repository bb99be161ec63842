"""Exception types shared across the package."""


class TurnoverError(Exception):
    """Base class for every error raised by this package."""


class DomainError(TurnoverError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BracketError(TurnoverError, ValueError):
    """A root bracket does not enclose a sign change."""


class ConvergenceError(TurnoverError, RuntimeError):
    """An iterative routine failed to reach the requested tolerance."""


class InequalityViolation(TurnoverError, RuntimeError):
    """A theorem-backed inequality failed numerically.

    The inequalities guarded by this error are proved facts, so a violation
    always indicates a quadrature or bookkeeping bug, never new mathematics.
    """
