"""Exception hierarchy shared by all modules."""


class CasimirError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RangeError(CasimirError, ValueError):
    """An argument is valid mathematically but outside the supported envelope."""


class ConvergenceError(CasimirError, RuntimeError):
    """A truncated sum did not reach its tolerance within the allowed caps."""


class QuadratureError(ConvergenceError):
    """Adaptive quadrature failed; ``worst`` holds the offending subinterval."""

    def __init__(self, message, worst=None):
        super().__init__(message)
        self.worst = worst


class NoSignChangeError(CasimirError, ValueError):
    """A root bracket does not straddle a sign change."""
