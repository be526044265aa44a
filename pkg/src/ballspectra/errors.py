"""Exception types raised by the package."""


class BallSpectraError(Exception):
    """Base class for all package errors."""


class ParameterError(BallSpectraError, ValueError):
    """Invalid configuration value (radius, wave number, quadrature order...)."""


class DomainError(BallSpectraError, ValueError):
    """Argument outside the domain of a function."""


class SingularArgumentError(BallSpectraError, ZeroDivisionError):
    """Evaluation at a singular point, e.g. y_n(0)."""


class DegenerateError(BallSpectraError, ArithmeticError):
    """A denominator vanished (resonant eigenvalue, degenerate coupling)."""


class ConvergenceError(BallSpectraError, RuntimeError):
    """An iteration failed to reach its tolerance."""
