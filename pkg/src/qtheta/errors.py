"""Exception hierarchy shared by every qtheta module."""


class QThetaError(Exception):
    """Base class for all library errors."""


class DomainError(QThetaError, ValueError):
    """An argument lies outside the domain where the function is defined."""


class ConvergenceError(QThetaError, ArithmeticError):
    """A series, product or quadrature could not certify its target accuracy."""


class NonFiniteError(QThetaError, ArithmeticError):
    """An integrand returned NaN or an infinity inside the integration range."""
