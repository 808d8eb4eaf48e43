"""Exception hierarchy shared by every module of the package."""


class QSeriesError(ValueError):
    """Base class for all q-series evaluation failures."""


class NonConvergent(QSeriesError):
    """A truncation cap was reached before the tail estimate met its target."""


class InvalidLowerParameter(QSeriesError):
    """A denominator factor (b; q)_n vanished during summation."""


class DomainViolation(QSeriesError):
    """A parameter point lies outside an identity's declared domain."""


class SingularPoint(QSeriesError):
    """A divided difference was requested where its denominator vanishes."""


class InexactOperation(QSeriesError):
    """An infinite object was requested in exact rational mode."""
