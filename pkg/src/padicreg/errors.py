"""Exception hierarchy for padicreg."""


class PadicRegError(Exception):
    """Base class for all library errors."""


class NotPrimeError(PadicRegError, ValueError):
    pass


class ZeroInversion(PadicRegError, ZeroDivisionError):
    pass


class LengthMismatch(PadicRegError, ValueError):
    pass


class PrecisionMismatch(PadicRegError, ValueError):
    pass


class NotDivisible(PadicRegError, ValueError):
    pass


class EmptyForm(PadicRegError, ValueError):
    pass


class RankDeficient(PadicRegError, ValueError):
    pass


class TrialBudgetExhausted(PadicRegError, RuntimeError):
    """Too many random draws without completing a run."""


class RestartBudgetExhausted(PadicRegError, RuntimeError):
    """The outer restart loop exceeded ``max_restarts``.

    ``stats`` carries the counters accumulated up to the point of giving up.
    """

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats


class EmptyLocus(PadicRegError, RuntimeError):
    """No sample survived a digit peel."""

    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level
