"""Exception hierarchy shared by every module.

Errors deriving from :class:`RetryableError` mean "a random choice was
unlucky"; the drivers in :mod:`detsolve.detstart` catch them and start over
with fresh randomness until the retry budget runs out.
"""


class DetsolveError(Exception):
    pass


class ZeroInverse(DetsolveError, ZeroDivisionError):
    """Inversion of zero in a field."""


class ZeroDivisor(DetsolveError, ArithmeticError):
    """A non-invertible, nonzero element met inside K[Y]/<w>.

    ``factor`` is a monic proper factor of w (the gcd with the element).
    """

    def __init__(self, factor, message=None):
        self.factor = list(factor)
        super().__init__(message or f"zero divisor, factor of degree {len(self.factor) - 1}")


class Inconsistent(DetsolveError, ValueError):
    pass


class Underdetermined(DetsolveError, ValueError):
    pass


class NotCoprime(DetsolveError, ValueError):
    pass


class LambdaMismatch(DetsolveError, ValueError):
    pass


class NotARoot(DetsolveError, ValueError):
    pass


class TooLarge(DetsolveError, ValueError):
    pass


class InvalidProfile(DetsolveError, ValueError):
    pass


class DimensionMismatch(DetsolveError, ValueError):
    pass


class ParseError(DetsolveError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class Exhausted(DetsolveError, RuntimeError):
    def __init__(self, attempts, last_error=None):
        self.attempts = attempts
        self.last_error = last_error
        super().__init__(f"gave up after {attempts} attempts (last failure: {last_error!r})")


class RetryableError(DetsolveError):
    """Base class for failures caused by an unlucky random choice."""


class NotSeparating(RetryableError):
    pass


class NoSolution(RetryableError):
    pass


class NoInvertibleMinor(RetryableError):
    pass


class ResidualNonzero(RetryableError):
    pass


class Degenerate(RetryableError):
    pass


class RankDeficientBranch(RetryableError):
    pass


class CountMismatch(RetryableError):
    pass
