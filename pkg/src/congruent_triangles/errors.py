"""Exception hierarchy shared by every module in the package."""


class CongruentError(Exception):
    """Base class for all structured errors raised by this package."""


class ZeroDenominator(CongruentError, ZeroDivisionError):
    pass


class NegativeInput(CongruentError, ValueError):
    pass


class ZeroInput(CongruentError, ValueError):
    pass


class NotASquare(CongruentError, ValueError):
    pass


class FactorizationLimitExceeded(CongruentError):
    """The rho splitter ran out of its iteration budget."""


class NotOnCurve(CongruentError, ValueError):
    pass


class CurveMismatch(CongruentError, ValueError):
    pass


class NotFibonacci(CongruentError, ValueError):
    pass


class TrivialSolution(CongruentError, ValueError):
    pass


class EqualSolutions(CongruentError, ValueError):
    pass


class ProductNotSquare(CongruentError, ValueError):
    pass


class InsufficientPairs(CongruentError):
    pass


class IncompatibleSquarefreeParts(CongruentError):
    """No positive scale factor turns every square target into a square."""


class InvalidScaleFactor(CongruentError, ValueError):
    pass


class DegenerateOutput(CongruentError):
    """A constructed side came out zero, i.e. the solution is trivial."""


class InvalidIdentity(CongruentError, ValueError):
    pass


class CorruptCatalog(CongruentError):
    pass


class VerificationFailed(CongruentError):
    """A record did not pass ``verify_record`` where it had to."""
