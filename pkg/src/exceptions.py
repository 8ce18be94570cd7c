class SteklovError(Exception):
    """Base exception for steklov domain-specific errors."""


class SteklovDegenerateInputError(SteklovError):
    """Input polynomial is identically zero or otherwise degenerate"""


class SteklovNonpositiveTError(SteklovError, ValueError):
    """Regularization parameter t must be strictly positive"""


class SteklovPreconditionError(SteklovError):
    """A closed-form result was requested outside its domain of validity"""


class SteklovConvexificationError(SteklovError):
    """No convexifying t0 passed verification"""


class SteklovMissingBracketError(SteklovError):
    """A generic objective needs a user-supplied search interval"""


class SteklovMissingDerivativeError(SteklovError):
    """The objective lacks a derivative the operation needs"""


class SteklovUnboundedCurvatureError(SteklovError):
    """Second derivative is unbounded below"""


class SteklovNoBracketError(SteklovError):
    """Step-1 equation has no sign change within the search radius"""


class SteklovNotCoerciveError(SteklovError):
    """Polynomial is not coercive (odd degree or negative leading coefficient)"""


class SteklovUsageError(SteklovError):
    """Command-line arguments are malformed or inconsistent"""
