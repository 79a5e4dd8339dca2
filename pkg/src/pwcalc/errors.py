"""Exception types shared across the library."""


class PwCalcError(Exception):
    """Base class for all errors raised by this library."""


class InputError(PwCalcError, ValueError):
    """Invalid input: bad dimensions, malformed files, violated preconditions."""


class NotPsdError(PwCalcError):
    """A matrix required to be positive semidefinite has a genuinely negative eigenvalue."""


class NumericError(PwCalcError):
    """A numerical routine failed to converge or lost too much accuracy."""


class ExtendedValueError(PwCalcError):
    """A bounded operator was requested but the calculus value is unbounded (+inf).

    Raised by operator-valued evaluation when the profile takes the value
    +inf on a present eigenvalue. Scalar pairings handle +inf gracefully
    and should be used instead.
    """


class DominationError(InputError):
    """Operator is not dominated by any multiple of the reference sum."""
