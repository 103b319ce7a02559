"""Exception hierarchy shared by all modules."""


class HKError(Exception):
    """Base class for every error raised by this package."""


class BadPrime(HKError):
    """A relation or generator degenerates under reduction mod p."""


class InfiniteColength(HKError):
    """The ideal could not be witnessed to have finite colength."""


class DegreeCapExceeded(HKError):
    """A computation would need degrees beyond the configured cap."""


class Overflow(DegreeCapExceeded):
    """A Frobenius power q = p^n is larger than the degree cap allows."""


class NotStabilized(HKError):
    """No polynomial window was found in a Hilbert function prefix."""


class NotPolynomial(HKError):
    """Values are not reproduced by a polynomial of the requested degree."""


class CancellationFailure(HKError):
    """Leading terms that must cancel did not."""


class IncompatibleGrids(HKError):
    """Two step functions have resolutions where neither divides the other."""


class MismatchedLevel(HKError):
    """Step functions combined entrywise were computed at different levels."""


class InvalidHN(HKError):
    """Harder-Narasimhan data violates an ordering or rank constraint."""


class PreconditionViolated(HKError):
    pass


class NotTrinomial(HKError):
    pass


class Unmatched(HKError):
    """A regular trinomial matched neither normal form."""
