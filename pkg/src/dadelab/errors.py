"""Exception types raised across the package."""


class DadelabError(Exception):
    """Base class for all package errors."""


class RingMismatch(DadelabError):
    pass


class GroupMismatch(DadelabError):
    pass


class NonUnit(DadelabError, ArithmeticError):
    pass


class PrecisionFailure(DadelabError):
    """A truncated computation lost the information it needed."""


class CertificationFailed(DadelabError):
    """A structural certificate (locality, splitting) could not be produced."""


class NotIndecomposable(DadelabError):
    pass


class NotCapped(DadelabError):
    pass


class NotStronglyCapped(DadelabError):
    pass


class NotEndoPermutation(DadelabError):
    pass


class NotALift(DadelabError):
    pass


class NonInvertibleDimension(DadelabError):
    pass


class DeterminantNotRootOfUnity(DadelabError):
    pass


class InsufficientRoots(DadelabError):
    pass


class InternalInvariantViolation(DadelabError):
    pass


class ModuleValidationError(DadelabError):
    pass


class BoundExceeded(DadelabError):
    pass


class ModuleParseError(DadelabError, ValueError):
    """Malformed module file; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
