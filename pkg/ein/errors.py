# errors.py
# Exception hierarchy for ein; every error knows the einctl exit code it maps to


class EinError(Exception):
    """Base class for all ein errors."""
    exit_code = 3


# Input errors (exit code 1)

class InputError(EinError):
    exit_code = 1


class DimensionMismatch(InputError):
    pass


class ZeroVectorError(InputError):
    pass


class MalformedInput(InputError):
    pass


class UnknownSuite(InputError):
    pass


# Domain / precondition errors (exit code 2)

class DomainError(EinError):
    exit_code = 2


class SignatureError(DomainError):
    pass


class NotInAlgebraError(DomainError):
    pass


class NotInGroupError(DomainError):
    pass


class NotNullError(DomainError):
    pass


class NotNilpotentError(DomainError):
    pass


class NotClosedError(DomainError):
    pass


class NotContainedError(DomainError):
    pass


class PoleError(DomainError):
    pass


class ChartDomainError(DomainError):
    pass


class FixedSetError(DomainError):
    pass


class NoCommonGeodesicError(DomainError):
    pass


class NotTransverseError(DomainError):
    pass


class NotInSError(DomainError):
    pass


class NotCommutingError(DomainError):
    pass


class NonContiguousCurveError(DomainError):
    pass


class PreconditionError(DomainError):
    pass


class WitnessSearchError(DomainError):
    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace or []


# Internal assertions (exit code 3)

class InternalAssertion(EinError):
    """An identity that must hold by construction failed."""
    exit_code = 3
