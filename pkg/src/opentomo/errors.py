"""Exception hierarchy shared by every module."""


class TomographyError(Exception):
    """Base class for all errors raised by this package."""


class DimMismatchError(TomographyError, ValueError):
    pass


class NotHermitianError(TomographyError, ValueError):
    pass


class TraceNotOneError(TomographyError, ValueError):
    pass


class NotPositiveError(TomographyError, ValueError):
    pass


class NotUnitaryError(TomographyError, ValueError):
    pass


class InvalidSpinError(TomographyError, ValueError):
    pass


class BadQuantumNumbersError(TomographyError, ValueError):
    pass


class QuadratureFailure(TomographyError, RuntimeError):
    pass


class IncompleteKrausSetError(TomographyError, ValueError):
    pass


class ZeroStateError(TomographyError, ValueError):
    pass


class NonHermitianInputError(TomographyError, ValueError):
    pass


class UnphysicalVarianceError(TomographyError, ValueError):
    pass


class StepSizeTooLargeError(TomographyError, RuntimeError):
    pass


class ConfigError(TomographyError, ValueError):
    pass


class ComputeError(TomographyError, RuntimeError):
    pass
