"""Exception hierarchy shared by all modules.

The CLI reports errors by class name, so names here are part of the
document format.
"""


class ReebSpectraError(ValueError):
    """Base class for domain errors raised by this package."""

    def __init__(self, message: str, path: str | None = None):
        super().__init__(message)
        self.path = path


class IndistinguishableAtPrecision(ReebSpectraError):
    pass


class RegistryMismatch(ReebSpectraError):
    pass


class InvalidRegistry(ReebSpectraError):
    pass


class NonPositiveInput(ReebSpectraError):
    pass


class DivisionByZero(ReebSpectraError, ZeroDivisionError):
    pass


class InvalidSpectrum(ReebSpectraError):
    pass


class InvalidSeifertInvariants(ReebSpectraError):
    pass


class InvalidLensParameters(ReebSpectraError):
    pass


class PreconditionViolated(ReebSpectraError):
    pass


class InvalidModel(ReebSpectraError):
    pass


class NotBesse(ReebSpectraError):
    pass


class ManifoldMismatch(ReebSpectraError):
    pass


class InvalidOrbitSet(ReebSpectraError):
    pass
