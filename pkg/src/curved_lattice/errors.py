"""Exception types raised across the package."""


class CurvedLatticeError(Exception):
    """Base class for all package errors."""


class DomainError(CurvedLatticeError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class EvanescentError(DomainError):
    """The effective wavenumber squared is not positive."""


class GeometryError(CurvedLatticeError, ValueError):
    """An emitter arrangement cannot be realized on the requested surface."""


class ConvergenceError(CurvedLatticeError, ArithmeticError):
    """A series did not reach its tolerance, or lost too many digits.

    Parameters
    ----------
    message : str
        Human readable description.
    terms_used : int
        Number of series terms summed before giving up.
    """

    def __init__(self, message, terms_used=0):
        super().__init__(f"{message} (after {terms_used} terms)")
        self.terms_used = terms_used


class NumericalError(CurvedLatticeError, ArithmeticError):
    """Eigensolver failure or a passivity violation in a computed spectrum."""


class ConfigError(CurvedLatticeError, ValueError):
    """Invalid run configuration."""
