"""Exception types raised across the package."""


class CrossbandError(Exception):
    """Base class for all package errors."""


class ModeError(CrossbandError, ValueError):
    """Unknown, duplicate or coinciding mode labels."""


class DomainError(CrossbandError, ValueError):
    """A scalar argument lies outside its allowed range."""


class ParameterError(CrossbandError, ValueError):
    """An inconsistent set of protocol or coupler parameters."""


class SingularConfigurationError(ParameterError):
    """Coupler with zero probe-side loss but unequal reflectivities."""


class DivergenceError(ParameterError):
    """Cooperativity at or above the direct-entanglement threshold."""


class PhysicalityError(CrossbandError, ValueError):
    """Covariance matrix violating the uncertainty principle."""

    def __init__(self, message, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class PurityError(CrossbandError, ValueError):
    """A pure-state measure was requested on a mixed state."""
