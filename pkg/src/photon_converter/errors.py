"""Exception types shared across the package."""


class DegenerateDriveError(ValueError):
    """Raised when the drive is switched off *and* resonant (eta = 0, detuning = 0).

    The dressed basis is arbitrary in that case, so the mixing angle is undefined.
    """


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class OutOfBandError(DomainError):
    """A frequency lies at or beyond the edge of the waveguide band."""


class BandEdgeError(DomainError):
    """A wavevector falls inside the guard zone around a band edge."""


class RootFindingError(RuntimeError):
    """Bisection failed to converge to the requested tolerance."""


class PropagationError(RuntimeError):
    """Time evolution did not meet its error budget.

    Attributes
    ----------
    achieved : float
        The error that was actually reached.
    """

    def __init__(self, message, achieved):
        super().__init__(f"{message} (achieved error {achieved:.3e})")
        self.achieved = achieved


class PrematureMeasurementError(RuntimeError):
    """Flows were requested while the atom still holds the excitation."""


class ParameterMismatchError(ValueError):
    """Analytic and oracle runs do not describe the same physical situation."""


class ConfigError(ValueError):
    """A sweep / oracle configuration failed validation."""
