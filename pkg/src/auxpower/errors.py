"""Exception hierarchy.

Everything raised on bad input derives from ``ValueError`` so callers that
only care about "the numbers were wrong" can catch that.
"""


class AuxPowerError(ValueError):
    """Base class for all package errors."""


class InputError(AuxPowerError):
    """Malformed input: wrong shape, non-finite entries, out-of-range values."""


class NotPSDError(InputError):
    """A matrix expected to be positive semi-definite has a negative eigenvalue."""


class IncompatibleCovariancesError(AuxPowerError):
    """The pair (sigma_hat, sigma1) does not admit the square-root transform."""


class AuxNotInformativeError(AuxPowerError):
    """The auxiliary estimator has a larger asymptotic variance than the plain one."""


class DegenerateAlternativeError(AuxPowerError):
    """The alternative coincides with the null (zero mean gap)."""


class AuxValidationError(AuxPowerError):
    """Conditions on (sigma_hat, sigma1) failed; carries the validation report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class RakingDegenerateError(AuxPowerError):
    """A raking cell has zero current weight, so the ratio is undefined."""


class DegenerateDesignError(AuxPowerError):
    """Closed-form raking variance has a vanishing denominator."""


class EmptyConditioningError(AuxPowerError):
    """No observation falls in the conditioning event."""


class DegenerateInformationError(AuxPowerError):
    """The conditional variance is zero, so the auxiliary weight is undefined."""
