"""Exception hierarchy shared across the library.

Numerical routines raise rather than returning NaN: a pole, a branch cut,
or a quadrature that failed to converge is a caller error or a diagnostic,
never a silent result.
"""


class WedgeworksError(Exception):
    """Base class for all library errors."""


class PoleError(WedgeworksError):
    """Function evaluated at a pole of its parameter or argument domain."""


class DomainError(WedgeworksError):
    """Argument outside the mathematical domain of the operation."""


class BranchCutError(WedgeworksError):
    """Evaluation on a branch cut without a side being specified."""


class ConvergenceError(WedgeworksError):
    """A series ladder or quadrature failed to reach the requested tolerance."""

    def __init__(self, msg, estimate=None, residual=None):
        super().__init__(msg)
        self.estimate = estimate
        self.residual = residual


class DegenerateFrequencyError(WedgeworksError):
    """Closed form is distributionally divergent at coincident frequencies.

    Callers should fall back to the wavepacket-smeared quadrature oracle.
    """


class ValidationError(WedgeworksError):
    """A scenario configuration failed validation (CLI exit code 2)."""
