"""wedgeworks: mode-overlap calculus for fields seen from superposed frames."""

from .errors import (
    BranchCutError,
    ConvergenceError,
    DegenerateFrequencyError,
    DomainError,
    PoleError,
    ValidationError,
    WedgeworksError,
)

from . import detectors, diamond, oscint, quadrature, rindler, specfun, superpose

__version__ = "0.1.0"
