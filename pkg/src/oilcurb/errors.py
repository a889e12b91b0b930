"""Exception hierarchy shared by all oilcurb modules."""


class OilcurbError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(OilcurbError, ValueError):
    """Input data failed validation (bad file rows, nonpositive quantities, ...)."""


class DomainError(OilcurbError, ValueError):
    """An argument lies outside the domain of the function."""


class CalibrationError(OilcurbError):
    """Model parameters cannot be calibrated or are degenerate."""


class SolverError(OilcurbError, RuntimeError):
    """A root or fixed-point solve failed to bracket or converge."""
