"""Exception types shared across the package."""


class WmultError(Exception):
    """Base class for all errors raised by this package."""


class InvalidConeError(WmultError):
    """Malformed counting cone (nonpositive weight, inconsistent lengths)."""


class InvalidFamilyError(WmultError):
    """Malformed monomial basis family."""


class StabilizationError(WmultError):
    """Finite-difference extraction failed its stabilization check."""


class EmptySupportError(WmultError):
    """An operation required a nonzero divisor but the support was empty."""


class ValidationError(WmultError):
    """Model or parameter values violate their defining constraints."""
