"""Exception types raised by the package."""


class RingresError(Exception):
    """Base class for all package errors."""


class ConfigurationError(RingresError, ValueError):
    """Invalid body definition, resonance label or run option."""


class NumericError(RingresError, ArithmeticError):
    """A numerical procedure failed to produce a usable result."""


class NonRealFrequencyError(NumericError):
    """Squared mean motion or epicyclic frequency is not positive."""


class NoBracketError(NumericError):
    """Root finder found no sign change in its search window."""


class TruncationOverflowError(NumericError):
    """A series operation would exceed the configured degree bound."""


class InapplicableError(NumericError):
    """Formula preconditions (signs of coefficients) are not met."""


class UnboundedError(NumericError):
    """No saddle bounds the libration island."""


class IntegrationError(NumericError):
    """Energy drift of a fixed-step integration exceeded tolerance."""
