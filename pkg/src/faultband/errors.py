"""Exception types shared across the toolkit."""


class FaultBandError(Exception):
    """Base class for all toolkit errors."""


class ConfigurationError(FaultBandError):
    """A parameter set, bounds box, or CLI/config-file option is unusable."""


class InvalidInputError(FaultBandError):
    """Input data violates a precondition (too short, non-finite, out of band)."""


class DegenerateInputError(InvalidInputError):
    """Input is structurally valid but carries no usable information
    (zero variance, zero energy)."""


class ParseError(InvalidInputError):
    """A data file could not be parsed; the message names the offending
    row or chunk."""


class InitializationError(FaultBandError):
    """Optimizer could not build a usable starting population."""
