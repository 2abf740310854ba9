"""Exception types shared across the package."""


class FinweilError(Exception):
    """Base class for all errors raised by this package."""


class DatumError(FinweilError):
    """A based root datum or Galois twist violates an axiom."""


class ParseError(FinweilError):
    """A textual root-datum description could not be parsed."""


class BoundExceededError(FinweilError):
    """An enumeration exceeded its configured size bound."""


class UnsupportedFactorError(FinweilError):
    """A simple factor is outside the supported classical types."""


class IncompatibleParameterError(FinweilError):
    """Arguments do not satisfy the compatibility equation they require."""
