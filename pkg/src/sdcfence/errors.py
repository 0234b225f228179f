"""Exception types raised by the library."""


class GeometryError(Exception):
    """Base class for all library errors."""


class DomainError(GeometryError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class DegenerateError(GeometryError, ValueError):
    """Input collapses to a configuration the constructions exclude."""


class NumericalError(GeometryError, ArithmeticError):
    """A numerical search failed to produce a value it is guaranteed to find."""


class JoinError(GeometryError, ValueError):
    """Two curves cannot be concatenated because their endpoints differ."""


class InvalidInput(GeometryError, ValueError):
    """Input data is malformed or violates a stated precondition."""
