"""Exception types shared across the package."""


class DislocfluxError(Exception):
    """Base class for all package-specific errors."""


class DomainError(DislocfluxError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DislocfluxError, ValueError):
    """Evaluation requested at a pole (e.g. Kummer M with b a non-positive integer)."""


class AccuracyError(DislocfluxError, ArithmeticError):
    """The error estimate of a result exceeds its contract."""


class InvalidParams(DislocfluxError, ValueError):
    """Physical or configuration parameters violate an invariant."""


class NoRootsFound(DislocfluxError, RuntimeError):
    """An energy scan window contained no sign change."""


class ScanTooCoarse(DislocfluxError, RuntimeError):
    """Two roots detected inside one scan cell even after one retry at a finer step."""


class RestrictionViolated(DislocfluxError, ValueError):
    """Radial quantum number outside the admissible range set by the missing flux."""


class StateLost(DislocfluxError, RuntimeError):
    """A level present on one side of a finite-difference flux step has no partner."""


class GridTooCoarse(DislocfluxError, RuntimeError):
    """Finite-difference Richardson error estimate exceeds tolerance."""


class DomainNotConverged(DislocfluxError, RuntimeError):
    """Doubling the radial box moved an eigenvalue by more than tolerance."""


class OrderOutOfRange(DislocfluxError, RuntimeError):
    """Fitted convergence order is incompatible with second-order differencing."""


class ParseError(DislocfluxError, ValueError):
    """Configuration file is not valid JSON."""


class ValidationError(DislocfluxError, ValueError):
    """Configuration document violates the schema."""
