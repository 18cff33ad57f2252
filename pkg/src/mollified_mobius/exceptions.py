"""Exception types shared by every module."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(RuntimeError):
    """A request exceeds a configured size cap (sieve limit, breakpoint count, ...)."""


class ConsistencyError(ArithmeticError):
    """An internal identity that must hold exactly failed; indicates a bug."""
