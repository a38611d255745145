"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Malformed permutation, subset, chain or parameter."""


class CapacityError(RuntimeError):
    """Requested enumeration exceeds the configured size cap."""


class PreconditionError(ValueError):
    """An input violates a mathematical precondition (monotonicity, coverage, ...)."""
