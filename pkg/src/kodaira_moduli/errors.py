"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """Mathematical precondition violated, e.g. a negative discriminant
    where the construction needs ``Delta >= 0``."""


class InvariantBreach(RuntimeError):
    """An internal invariant failed.  Reaching this is a bug."""
