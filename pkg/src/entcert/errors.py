"""Exception hierarchy shared by the whole package."""


class InvariantViolation(ValueError):
    """An input failed a documented invariant (shape, Hermiticity, trace, ...).

    The message always names the violated invariant and by how much it missed.
    """


class DimensionMismatch(InvariantViolation):
    """Operands have incompatible shapes or subsystem dimensions."""


class NumericalError(RuntimeError):
    """An underlying numerical routine failed to converge."""
