"""Exception types raised by the package."""


class InvalidArgumentError(ValueError):
    """An input violates an operation's precondition."""


class NumericOverflowError(ArithmeticError):
    """A computed quantity is not finite."""


class ConsistencyError(RuntimeError):
    """An internal self-check failed (e.g. a non-monic erasure polynomial)."""
