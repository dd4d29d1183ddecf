"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input does not satisfy a geometric or shape precondition."""


class NumericalError(ArithmeticError):
    """A computation drifted off the manifold or produced non-finite values."""
