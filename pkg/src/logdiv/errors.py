"""Exception types shared across the package."""


class LogdivError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(LogdivError):
    """Polynomial or input-document text that does not match the grammar."""


class ZeroOrConstantInput(LogdivError):
    """An operation that needs a nonconstant polynomial got 0 or a constant."""


class NotHomogeneous(LogdivError):
    """Polynomial is not homogeneous for the given weights.

    Carries the set of weighted degrees that actually occur.
    """

    def __init__(self, degrees):
        self.degrees = frozenset(degrees)
        super().__init__(f"not weighted homogeneous, degrees {sorted(self.degrees)}")


class NonReduced(LogdivError):
    """The divisor equation has a repeated factor."""


class NotFree(LogdivError):
    """No free basis of the logarithmic derivation module was found."""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


class NotLinear(LogdivError):
    """Operation defined only for linear free divisors."""


class NotWeightedHomogeneous(LogdivError):
    """Operation defined only for weighted homogeneous divisors."""


class BudgetExceeded(LogdivError):
    """A step or weight budget ran out before the computation finished."""


class InternalInconsistency(LogdivError):
    """A mathematically guaranteed condition failed; indicates a bug upstream."""
