"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain where the quantity is defined."""


class CapacityError(ValueError):
    """Request exceeds a documented size bound."""


class UsageError(ValueError):
    """Arguments are individually valid but inconsistent with each other."""


class ErfcxOverflowError(OverflowError):
    """``2*exp(w**2)`` in the reflection formula is not representable.

    ``exponent`` carries the offending ``w**2`` so callers can record the
    failure instead of crashing.
    """

    def __init__(self, exponent, index=None):
        self.exponent = exponent
        self.index = index
        where = "" if index is None else f" at index {index}"
        super().__init__(f"erfcx reflection overflows: Re(w^2) = {exponent.real:.6g}{where}")


class QuadratureOverflowError(OverflowError):
    """Integrand was not finite at a quadrature node."""

    def __init__(self, node_index, node):
        self.node_index = node_index
        self.node = node
        super().__init__(f"integrand not finite at node {node_index} (t = {node!r})")
