"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: validation problems exit 1, numerical
failures exit 2, singular/degenerate configurations exit 3.
"""


class RexoscError(Exception):
    """Base class for all package errors."""


class DomainError(RexoscError, ValueError):
    """Input outside the mathematical domain of an operation."""


class ShapeError(RexoscError, ValueError):
    """Array/sequence dimensions inconsistent."""


class BoundaryError(RexoscError, IndexError):
    """Stencil index too close to a grid boundary."""


class FlavorError(RexoscError, ValueError):
    """Coupling flavor incompatible with the requested operation."""


class SingularityError(RexoscError, ValueError):
    """Evaluation at (or across) a pole of a rational potential term."""


class DegenerateTransformError(RexoscError, ValueError):
    """Decoupling transform undefined (vanishing discriminant)."""


class DegenerateDirectionError(RexoscError, ValueError):
    """Coupling direction undefined (normalization vanishes)."""


class NumericalFailureError(RexoscError, RuntimeError):
    """Iterative numerical routine failed to converge."""


class IndeterminateError(RexoscError, RuntimeError):
    """A measured quantity could not be resolved (fit residual too large)."""
