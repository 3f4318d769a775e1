"""Exception types raised across the package."""


class PipedistError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatchError(PipedistError):
    """Operands have incompatible dimensions."""


class EmptyPolytopeError(PipedistError):
    """The halfspace system has no solution."""


class UnboundedPolytopeError(PipedistError):
    """The halfspace system admits an unbounded direction."""


class LambdaOutOfRangeError(PipedistError):
    """Interpolation parameter outside [0, 1]."""


class ParameterOutOfRangeError(PipedistError):
    """Pipe parameter outside [0, m]."""


class NumericalFailureError(PipedistError):
    """The LP solver failed to converge (cycling or degeneracy)."""


class InfeasibleRegionError(PipedistError):
    """A region assumed nonempty turned out infeasible."""


class UnboundedNormError(PipedistError):
    """Norm maximization is unbounded over the given region."""


class DegeneratePipesError(PipedistError):
    """Pipe inputs fail validation for a distance computation."""


class BudgetExceededError(PipedistError):
    """A brute-force enumeration would exceed its combinatorial budget."""


class ParseError(PipedistError):
    """Malformed instance file."""

    def __init__(self, message, pipe=None, sample=None):
        super().__init__(message)
        self.pipe = pipe
        self.sample = sample


class ValidationError(PipedistError):
    """Well-formed instance file with invalid content."""

    def __init__(self, message, pipe=None, sample=None):
        super().__init__(message)
        self.pipe = pipe
        self.sample = sample
