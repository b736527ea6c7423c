"""Exception hierarchy.

Every error raised by the library derives from :class:`TroplineError`.  The
CLI maps :class:`SchemaError` to exit code 2, :class:`PreconditionError` to
exit code 3 and :class:`Infeasible` to exit code 4.
"""


class TroplineError(Exception):
    """Base class for all library errors."""


class SchemaError(TroplineError):
    """A document does not match its schema."""

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class PreconditionError(TroplineError):
    """An operation was called on input outside its domain."""


class ZeroVector(PreconditionError):
    pass


class ConeNotInFan(PreconditionError):
    pass


class NotAFacetPair(PreconditionError):
    pass


class NotAFan(PreconditionError):
    pass


class NonSimplicialFan(PreconditionError):
    pass


class NotARefinement(PreconditionError):
    pass


class IncomparableModels(PreconditionError):
    pass


class DimensionZeroPolytope(PreconditionError):
    pass


class DimensionMismatch(PreconditionError):
    pass


class NotAWall(PreconditionError):
    pass


class WrongCodimension(PreconditionError):
    pass


class UnbalancedInput(PreconditionError):
    pass


class FunctionNotLinearOnCone(PreconditionError):
    pass


class EmptyPolytope(PreconditionError):
    pass


class UnboundedOnSupport(PreconditionError):
    pass


class NotCartier(PreconditionError):
    """``D`` is not Cartier on ``cone``.

    ``solution`` holds the rational solution of the local system when one
    exists (so the divisor is only Q-Cartier there), otherwise ``None``.
    """

    def __init__(self, cone, solution=None):
        self.cone = tuple(cone)
        self.solution = None if solution is None else tuple(solution)
        if solution is None:
            msg = f"divisor is not Cartier on cone {self.cone}: local system inconsistent"
        else:
            shown = ", ".join(str(x) for x in solution)
            msg = f"divisor is not Cartier on cone {self.cone}: only rational solution ({shown})"
        super().__init__(msg)


class Infeasible(TroplineError):
    """A linear system has no (integral) solution."""

    def __init__(self, message, rational_solution=None):
        self.rational_solution = rational_solution
        super().__init__(message)


class UnderdeterminedWarning(UserWarning):
    """Homogeneous solutions strictly contain the principal divisors."""
