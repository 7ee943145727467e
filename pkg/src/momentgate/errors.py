"""Exception hierarchy."""


class MomentGateError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(MomentGateError, ValueError):
    """Arguments violate an operation's preconditions."""


class InputError(InvalidInput):
    """A job or robot-description file could not be ingested.

    ``path`` locates the offending field (``$[0].inertia.ixx``), ``line`` the
    source line when the decoder knows it.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = []
        if path:
            where.append(path)
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class NumericalFailure(MomentGateError, ArithmeticError):
    """An iterative routine did not converge within its budget."""


class InfeasibleInertia(MomentGateError, ValueError):
    """An inertia tensor violates the triangle inequalities."""


class NoRepair(MomentGateError):
    """No mass can make the center feasible (center leaves a degenerate plane)."""
