"""Exception hierarchy with the stable error codes reported by the CLI."""


class LogresError(Exception):
    """Base class. Every subclass carries a stable ``code`` and process ``exit_code``."""

    code = "E_INTERNAL_INVARIANT"
    exit_code = 4


class ParseError(LogresError, ValueError):
    code = "E_PARSE"
    exit_code = 2

    def __init__(self, message, pos=None, line=None, column=None):
        self.pos = pos
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        elif pos is not None:
            where.append(f"position {pos}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class NonIsolatedError(LogresError):
    """The germ has no isolated singularity at the origin (or none at all)."""

    code = "E_NONISOLATED"
    exit_code = 3


class NonGenericCoordinateError(LogresError):
    code = "E_NONGENERIC_COORD"
    exit_code = 3


class SpecializationError(LogresError, ArithmeticError):
    """A parametric result has a pole at the requested parameter value."""

    code = "E_SPECIALIZATION"
    exit_code = 3


class OutOfScopeError(LogresError):
    code = "E_OUT_OF_SCOPE"
    exit_code = 3


class NotIntegrallyClosedError(OutOfScopeError):
    """f^2 is not in (f*J + J^2): no integral dependence relation of degree two."""


class InvariantViolation(LogresError, AssertionError):
    code = "E_INTERNAL_INVARIANT"
    exit_code = 4


class InconsistentInvariantsError(InvariantViolation):
    pass


class BoundExceededError(InvariantViolation):
    pass


class PreconditionError(InvariantViolation):
    """An operation was called on data outside its documented domain."""


class MalformedScalarError(LogresError, ValueError):
    code = "E_PARSE"
    exit_code = 2


ERROR_CODES = (
    "E_NONISOLATED",
    "E_NONGENERIC_COORD",
    "E_SPECIALIZATION",
    "E_PARSE",
    "E_INTERNAL_INVARIANT",
    "E_OUT_OF_SCOPE",
)
