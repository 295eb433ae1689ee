"""Exception hierarchy shared by the library and the command line."""


class QuaternionError(Exception):
    """Base class for all errors raised by qfcalc."""


class DomainError(QuaternionError, ValueError):
    """An argument lies outside the domain of an operation."""


class SliceViolation(DomainError):
    """A function value that must lie in the slice C_m does not."""


class StructureError(QuaternionError, ValueError):
    """An object lacks the algebraic structure an operation relies on."""


class PreconditionError(QuaternionError, ValueError):
    """An operator fails a precondition such as normality or commutation."""


class ConvergenceError(QuaternionError, ArithmeticError):
    """A numerical decomposition failed its residual check."""


class DSLError(QuaternionError, ValueError):
    """A function description string could not be parsed."""


class ParseError(QuaternionError, ValueError):
    """An input file or flag value is malformed."""
