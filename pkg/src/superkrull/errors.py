"""Exception hierarchy shared by the library and the command line tool."""


class SuperKrullError(Exception):
    """Base class for all library errors."""


class RingMismatchError(SuperKrullError, ValueError):
    """Operands live in different rings (field or variable count differ)."""


class HomogeneityError(SuperKrullError, ValueError):
    """A relation or ideal generator is not parity-homogeneous."""


class ScopeError(SuperKrullError):
    """The input is outside the class of presentations an operation handles."""


class ZeroAlgebraError(ScopeError):
    """The presented superalgebra is zero (1 lies in the relation ideal)."""


class ParseError(SuperKrullError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class InvariantViolation(SuperKrullError, AssertionError):
    """An internal consistency check failed; indicates a bug."""
