"""Exception hierarchy shared by every quatlogic module."""


class QuatError(Exception):
    """Base class for all quatlogic errors."""


class ValueOutOfRange(QuatError, ValueError):
    pass


class ArityMismatch(QuatError, ValueError):
    pass


class ExprSyntaxError(QuatError):
    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class UnknownOperator(ExprSyntaxError):
    pass


class UnboundVariable(QuatError, KeyError):
    def __str__(self):
        return f"unbound variable {self.args[0]!r}"


class TooManyVariables(QuatError):
    pass


class TooManyInputs(QuatError):
    pass


class IncompleteAssignment(QuatError):
    pass


class MalformedTable(QuatError):
    pass


class NetlistSyntaxError(QuatError):
    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NetlistError(QuatError):
    """Raised when a netlist fails validation; carries every issue found."""

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))
