"""Exception hierarchy. The CLI maps every ``IrateError`` to exit status 1."""


class IrateError(Exception):
    pass


class ParseError(IrateError, ValueError):
    """Malformed or inconsistent input document."""


class DomainError(IrateError, ValueError):
    """Input is well-formed but violates an operation's precondition."""


class RateConvergenceError(IrateError, ArithmeticError):
    """Power iteration hit its iteration cap; ``estimate`` holds the best value seen."""

    def __init__(self, message: str, estimate: float, residual: float):
        super().__init__(message)
        self.estimate = estimate
        self.residual = residual
