"""Exception types shared across the package."""


class FactorCodeError(Exception):
    """Base class for all errors raised by this package."""


class PresentationError(FactorCodeError):
    """Malformed or invalid presentation input.

    ``line`` is the 1-based line number in the source text when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class WordError(FactorCodeError):
    """A word is malformed, uses unknown symbols, or lies outside the image language."""


class BudgetExceeded(FactorCodeError):
    """A state or size budget was exhausted before a verdict could be reached."""


class InstanceTooLarge(FactorCodeError):
    """An exact combinatorial subproblem exceeds its configured cutoff."""


class InfeasibleSpec(FactorCodeError, ValueError):
    """Random-instance parameters that admit no irreducible graph."""
