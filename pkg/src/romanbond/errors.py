from __future__ import annotations


class RomanBondError(Exception):
    """Base class for all errors raised by this package."""


class InvalidVertex(RomanBondError, ValueError):
    pass


class SelfLoopRejected(RomanBondError, ValueError):
    pass


class NotAnEdge(RomanBondError, ValueError):
    pass


class InvalidFamilyParams(RomanBondError, ValueError):
    pass


class NotApplicable(RomanBondError):
    """A closed form or bound was requested outside its hypothesis."""


class OracleTooLarge(RomanBondError, ValueError):
    pass


class GraphFormatError(RomanBondError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ParseError(GraphFormatError):
    """Malformed DIMACS CNF input."""


class Not3Sat(RomanBondError, ValueError):
    pass


class ReductionInvariantViolated(RomanBondError):
    def __init__(self, claim: str, detail: str = ""):
        self.claim = claim
        self.detail = detail
        super().__init__(f"{claim}: {detail}" if detail else claim)


class BudgetExceeded(RomanBondError):
    """A search hit its node or depth limit.

    ``lower`` and ``upper`` bracket the true value as far as the search got;
    ``upper`` is None when nothing is known from above.
    """

    def __init__(self, message: str, lower: int, upper: int | None):
        self.lower = lower
        self.upper = upper
        super().__init__(f"{message} (bounds: [{lower}, {upper if upper is not None else 'inf'}])")
