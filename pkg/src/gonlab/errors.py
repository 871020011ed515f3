"""Exception hierarchy shared by every gonlab module."""


class GonlabError(Exception):
    """Base class for all library errors."""


class ContractError(GonlabError, ValueError):
    """An argument violates an operation's precondition."""


class GraphSpecError(ContractError):
    """A graph specification string or file could not be parsed."""


class DivisorSyntaxError(ContractError):
    """A divisor literal could not be parsed."""


class GuardExceeded(GonlabError):
    """An exact computation was asked to run beyond its configured size guard."""


class BudgetExceeded(GonlabError):
    """A search ran out of time or candidate budget before reaching a verdict.

    This is an "unknown" outcome and must never be read as "no divisor exists".
    """

    def __init__(self, message, degree=None, partial=None):
        super().__init__(message)
        self.degree = degree
        self.partial = partial


class SearchInconsistency(GonlabError):
    """An exhaustive scan passed a proven upper bound without finding a witness."""
