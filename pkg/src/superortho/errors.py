"""Exception types shared by the engines."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class BudgetExceeded(RuntimeError):
    """A brute-force search would exceed its combinatorial budget.

    Raised instead of truncating, since a pruned search could certify
    the absence of something that is actually present.
    """
