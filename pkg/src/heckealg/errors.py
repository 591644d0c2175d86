"""Exception types shared across the package."""


class HeckeError(Exception):
    """Base class for errors raised by this package."""


class ParseError(HeckeError, ValueError):
    """Malformed text input (partition or element literals, bad config)."""


class BudgetExceededError(HeckeError):
    """An enumeration would exceed its candidate budget.

    Raised up front, before any partial work, so callers never see a
    silently truncated count.
    """

    def __init__(self, needed: int, budget: int, what: str = "subgroup bases"):
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"enumeration of {what} needs {needed} candidates, budget is {budget}"
        )


class VerificationError(HeckeError):
    """An exact identity that must hold failed.

    Every occurrence is a genuine defect (or a false theorem): inexact
    division where divisibility is guaranteed, a count disagreeing with
    its closed form, or a non-integer solution to an integral system.
    """
