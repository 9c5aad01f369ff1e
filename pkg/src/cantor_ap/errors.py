"""Exception hierarchy shared by the library and the CLI exit-code mapping."""

from __future__ import annotations


class CantorAPError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(CantorAPError, ValueError):
    """An argument violates an operation's precondition."""


class BudgetExceeded(CantorAPError):
    """A global construction would exceed the caller's component budget."""

    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"construction needs {needed} components, budget is {budget}; "
            "use the windowed constructors instead"
        )


class NoSuchGapLength(CantorAPError):
    """No construction stage removes gaps of the requested exact length."""


class BaseCaseFailed(CantorAPError):
    """[0, 1] is not 0-good for the requested family."""

    def __init__(self, result):
        self.result = result
        super().__init__(
            f"[0,1] is not 0-good: {result.witness_count} witnesses, "
            f"threshold {result.threshold}"
        )


class RefinementFailed(CantorAPError):
    """No block of a good interval refines to the next level.

    ``chain`` holds the goodness results certified before the failure and
    ``block_counts`` the surviving count of every scanned block.
    """

    def __init__(self, k: int, block_counts: list[int], threshold: int,
                 r: int, r_max: int, chain=None):
        self.k = k
        self.block_counts = block_counts
        self.threshold = threshold
        self.r = r
        self.r_max = r_max
        self.chain = list(chain or [])
        if r <= r_max:
            why = (f"r={r} is inside the guaranteed range (max {r_max}); "
                   "this indicates an implementation defect")
        else:
            why = f"r={r} exceeds the guaranteed range (max {r_max})"
        best = max(block_counts) if block_counts else 0
        super().__init__(
            f"refinement from level {k} failed: best block keeps {best} of "
            f"threshold {threshold} over {len(block_counts)} blocks; {why}"
        )
