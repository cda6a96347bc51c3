"""Exception taxonomy shared across the package.

Every error carries a stable ``code`` string; the command line front end maps
codes to exit statuses and prints them in structured form on stderr.
"""

from __future__ import annotations


class HurwitzlabError(Exception):
    """Base class for all structured errors raised by this package."""

    code = "ERROR"


class DimensionMismatchError(HurwitzlabError):
    """Operands live in different ambient dimensions."""

    code = "DIMENSION_MISMATCH"


class NonZeroSumError(HurwitzlabError):
    """An evaluation point does not lie on the zero-sum hyperplane."""

    code = "NONZERO_SUM"


class UnderdeterminedError(HurwitzlabError):
    """Interpolation matrix has deficient column rank; supply more points."""

    code = "UNDERDETERMINED"


class InconsistentSystemError(HurwitzlabError):
    """No polynomial of the requested degree matches the supplied values."""

    code = "INCONSISTENT"


class InvalidProfileError(HurwitzlabError):
    """A ramification profile violates its invariants."""

    code = "INVALID_PROFILE"


class NegativeBranchCountError(HurwitzlabError):
    """2g - 2 + n < 0: no cover exists; callers treat the count as zero."""

    code = "NEGATIVE_R"


class BudgetExceededError(HurwitzlabError):
    """The enumeration would exceed the configured leaf budget."""

    code = "BUDGET_EXCEEDED"


class OnWallError(HurwitzlabError):
    """A lattice point lies on a resonance wall (some subset sum vanishes)."""

    code = "ON_WALL"

    def __init__(self, wall, message: str | None = None):
        self.wall = wall
        super().__init__(message or f"point lies on wall {wall}")


class SamplingBudgetExceededError(HurwitzlabError):
    """Chamber sampling ran out of candidate evaluations."""

    code = "SAMPLING_BUDGET_EXCEEDED"


class AdjacencyNotFoundError(HurwitzlabError):
    """No point realizing the flipped signature was found within budget."""

    code = "ADJACENCY_NOT_FOUND"


class NotAdjacentError(HurwitzlabError):
    """Two chamber signatures differ somewhere other than the requested wall."""

    code = "NOT_ADJACENT"


class NotPolynomialError(HurwitzlabError):
    """Held-out validation failed: sampled values are not polynomial."""

    code = "NOT_POLYNOMIAL"


class UnstableCaseError(HurwitzlabError):
    """Requested fit is known not to be polynomial (two-part genus zero)."""

    code = "UNSTABLE_CASE"


class BlockUnbalancedError(HurwitzlabError):
    """A split block of a profile does not sum to zero."""

    code = "BLOCK_UNBALANCED"
