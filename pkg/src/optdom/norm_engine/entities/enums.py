"""
Enums shared by the norm engine.

Method: provenance of a NormEstimate bracket.
Verdict: evidence verdict of a boundedness analysis.
SeriesVerdict: convergence verdict of a partial-sum series.
"""

from enum import Enum


class Method(Enum):
    """How a NormEstimate was obtained."""
    EXACT = "exact"
    EXACT_SIGN_ENUMERATION = "exact-sign-enumeration"
    NONNEGATIVE_REDUCTION = "nonnegative-reduction"
    SUBSET_SUP_SANDWICH = "subset-sup-sandwich"
    LOCAL_SEARCH = "local-search"
    TRUNCATED_COLUMN = "truncated-column"
    SUM_SOLVER = "sum-solver"


class Verdict(Enum):
    """Finite-truncation evidence about a supremum over all n."""
    BOUNDED = "bounded-evidence"
    UNBOUNDED = "unbounded-evidence"
    INCONCLUSIVE = "inconclusive"


class SeriesVerdict(Enum):
    """Convergence of a series of nonnegative terms."""
    CONVERGES = "converges"
    DIVERGES = "diverges"
    INCONCLUSIVE = "inconclusive"
