"""
Truncation-aware access to an infinite matrix: columns, rows, Mx, column norms.
"""

import logging
import math
from typing import Dict, List

from optdom.norm_engine.entities.enums import Method
from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.norm_estimate import NormEstimate
from optdom.norm_engine.entities.space_spec import Lq, SpaceSpec, WeightedLq
from optdom.norm_engine.errors import InvalidArgumentError, ZeroColumnError
from optdom.norm_engine.seqspace.norms import norm, quasinorm_constant

logger = logging.getLogger(__name__)


def column(M: MatrixOperator, j: int, n: int) -> FiniteVector:
    """C_j truncated to rows 1..n, canonical."""
    _check_positive(j=j, n=n)
    last = n
    if M.column_extent is not None:
        last = min(n, M.column_extent(j))
    col = FiniteVector.from_pairs((i, M.coefficient(i, j)) for i in range(1, last + 1))
    if col.is_zero():
        logger.warning("Column %d of '%s' vanishes on rows 1..%d.", j, M.name, n)
    return col


def row(M: MatrixOperator, i: int, n: int) -> FiniteVector:
    """F_i truncated to columns 1..n, canonical."""
    _check_positive(i=i, n=n)
    last = n
    if M.row_extent is not None:
        last = min(n, M.row_extent(i))
    return FiniteVector.from_pairs((j, M.coefficient(i, j)) for j in range(1, last + 1))


def apply(M: MatrixOperator, x: FiniteVector, n_out: int) -> FiniteVector:
    """First n_out coordinates of Mx = (Σ_j a_ij x_j)_i, compensated per row."""
    _check_positive(n_out=n_out)
    if x.is_zero():
        return FiniteVector()
    rows = []
    for i in range(1, n_out + 1):
        terms = [M.coefficient(i, j) * v for j, v in x]
        rows.append((i, math.fsum(terms)))
    return FiniteVector.from_pairs(rows)


def column_norm(M: MatrixOperator, j: int, E: SpaceSpec, n: int, use_tail: bool = True) -> NormEstimate:
    """
    Bracket of ‖C_j‖_E from the rows 1..n.

    The bracket is closed when C_j is known to vanish below row n, or when a
    column tail model is declared (and use_tail is set); it is open above
    otherwise.
    """
    truncated = norm(E, column(M, j, n))
    if M.column_is_within(j, n):
        return NormEstimate.exact(truncated, Method.EXACT, f"column {j} supported in rows 1..{n}")
    if use_tail and M.column_tail is not None and M.column_tail.applies_to(E):
        tail = M.column_tail.bound(n)
        upper = combine_disjoint(E, truncated, tail)
        return NormEstimate.bracket(truncated, upper, Method.TRUNCATED_COLUMN,
                                    f"rows 1..{n} plus declared {M.column_tail.kind} tail")
    return NormEstimate.bracket(truncated, math.inf, Method.TRUNCATED_COLUMN,
                                f"rows 1..{n}; open above (no column tail used)")


def column_norms(M: MatrixOperator, E: SpaceSpec, n_cols: int, n_E: int, use_tail: bool = True) -> List[NormEstimate]:
    """column_norm for j = 1..n_cols, ordered by j."""
    return [column_norm(M, j, E, n_E, use_tail) for j in range(1, n_cols + 1)]


def operator_norm_l1(M: MatrixOperator, E: SpaceSpec, n: int, n_E: int, use_tail: bool = True) -> NormEstimate:
    """‖M_n‖_{ℓ¹→E} = max_{j<=n} ‖C_j‖_E (extreme points of the ℓ¹ ball are ±e_j)."""
    estimates = column_norms(M, E, n, n_E, use_tail)
    lower = max(e.lower for e in estimates)
    upper = max(e.upper for e in estimates)
    if all(e.is_exact for e in estimates):
        return NormEstimate.exact(lower, Method.EXACT, f"max of {n} exact column norms")
    return NormEstimate.bracket(lower, upper, Method.TRUNCATED_COLUMN, f"max of {n} column brackets")


def check_nonzero_columns(M: MatrixOperator, n_cols: int, n_E: int) -> None:
    """Raise ZeroColumnError for the first column vanishing on rows 1..n_E."""
    for j in range(1, n_cols + 1):
        if column(M, j, n_E).is_zero():
            raise ZeroColumnError(
                f"Column {j} of '{M.name}' vanishes on rows 1..{n_E}; every column must be nonzero.", j
            )


def combine_disjoint(E: SpaceSpec, head: float, tail: float) -> float:
    """Norm bound for the sum of two disjointly supported pieces."""
    if isinstance(E, (Lq, WeightedLq)):
        if math.isinf(E.q):
            return max(head, tail)
        return (head ** E.q + tail ** E.q) ** (1.0 / E.q)
    return quasinorm_constant(E) * (head + tail)


def _check_positive(**values: int) -> None:
    for name, value in values.items():
        if value < 1:
            raise InvalidArgumentError(f"{name} must be >= 1, got {value}.")


def describe_matrix(M: MatrixOperator) -> Dict[str, object]:
    """JSON-ready description used in reports."""
    return {
        "name": M.name,
        "nonnegative": M.nonnegative,
        "spec": M.spec,
        "column_tail": M.column_tail.kind if M.column_tail else None,
        "column_decay": M.column_decay.kind if M.column_decay else None,
        "row_decay": M.row_decay.kind if M.row_decay else None,
    }
