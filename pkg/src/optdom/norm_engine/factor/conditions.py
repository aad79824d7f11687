"""
Sufficient conditions for p-th power factorability.

- (I): Σ_j ‖C_j‖_E^{p'} < ∞ (any codomain).
- rows: Σ_i ‖F_i‖₁^q < ∞ for a nonnegative matrix into ℓ^q, which gives
  1/p-power domination.

Both are judged from partial sums at doubling points; a declared decay model
bounding the remainder upgrades the verdict to a certified one.
"""

import logging
import math
from typing import Optional

from optdom.norm_engine.analysis.metrics import doubling_points, growth_fit, partial_sums, series_verdict
from optdom.norm_engine.entities.enums import SeriesVerdict
from optdom.norm_engine.entities.factorability_report import (
    CERTIFIED_NOTE,
    EVIDENCE_NOTE,
    ConditionIResult,
    GrowthFit,
    RowsConditionResult,
)
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.space_spec import SpaceSpec, is_banach
from optdom.norm_engine.errors import PreconditionError
from optdom.norm_engine.matop.operations import column_norms, row
from optdom.norm_engine.seqspace.duals import conjugate_exponent

logger = logging.getLogger(__name__)

SUFFICIENT_ONLY = "condition (I) is sufficient only"
DOMINATION_NOTE = "r-power domination (r = 1/p) certified by sufficient condition"


def condition_I(M: MatrixOperator, E: SpaceSpec, p: float, n: int, use_tail: bool = True, *,
                n_E: int) -> ConditionIResult:
    """Partial sums of ‖C_j‖_E^{p'} for j <= n, with the declared column decay as tail."""
    if not p > 1:
        raise PreconditionError(f"condition (I) needs p > 1, got {p}.")
    pc = conjugate_exponent(p)
    if n < 1:
        return ConditionIResult(p=p, p_conjugate=pc, n=0, column_norms=[], partial_sums=[],
                                partial_sums_upper=[], tail_bound=None, certified=False,
                                verdict=SeriesVerdict.INCONCLUSIVE, hoelder_bound=0.0,
                                fit=None, note=f"{SUFFICIENT_ONLY}; empty series")

    estimates = column_norms(M, E, n, n_E, use_tail)
    lower = partial_sums(e.lower ** pc for e in estimates)
    upper = partial_sums(e.upper ** pc if math.isfinite(e.upper) else math.inf for e in estimates)
    fit = _fit(lower)
    verdict = series_verdict(fit)

    tail_bound = None
    certified = False
    decay = M.column_decay
    if use_tail and decay is not None and decay.applies_to(E):
        tail_bound = decay.series_tail(n, pc)
        certified = math.isfinite(tail_bound) and math.isfinite(upper[-1])
    if certified:
        verdict = SeriesVerdict.CONVERGES

    hoelder_bound = lower[-1] ** (1.0 / pc) if is_banach(E) else math.inf
    note = f"{SUFFICIENT_ONLY}; " + (CERTIFIED_NOTE if certified else EVIDENCE_NOTE)
    logger.info("Condition (I) for '%s', p=%g: Σ_{j<=%d} ‖C_j‖^%g = %.10g (%s)",
                M.name, p, n, pc, lower[-1], verdict.value)
    return ConditionIResult(
        p=p,
        p_conjugate=pc,
        n=n,
        column_norms=estimates,
        partial_sums=lower,
        partial_sums_upper=upper,
        tail_bound=tail_bound,
        certified=certified,
        verdict=verdict,
        hoelder_bound=hoelder_bound,
        fit=fit,
        note=note,
    )


def rows_condition(M: MatrixOperator, q: float, n: int, *, p: Optional[float] = None,
                   n_cols: Optional[int] = None) -> RowsConditionResult:
    """
    Partial sums of ‖F_i‖₁^q for i <= n (rows cut at n_cols columns, default n).

    With p given, also reports (Σ_i ‖F_i‖₁^q)^{(p-1)/q}, the Hölder-chain
    bound of the 1/p-power domination constant.
    """
    if not M.nonnegative:
        raise PreconditionError(f"The rows condition needs a declared-nonnegative matrix; '{M.name}' is not.")
    if not (q >= 1 and math.isfinite(q)):
        raise PreconditionError(f"The rows condition needs a finite q >= 1, got {q}.")
    if p is not None and not p > 1:
        raise PreconditionError(f"p must be > 1, got {p}.")
    if n < 1:
        return RowsConditionResult(q=q, n=0, row_norms=[], row_exact=[], partial_sums=[], tail_bound=None,
                                   certified=False, verdict=SeriesVerdict.INCONCLUSIVE, p=p,
                                   note="empty series")
    width = n if n_cols is None else n_cols

    row_norms = [math.fsum(row(M, i, width).values) for i in range(1, n + 1)]
    row_exact = [M.row_is_within(i, width) for i in range(1, n + 1)]
    sums = partial_sums(v ** q for v in row_norms)
    fit = _fit(sums)
    verdict = series_verdict(fit)

    tail_bound = None
    certified = False
    if M.row_decay is not None:
        tail_bound = M.row_decay.series_tail(n, q)
        # the decay model bounds every full row, so a finite tail certifies the whole series
        certified = math.isfinite(tail_bound)
    if certified:
        verdict = SeriesVerdict.CONVERGES

    domination_bound = None
    if p is not None:
        domination_bound = sums[-1] ** ((p - 1.0) / q)

    if verdict == SeriesVerdict.CONVERGES:
        note = f"{DOMINATION_NOTE}; " + (CERTIFIED_NOTE if certified else EVIDENCE_NOTE)
    else:
        note = EVIDENCE_NOTE
    return RowsConditionResult(
        q=q,
        n=n,
        row_norms=row_norms,
        row_exact=row_exact,
        partial_sums=sums,
        tail_bound=tail_bound,
        certified=certified,
        verdict=verdict,
        p=p,
        domination_bound=domination_bound,
        fit=fit,
        note=note,
    )


def _fit(sums) -> GrowthFit:
    ns = doubling_points(len(sums))
    return growth_fit(ns, [sums[k - 1] for k in ns])
