import logging
from typing import Sequence

from optdom.norm_engine.analysis.metrics import growth_fit
from optdom.norm_engine.entities.factorability_report import EVIDENCE_NOTE, ColumnNormPoint, ContinuityReport
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.space_spec import SpaceSpec
from optdom.norm_engine.errors import InvalidArgumentError, PreconditionError, ZeroColumnError
from optdom.norm_engine.matop.operations import column_norm

logger = logging.getLogger(__name__)


def continuity_check(M: MatrixOperator, E: SpaceSpec, schedule: Sequence[int], n_E: int,
                     use_tail: bool = True) -> ContinuityReport:
    """
    Evidence for M: ℓ¹ → E being bounded, i.e. sup_j ‖C_j‖_E < ∞.

    Column brackets for j up to max(schedule); running sup evaluated at each
    schedule point and classified by the growth-fit rule.
    """
    if not E.has_fatou:
        raise PreconditionError(
            f"{E.describe()} lacks the Fatou property required by the ℓ¹ → E continuity criterion."
        )
    if not schedule:
        raise InvalidArgumentError("continuity_check needs a non-empty schedule.")

    columns = []
    for j in range(1, max(schedule) + 1):
        estimate = column_norm(M, j, E, n_E, use_tail)
        if estimate.lower == 0.0:
            raise ZeroColumnError(f"Column {j} of '{M.name}' is zero on rows 1..{n_E}.", j)
        columns.append(ColumnNormPoint(j=j, estimate=estimate))

    running_sup = []
    running_sup_upper = []
    for n in schedule:
        head = columns[:n]
        running_sup.append(max(c.estimate.lower for c in head))
        running_sup_upper.append(max(c.estimate.upper for c in head))

    fit = growth_fit(schedule, running_sup)
    logger.info("Continuity of '%s' into %s: running sup %s -> %s", M.name, E.describe(),
                running_sup[-1], fit.verdict.value)
    return ContinuityReport(
        n_E=n_E,
        columns=columns,
        running_sup=running_sup,
        running_sup_upper=running_sup_upper,
        fit=fit,
        verdict=fit.verdict,
        note=EVIDENCE_NOTE,
    )
