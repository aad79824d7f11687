import logging
from typing import List, Optional, Sequence

from optdom.norm_engine.analysis.metrics import growth_fit, is_nondecreasing
from optdom.norm_engine.entities.enums import SeriesVerdict, Verdict
from optdom.norm_engine.entities.factorability_report import (
    CERTIFIED_NOTE,
    EVIDENCE_NOTE,
    ConstantPoint,
    FactorabilityReport,
)
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.space_spec import Lq, SpaceSpec
from optdom.norm_engine.errors import InvalidArgumentError, PreconditionError
from optdom.norm_engine.factor.conditions import condition_I, rows_condition
from optdom.norm_engine.factor.constants import best_constant
from optdom.norm_engine.matop.operations import check_nonzero_columns

logger = logging.getLogger(__name__)

MONOTONE_NOTE = "C_p(n) decreased along the schedule: optimizer failure"


def check_schedule(p: float, schedule: Sequence[int]) -> None:
    if not p > 1:
        raise PreconditionError(f"Factorability needs p > 1, got {p}.")
    if not schedule or any(n < 1 for n in schedule):
        raise InvalidArgumentError("The schedule must be a non-empty list of sizes >= 1.")
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise InvalidArgumentError(f"The schedule must be strictly increasing, got {list(schedule)}.")


def factorability_verdict(M: MatrixOperator, E: SpaceSpec, p: float, schedule: Sequence[int], *, n_E: int,
                          restarts: int = 8, seed: int = 0, use_tail: bool = True,
                          confirm: bool = True) -> FactorabilityReport:
    """
    C_p(n) = sup ‖Mx‖_E over the positive unit sphere of ℓ^p_n along the
    schedule (warm-started from the previous maximizer), then the verdict.
    """
    check_schedule(p, schedule)
    check_nonzero_columns(M, max(schedule), n_E)
    constants: List[ConstantPoint] = []
    warm = None
    for n in schedule:
        point = best_constant(M, E, Lq(p), n, restarts, n_E=n_E, seed=seed, warm_start=warm, confirm=confirm)
        constants.append(point)
        warm = point.trace.maximizer
    return verdict_from_constants(M, E, p, schedule, constants, n_E=n_E, use_tail=use_tail)


def verdict_from_constants(M: MatrixOperator, E: SpaceSpec, p: float, schedule: Sequence[int],
                           constants: List[ConstantPoint], *, n_E: int,
                           use_tail: bool = True) -> FactorabilityReport:
    """
    Assemble the report: growth fit of the constants, condition (I) at the
    largest size, the rows condition when M >= 0 maps into ℓ^q (q finite,
    q >= 1), and the verdict (bounded when (I) converges, otherwise the
    growth verdict).
    """
    check_schedule(p, schedule)
    values = [c.value for c in constants]
    notes = [EVIDENCE_NOTE]

    monotone = is_nondecreasing(values)
    if not monotone:
        logger.warning("Constants of '%s' are not monotone along %s: %s", M.name, list(schedule), values)
        notes.append(MONOTONE_NOTE)

    growth = growth_fit(schedule, values)
    n_max = max(schedule)
    cond_I = condition_I(M, E, p, n_max, use_tail, n_E=n_E)
    notes.append(cond_I.note)

    cond_II = None
    if M.nonnegative and isinstance(E, Lq) and 1 <= E.q < float("inf"):
        cond_II = rows_condition(M, E.q, n_E, p=p, n_cols=n_max)
        notes.append(cond_II.note)

    verdict = Verdict.BOUNDED if cond_I.verdict == SeriesVerdict.CONVERGES else growth.verdict
    if cond_I.certified:
        notes.append(CERTIFIED_NOTE)
    logger.info("Factorability of '%s' into %s, p=%g: %s (growth exponent %s)",
                M.name, E.describe(), p, verdict.value, _format(growth.exponent))
    return FactorabilityReport(
        p=p,
        schedule=list(schedule),
        constants=constants,
        growth=growth,
        condition_I=cond_I,
        condition_II=cond_II,
        verdict=verdict,
        monotone=monotone,
        notes=notes,
    )


def _format(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.4f}"
