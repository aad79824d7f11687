import logging
from typing import Optional

from optdom.norm_engine.entities.enums import Method
from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.norm_estimate import NormEstimate
from optdom.norm_engine.entities.space_spec import SpaceSpec, Sum, contains_sum
from optdom.norm_engine.errors import InvalidArgumentError
from optdom.norm_engine.seqspace.norms import norm
from optdom.norm_engine.seqspace.sum_solver import sum_norm_bracket
from optdom.norm_engine.vmeasure.l1m import l1m_norm, lpm_norm
from optdom.norm_engine.vmeasure.measure import AtomicVectorMeasure

logger = logging.getLogger(__name__)

SELECTORS = ("space", "l1m", "lpm")


def run_norm(
    selector: str,
    f: FiniteVector,
    space: Optional[SpaceSpec] = None,
    matrix: Optional[MatrixOperator] = None,
    codomain: Optional[SpaceSpec] = None,
    p: Optional[float] = None,
    n_E: int = 64,
    n_enum: int = 20,
    seed: int = 0,
) -> NormEstimate:
    """
    Straight delegation: `space` -> norm in a sequence space, `l1m` -> ‖f‖_{L¹(m)},
    `lpm` -> ‖f‖_{L^p(m)}, where m is the vector measure of `matrix` into `codomain`.
    """
    if selector not in SELECTORS:
        raise InvalidArgumentError(f"selector must be one of {', '.join(SELECTORS)}, got '{selector}'.")

    if selector == "space":
        if space is None:
            raise InvalidArgumentError("selector 'space' needs a space.")
        if isinstance(space, Sum):
            return sum_norm_bracket(space, f, seed=seed)
        value = norm(space, f)
        if contains_sum(space):
            return NormEstimate.bracket(0.0, value, Method.SUM_SOLVER, "achieved decomposition of a nested sum")
        return NormEstimate.exact(value, Method.EXACT, "closed form")

    if matrix is None or codomain is None:
        raise InvalidArgumentError(f"selector '{selector}' needs a matrix and a codomain.")
    logger.info("%s norm of a vector with support %d, %s truncated to %d rows", selector, len(f),
                codomain.describe(), n_E)
    m = AtomicVectorMeasure(matrix, codomain, n_E, n_enum=n_enum, seed=seed)
    if selector == "l1m":
        return l1m_norm(m, f)
    if p is None:
        raise InvalidArgumentError("selector 'lpm' needs p.")
    return lpm_norm(m, f, p)
