from optdom.norm_engine.factor.ascent import RatioProblem, ascend, maximize
from optdom.norm_engine.factor.constants import (
    best_constant,
    constant_problem,
    domination_problem,
    power_domination_constant,
    truncated_block,
)
from optdom.norm_engine.factor.conditions import condition_I, rows_condition
from optdom.norm_engine.factor.embedding import (
    domination_embedding_check,
    domination_factorability_bound,
    embedding_problem,
    extension_consistency,
)
from optdom.norm_engine.factor.verdict import factorability_verdict, verdict_from_constants

__all__ = [
    "RatioProblem",
    "ascend",
    "best_constant",
    "condition_I",
    "constant_problem",
    "domination_embedding_check",
    "domination_factorability_bound",
    "domination_problem",
    "embedding_problem",
    "extension_consistency",
    "factorability_verdict",
    "maximize",
    "power_domination_constant",
    "rows_condition",
    "truncated_block",
    "verdict_from_constants",
]
