from optdom.norm_engine.oracle.brute_force import (
    constant_grid_sup,
    domination_grid_sup,
    embedding_grid_sup,
    exhaustive_subset_sup,
    l1m_norm_dual_sample,
    simplex_grid,
    simplex_grid_sup,
    sum_norm_bruteforce,
)
from optdom.norm_engine.oracle.inequalities import quasinorm_axiom_scan, random_vector, young_check, young_gap

__all__ = [
    "constant_grid_sup",
    "domination_grid_sup",
    "embedding_grid_sup",
    "exhaustive_subset_sup",
    "l1m_norm_dual_sample",
    "quasinorm_axiom_scan",
    "random_vector",
    "simplex_grid",
    "simplex_grid_sup",
    "sum_norm_bruteforce",
    "young_check",
    "young_gap",
]
