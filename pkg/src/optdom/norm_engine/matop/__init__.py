from optdom.norm_engine.matop.generators import (
    BUILTIN_KINDS,
    builtin_spec,
    cesaro,
    compile_expression,
    dense,
    diagonal,
    expr,
    from_triples,
    hilbert,
    identity,
)
from optdom.norm_engine.matop.operations import (
    apply,
    check_nonzero_columns,
    column,
    column_norm,
    column_norms,
    describe_matrix,
    operator_norm_l1,
    row,
)
from optdom.norm_engine.matop.continuity import continuity_check

__all__ = [
    "BUILTIN_KINDS",
    "apply",
    "builtin_spec",
    "cesaro",
    "check_nonzero_columns",
    "column",
    "column_norm",
    "column_norms",
    "compile_expression",
    "continuity_check",
    "dense",
    "describe_matrix",
    "diagonal",
    "expr",
    "from_triples",
    "hilbert",
    "identity",
    "operator_norm_l1",
    "row",
]
