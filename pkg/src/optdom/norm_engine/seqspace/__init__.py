from optdom.norm_engine.seqspace.norms import (
    aligned_projection,
    batch_norm,
    norm,
    quasinorm_constant,
    vector_norm,
)
from optdom.norm_engine.seqspace.duals import (
    conjugate_exponent,
    dual_vector_norm,
    koethe_dual_norm,
    norm_gradient,
)
from optdom.norm_engine.seqspace.sum_solver import (
    SumDecomposition,
    sum_norm_bracket,
    sum_norm_decomposition,
)

__all__ = [
    "SumDecomposition",
    "aligned_projection",
    "batch_norm",
    "conjugate_exponent",
    "dual_vector_norm",
    "koethe_dual_norm",
    "norm",
    "norm_gradient",
    "quasinorm_constant",
    "sum_norm_bracket",
    "sum_norm_decomposition",
    "vector_norm",
]
