from optdom.norm_engine.analysis.metrics import (
    doubling_points,
    growth_fit,
    is_nondecreasing,
    partial_sums,
    running_max,
    series_verdict,
)

__all__ = [
    "doubling_points",
    "growth_fit",
    "is_nondecreasing",
    "partial_sums",
    "running_max",
    "series_verdict",
]
