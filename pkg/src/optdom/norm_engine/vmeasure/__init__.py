from optdom.norm_engine.vmeasure.measure import AtomicVectorMeasure, integrate, measure
from optdom.norm_engine.vmeasure.l1m import (
    OptimalDomainNorms,
    l1m_norm,
    lpm_norm,
    optimal_domain_norms,
    pattern_value,
    sandwich_estimate,
    semivariation,
    sign_enumeration,
    subset_sup,
)

__all__ = [
    "AtomicVectorMeasure",
    "OptimalDomainNorms",
    "integrate",
    "l1m_norm",
    "lpm_norm",
    "measure",
    "optimal_domain_norms",
    "pattern_value",
    "sandwich_estimate",
    "semivariation",
    "sign_enumeration",
    "subset_sup",
]
