from optdom.norm_engine.entities.enums import Method, SeriesVerdict, Verdict
from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.weights import WeightSequence
from optdom.norm_engine.entities.space_spec import (
    Intersection,
    Lq,
    Power,
    SpaceSpec,
    Sum,
    WeightedLq,
)
from optdom.norm_engine.entities.decay_model import DecayModel
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.norm_estimate import NormEstimate
from optdom.norm_engine.entities.factorability_report import (
    AscentTrace,
    ColumnNormPoint,
    ConditionIResult,
    ConstantPoint,
    ContinuityReport,
    DominationCheck,
    FactorabilityReport,
    FactorizationBound,
    GrowthFit,
    RowsConditionResult,
)
from optdom.norm_engine.entities.analysis_config import AnalysisConfig
from optdom.norm_engine.entities.analysis_report import AnalysisReport, AnalysisStep, ProbeResult
from optdom.norm_engine.entities.verify_summary import InvariantResult, VerifySummary

__all__ = [
    "AnalysisConfig",
    "AnalysisReport",
    "AnalysisStep",
    "AscentTrace",
    "ColumnNormPoint",
    "ConditionIResult",
    "ConstantPoint",
    "ContinuityReport",
    "DecayModel",
    "DominationCheck",
    "FactorabilityReport",
    "FactorizationBound",
    "FiniteVector",
    "GrowthFit",
    "InvariantResult",
    "Intersection",
    "Lq",
    "MatrixOperator",
    "Method",
    "NormEstimate",
    "Power",
    "ProbeResult",
    "RowsConditionResult",
    "SeriesVerdict",
    "SpaceSpec",
    "Sum",
    "Verdict",
    "VerifySummary",
    "WeightSequence",
    "WeightedLq",
]
