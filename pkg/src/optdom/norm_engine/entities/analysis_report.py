from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from optdom.norm_engine.entities.factorability_report import (
    ContinuityReport,
    DominationCheck,
    FactorabilityReport,
    FactorizationBound,
)
from optdom.norm_engine.entities.finite_vector import FiniteVector

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ProbeResult:
    """Normes d'un vecteur sonde dans ℓ¹(m), ℓ^{1/p}(m) et leur intersection."""
    vector: FiniteVector
    norms: Any


@dataclass(frozen=True)
class AnalysisStep:
    """
    Journal d'un point du calendrier.

    Attributes
    - n (int): taille de troncature
    - constant (float): C_p(n) trouvé par la montée
    - grid_value (float|None): valeur de l'oracle grille
    - iterations (int): itérations de la montée retenue
    - column_sup (float): max_{j<=n} des bornes inférieures de ‖C_j‖_E
    - column_sup_upper (float): idem pour les bornes supérieures
    - hoelder_partial (float): (Σ_{j<=n} ‖C_j‖^{p'})^{1/p'}
    """
    n: int
    constant: float
    grid_value: Optional[float]
    iterations: int
    column_sup: float
    column_sup_upper: float
    hoelder_partial: float


@dataclass(frozen=True)
class AnalysisReport:
    """
    Rapport complet d'une analyse `optdom analyze`.

    Attributes
    - config (dict): paramètres d'entrée sérialisables (matrice, codomaine, p, calendrier...)
    - continuity (ContinuityReport): preuves pour M : ℓ¹ → E
    - factorability (FactorabilityReport): constantes, conditions et verdict
    - steps (list[AnalysisStep]): journal par point du calendrier
    - domination (DominationCheck|None): contrôle domination / inclusion à n = domination_n
    - factorization_bound (FactorizationBound|None): borne (D·K)^{1/p}
    - probes (list[ProbeResult]): normes des vecteurs fournis
    - notes (list[str])

    Aucun horodatage ici : deux exécutions identiques produisent le même rapport.
    """
    config: Dict[str, Any]
    continuity: ContinuityReport
    factorability: FactorabilityReport
    steps: List[AnalysisStep]
    domination: Optional[DominationCheck] = None
    factorization_bound: Optional[FactorizationBound] = None
    probes: List[ProbeResult] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
