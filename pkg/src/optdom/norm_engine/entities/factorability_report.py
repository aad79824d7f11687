from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from optdom.norm_engine.entities.enums import SeriesVerdict, Verdict
from optdom.norm_engine.entities.norm_estimate import NormEstimate

EVIDENCE_NOTE = "finite-truncation evidence"
CERTIFIED_NOTE = "certified sufficient condition met"


@dataclass(frozen=True)
class GrowthFit:
    """
    Ajustement log(valeur) ~ exposant·log(n) par moindres carrés.

    Attributes
    - exponent (float|None): pente ajustée (None si moins de deux points utilisables)
    - verdict (Verdict): classement selon les seuils 0.05 / 0.2
    - window (tuple[int]): valeurs de n réellement utilisées
    """
    exponent: Optional[float]
    verdict: Verdict
    window: Tuple[int, ...] = ()


@dataclass(frozen=True)
class AscentTrace:
    """Optimizer metadata attached to a constant estimate."""
    starts: int
    best_start: int
    iterations: int
    maximizer: Tuple[float, ...]


@dataclass(frozen=True)
class ConstantPoint:
    """
    Borne inférieure d'une constante à la troncature n.

    Attributes
    - n (int): taille de troncature
    - value (float): meilleure valeur trouvée par la montée (point réalisable évalué)
    - trace (AscentTrace): métadonnées de l'optimiseur
    - grid_value (float|None): valeur de l'oracle grille du simplexe (n <= 4)
    - confirmed (bool|None): montée >= 99 % de l'oracle
    - exact_denominator (bool): le sup sur les sous-ensembles a été calculé exactement
    """
    n: int
    value: float
    trace: AscentTrace
    grid_value: Optional[float] = None
    confirmed: Optional[bool] = None
    exact_denominator: bool = True


@dataclass(frozen=True)
class ColumnNormPoint:
    j: int
    estimate: NormEstimate


@dataclass(frozen=True)
class ContinuityReport:
    """
    Preuves de bornitude de M : ℓ¹ → E via sup_j ‖C_j‖_E.

    Attributes
    - n_E (int): lignes de codomaine conservées
    - columns (list[ColumnNormPoint]): encadrements par colonne
    - running_sup (list[float]): sup courant des bornes inférieures
    - running_sup_upper (list[float]): sup courant des bornes supérieures
    - fit (GrowthFit): ajustement de croissance du sup courant
    - verdict (Verdict)
    - note (str)
    """
    n_E: int
    columns: List[ColumnNormPoint]
    running_sup: List[float]
    running_sup_upper: List[float]
    fit: GrowthFit
    verdict: Verdict
    note: str = EVIDENCE_NOTE


@dataclass(frozen=True)
class ConditionIResult:
    """
    Condition (I) : Σ_j ‖C_j‖_E^{p'} < ∞ (suffisante seulement).

    Attributes
    - p, p_conjugate (float)
    - n (int): nombre de colonnes sommées
    - column_norms (list[NormEstimate])
    - partial_sums (list[float]): sommes partielles des bornes inférieures
    - partial_sums_upper (list[float]): idem avec les bornes supérieures (inf si ouvertes)
    - tail_bound (float|None): borne de Σ_{j>n} via le modèle de décroissance déclaré
    - certified (bool): somme totale bornée par le modèle déclaré
    - verdict (SeriesVerdict)
    - hoelder_bound (float): (Σ_{j<=n} ‖C_j‖^{p'})^{1/p'}, borne de C_p(n)
    """
    p: float
    p_conjugate: float
    n: int
    column_norms: List[NormEstimate]
    partial_sums: List[float]
    partial_sums_upper: List[float]
    tail_bound: Optional[float]
    certified: bool
    verdict: SeriesVerdict
    hoelder_bound: float
    fit: Optional[GrowthFit] = None
    note: str = "condition (I) is sufficient only; " + EVIDENCE_NOTE


@dataclass(frozen=True)
class RowsConditionResult:
    """
    Condition sur les lignes : Σ_i ‖F_i‖₁^q < ∞ pour M >= 0 à valeurs dans ℓ^q.

    Attributes
    - q (float)
    - n (int): nombre de lignes sommées
    - row_norms (list[float]): ‖F_i‖₁ (troncature en colonnes incluse)
    - row_exact (list[bool]): ligne entièrement couverte par la troncature
    - partial_sums (list[float])
    - tail_bound (float|None), certified (bool), verdict (SeriesVerdict)
    - p (float|None): exposant de factorisation éventuel
    - domination_bound (float|None): (Σ_i ‖F_i‖₁^q)^{p/(q p')} si p est fourni
    - note (str)
    """
    q: float
    n: int
    row_norms: List[float]
    row_exact: List[bool]
    partial_sums: List[float]
    tail_bound: Optional[float]
    certified: bool
    verdict: SeriesVerdict
    p: Optional[float] = None
    domination_bound: Optional[float] = None
    fit: Optional[GrowthFit] = None
    note: str = ""


@dataclass(frozen=True)
class DominationCheck:
    """
    Conséquences quantitatives de l'équivalence ℓ¹(m) ⊂ ℓ^r(m) ⇔ r-domination.

    Attributes
    - r (float), n (int)
    - D (float): constante de domination estimée
    - B (float): sup de ‖x‖_{ℓ^r(m)} / ‖x‖_{ℓ¹(m)} estimé
    - first_half_ok (bool): D <= 2B + tol
    - second_half_ok (bool): B <= 2^{1/r}·D + tol
    """
    r: float
    n: int
    D: float
    B: float
    first_half_ok: bool
    second_half_ok: bool


@dataclass(frozen=True)
class FactorizationBound:
    """C_p(n) <= (D_{1/p}(n)·K(n))^{1/p} with K(n) = max_{j<=n} ‖C_j‖_E."""
    p: float
    n: int
    domination_constant: float
    operator_norm_l1: float
    bound: float


@dataclass(frozen=True)
class FactorabilityReport:
    """
    Rapport de factorisabilité p-ième d'une matrice.

    Attributes
    - p (float): exposant > 1
    - schedule (list[int]): tailles de troncature
    - constants (list[ConstantPoint]): C_p(n) (bornes inférieures)
    - growth (GrowthFit): ajustement de croissance de C_p(n)
    - condition_I (ConditionIResult)
    - condition_II (RowsConditionResult|None)
    - verdict (Verdict)
    - monotone (bool): C_p(n) non décroissant le long du calendrier
    - notes (list[str])
    """
    p: float
    schedule: List[int]
    constants: List[ConstantPoint]
    growth: GrowthFit
    condition_I: ConditionIResult
    condition_II: Optional[RowsConditionResult]
    verdict: Verdict
    monotone: bool
    notes: List[str] = field(default_factory=list)
