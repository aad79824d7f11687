from dataclasses import dataclass
from typing import Optional, Tuple

from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.space_spec import SpaceSpec
from optdom.norm_engine.errors import ConfigError

N_ENUM_CAP = 24


@dataclass(frozen=True)
class AnalysisConfig:
    """
    Configuration complète d'une analyse.
    Immuable.

    Attributes
    - matrix (MatrixOperator): matrice analysée
    - codomain (SpaceSpec): espace E = ℓ(c)
    - p (float): exposant de factorisation, > 1
    - schedule (tuple[int]): tailles de troncature strictement croissantes
    - n_E (int): lignes de codomaine conservées
    - n_enum (int): seuil d'énumération exacte des signes (<= 24)
    - seed (int): graine globale 64 bits
    - restarts (int): départs aléatoires des montées
    - use_tail (bool): utiliser les modèles de queue déclarés
    - domination_n (int): taille des contrôles de domination (<= n_enum)
    - probes (tuple[FiniteVector]): vecteurs pour les normes de domaine optimal
    - json_path, md_path (str|None): sorties
    """
    matrix: MatrixOperator
    codomain: SpaceSpec
    p: float
    schedule: Tuple[int, ...]
    n_E: int
    n_enum: int = 20
    seed: int = 0
    restarts: int = 8
    use_tail: bool = True
    domination_n: int = 4
    probes: Tuple[FiniteVector, ...] = ()
    json_path: Optional[str] = None
    md_path: Optional[str] = None

    def __post_init__(self):
        if not self.p > 1:
            raise ConfigError(f"p must be > 1, got {self.p}.", "$.p")
        if not self.schedule:
            raise ConfigError("schedule must not be empty.", "$.schedule")
        if any(n < 1 for n in self.schedule):
            raise ConfigError("schedule entries must be >= 1.", "$.schedule")
        if any(b <= a for a, b in zip(self.schedule, self.schedule[1:])):
            raise ConfigError("schedule must be strictly increasing.", "$.schedule")
        if not 0 <= self.n_enum <= N_ENUM_CAP:
            raise ConfigError(f"n_enum must be in [0, {N_ENUM_CAP}].", "$.n_enum")
        if self.n_E < 1:
            raise ConfigError("n_E must be >= 1.", "$.n_E")
        if self.restarts < 1:
            raise ConfigError("restarts must be >= 1.", "$.restarts")
        if not 1 <= self.domination_n <= max(self.n_enum, 1):
            raise ConfigError("domination_n must be in [1, n_enum].", "$.domination_n")
