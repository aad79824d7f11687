import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from optdom.norm_engine.entities.analysis_config import N_ENUM_CAP
from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.space_spec import SpaceSpec
from optdom.norm_engine.errors import InvalidArgumentError
from optdom.norm_engine.matop.operations import column

logger = logging.getLogger(__name__)

MIN_MAGNITUDE = 1e-300


@dataclass(frozen=True)
class AtomicVectorMeasure:
    """
    Mesure vectorielle m_M(A) = M·χ_A sur le δ-anneau des parties finies de ℕ.
    Immuable.

    Attributes
    - source (MatrixOperator): matrice dont les colonnes sont les atomes m({j}) = C_j
    - codomain (SpaceSpec): espace E = ℓ(c)
    - n_E (int): coordonnées de E conservées
    - n_enum (int): seuil de l'énumération exacte des signes
    - seed (int): graine des recherches locales
    - use_tail (bool): ajouter la queue déclarée des colonnes aux bornes supérieures
    """
    source: MatrixOperator
    codomain: SpaceSpec
    n_E: int
    n_enum: int = 20
    seed: int = 0
    use_tail: bool = True

    def __post_init__(self):
        if self.n_E < 1:
            raise InvalidArgumentError(f"n_E must be >= 1, got {self.n_E}.")
        if not 0 <= self.n_enum <= N_ENUM_CAP:
            raise InvalidArgumentError(f"n_enum must be in [0, {N_ENUM_CAP}], got {self.n_enum}.")

    def atom(self, j: int) -> FiniteVector:
        """m({j}) = C_j truncated to n_E rows."""
        return column(self.source, j, self.n_E)

    def atoms_matrix(self, f: FiniteVector) -> Tuple[List[int], np.ndarray]:
        """
        Rows f_j·C_j (one per support index) restricted to the union of the
        atoms' supports; returns (row indices of E, weighted atoms).
        """
        atoms = [self.atom(j) for j in f.indices]
        rows = sorted(set(i for atom in atoms for i in atom.indices))
        position = {i: k for k, i in enumerate(rows)}
        W = np.zeros((len(atoms), len(rows)))
        for k, (atom, fj) in enumerate(zip(atoms, f.values)):
            for i, a in atom:
                W[k, position[i]] = fj * a
        return rows, W


def check_magnitudes(f: FiniteVector) -> None:
    """Reject entries so small that denormals would drive the result."""
    for idx, val in f:
        if abs(val) < MIN_MAGNITUDE:
            raise InvalidArgumentError(f"Entry at index {idx} has magnitude {abs(val):.3g} < {MIN_MAGNITUDE:g}.")


def integrate(m: AtomicVectorMeasure, f: FiniteVector, A: Iterable[int]) -> FiniteVector:
    """∫_A f dm = Σ_{j ∈ A ∩ supp f} f_j·C_j, truncated to n_E rows."""
    check_magnitudes(f)
    chosen = set(int(a) for a in A)
    terms = [(val, m.atom(idx)) for idx, val in f if idx in chosen]
    return FiniteVector.linear_combination(terms)


def measure(m: AtomicVectorMeasure, A: Sequence[int]) -> FiniteVector:
    """m(A) = Σ_{j ∈ A} C_j."""
    chosen = sorted(set(int(a) for a in A))
    return integrate(m, FiniteVector.indicator(chosen), chosen)
