from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from optdom.norm_engine.errors import InvalidSpaceError

WEIGHT_KINDS = ("power_decay", "geometric", "explicit")


@dataclass(frozen=True)
class WeightSequence:
    """
    Générateur de poids strictement positifs sur ℕ, évalué paresseusement.
    Immuable.

    Attributes
    - kind (str): 'power_decay' (w_j = constant·j^(-exponent)),
        'geometric' (w_j = constant·ratio^(j-1)) ou 'explicit' (w_j = values[j-1])
    - constant, exponent, ratio (float): paramètres des formes analytiques
    - values (tuple[float]): poids explicites

    Utilisé comme poids d'un ℓ^q pondéré et comme diagonale d'une matrice.
    """
    kind: str
    constant: float = 1.0
    exponent: float = 0.0
    ratio: float = 1.0
    values: Tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise InvalidSpaceError(f"Unknown weight kind '{self.kind}'.")
        if self.kind == "explicit":
            if not self.values:
                raise InvalidSpaceError("Explicit weights need at least one value.")
            if any(v <= 0 for v in self.values):
                raise InvalidSpaceError("Weights must be strictly positive.")
        else:
            if self.constant <= 0:
                raise InvalidSpaceError("Weight constant must be strictly positive.")
            if self.kind == "geometric" and self.ratio <= 0:
                raise InvalidSpaceError("Geometric weight ratio must be strictly positive.")

    def __call__(self, j: int) -> float:
        return _weight(self, int(j))


@lru_cache(maxsize=65536)
def _weight(seq: WeightSequence, j: int) -> float:
    if j < 1:
        raise InvalidSpaceError(f"Weight index {j} is not positive.")
    if seq.kind == "power_decay":
        value = seq.constant * float(j) ** (-seq.exponent)
    elif seq.kind == "geometric":
        value = seq.constant * seq.ratio ** (j - 1)
    else:
        if j > len(seq.values):
            raise InvalidSpaceError(f"Explicit weights are undefined at index {j}.")
        value = float(seq.values[j - 1])
    if not value > 0:
        raise InvalidSpaceError(f"Weight at index {j} underflows to {value}.")
    return value
