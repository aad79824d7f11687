import math
from dataclasses import dataclass
from typing import Optional

from optdom.norm_engine.entities.space_spec import Lq, SpaceSpec
from optdom.norm_engine.errors import InvalidTailModelError

DECAY_KINDS = ("power_decay", "geometric")


@dataclass(frozen=True)
class DecayModel:
    """
    Borne déclarée par l'utilisateur, décroissante en k.
    Immuable.

    Attributes
    - kind (str): 'power_decay' (bound(k) = constant·k^(-exponent)) ou
        'geometric' (bound(k) = constant·ratio^k)
    - constant (float): constante >= 0
    - exponent (float): exposant > 0 pour 'power_decay'
    - ratio (float): raison dans (0, 1) pour 'geometric'
    - q (float|None): si renseigné, le modèle ne vaut que pour l'espace Lq(q)

    Les données finies ne certifient jamais une convergence : ces modèles sont
    déclarés, jamais inférés. Ils servent pour la queue des colonnes (lignes
    i > n), la décroissance de ‖C_j‖ et celle de ‖F_i‖₁.
    """
    kind: str
    constant: float
    exponent: float = 1.0
    ratio: float = 0.5
    q: Optional[float] = None

    def __post_init__(self):
        if self.kind not in DECAY_KINDS:
            raise InvalidTailModelError(f"Unknown decay model kind '{self.kind}'.")
        if not (self.constant >= 0 and math.isfinite(self.constant)):
            raise InvalidTailModelError("Decay constant must be finite and >= 0.")
        if self.kind == "power_decay" and not self.exponent > 0:
            raise InvalidTailModelError("power_decay needs a positive exponent.")
        if self.kind == "geometric" and not 0 < self.ratio < 1:
            raise InvalidTailModelError("geometric decay needs a ratio in (0, 1).")

    def bound(self, k: int) -> float:
        if k < 1:
            raise InvalidTailModelError(f"Decay bound requested at k={k}.")
        if self.kind == "power_decay":
            return self.constant * float(k) ** (-self.exponent)
        return self.constant * self.ratio ** k

    def series_tail(self, n: int, power: float = 1.0) -> float:
        """Upper bound of Σ_{k>n} bound(k)^power (inf when not summable)."""
        if self.constant == 0:
            return 0.0
        c = self.constant ** power
        if self.kind == "geometric":
            rs = self.ratio ** power
            return c * rs ** (n + 1) / (1.0 - rs)
        b = self.exponent * power
        if b <= 1:
            return math.inf
        if n < 1:
            # k = 1 term plus the integral tail from 1
            return c * (1.0 + 1.0 / (b - 1.0))
        return c * float(n) ** (1.0 - b) / (b - 1.0)

    def applies_to(self, space: SpaceSpec) -> bool:
        return self.q is None or (isinstance(space, Lq) and space.q == self.q)

    def check_space(self, space: SpaceSpec) -> None:
        """Raise InvalidTailModelError when the model was declared for another space."""
        if not self.applies_to(space):
            raise InvalidTailModelError(
                f"Decay model declared for Lq({self.q}) cannot bound norms in {space.describe()}."
            )
