import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

from optdom.norm_engine.entities.decay_model import DecayModel
from optdom.norm_engine.errors import ContractError, InvalidArgumentError

EntryFn = Callable[[int, int], float]
ExtentFn = Callable[[int], int]


@dataclass(frozen=True)
class MatrixOperator:
    """
    Matrice infinie M = (a_ij) vue comme opérateur x ↦ Mx.
    Immuable (seul le cache mémoïsé des coefficients évolue).

    Attributes
    - name (str): nom lisible, ex. 'hilbert'
    - entry (callable): générateur (i, j) -> a_ij, indices >= 1
    - nonnegative (bool): déclaration a_ij >= 0, vérifiée opportunément
    - column_tail (DecayModel|None): borne de ‖(a_ij)_{i>n}‖_E en fonction de n
    - column_decay (DecayModel|None): borne de ‖C_j‖_E en fonction de j
    - row_decay (DecayModel|None): borne de ‖F_i‖₁ en fonction de i
    - column_extent (callable|None): j -> dernier indice de ligne non nul possible de C_j
    - row_extent (callable|None): i -> dernier indice de colonne non nul possible de F_i
    - spec (dict|None): description JSON d'origine, reprise dans les rapports

    Le cache est protégé par un verrou : lectures et insertions concurrentes sont sûres.
    """
    name: str
    entry: EntryFn
    nonnegative: bool = False
    column_tail: Optional[DecayModel] = None
    column_decay: Optional[DecayModel] = None
    row_decay: Optional[DecayModel] = None
    column_extent: Optional[ExtentFn] = None
    row_extent: Optional[ExtentFn] = None
    spec: Optional[Dict[str, Any]] = field(default=None, compare=False)
    _cache: Dict[Tuple[int, int], float] = field(default_factory=dict, compare=False, repr=False)
    _lock: Any = field(default_factory=threading.Lock, compare=False, repr=False)

    def coefficient(self, i: int, j: int) -> float:
        """Memoized a_ij; checks the declared sign."""
        if i < 1 or j < 1:
            raise InvalidArgumentError(f"Matrix indices must be >= 1, got ({i}, {j}).")
        key = (i, j)
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached

        value = float(self.entry(i, j))
        if self.nonnegative and value < 0:
            raise ContractError(
                f"Matrix '{self.name}' is declared nonnegative but a_{i},{j} = {value}."
            )
        with self._lock:
            self._cache[key] = value
        return value

    def column_is_within(self, j: int, n: int) -> bool:
        """True when C_j is known to vanish below row n."""
        return self.column_extent is not None and self.column_extent(j) <= n

    def row_is_within(self, i: int, n: int) -> bool:
        return self.row_extent is not None and self.row_extent(i) <= n
