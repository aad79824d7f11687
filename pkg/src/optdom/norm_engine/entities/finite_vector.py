from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from optdom.norm_engine.errors import InvalidArgumentError, NormRangeError


@dataclass(frozen=True)
class FiniteVector:
    """
    Suite réelle à support fini, stockée sous forme canonique.
    Immuable.

    Attributes
    - indices (tuple[int]): indices strictement croissants, tous >= 1
    - values (tuple[float]): valeurs non nulles et finies, alignées sur `indices`

    Conventions
    - Aucune valeur nulle n'est stockée : le support est exactement `indices`.
    - L'évaluation en un indice hors support vaut 0.
    - Toutes les opérations renvoient un vecteur canonique.
    """
    indices: Tuple[int, ...] = ()
    values: Tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise InvalidArgumentError("indices and values must have the same length.")
        previous = 0
        for idx, val in zip(self.indices, self.values):
            if int(idx) != idx or idx < 1:
                raise InvalidArgumentError(f"Index {idx} is not a positive integer.")
            if idx <= previous:
                raise InvalidArgumentError("Indices must be strictly increasing.")
            if val == 0.0 or not math.isfinite(val):
                raise InvalidArgumentError(f"Value at index {idx} must be finite and nonzero.")
            previous = idx

    # --- constructors ---

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, float]]) -> "FiniteVector":
        """Build a canonical vector, summing duplicates and dropping zeros."""
        acc: Dict[int, List[float]] = defaultdict(list)
        for idx, val in pairs:
            acc[int(idx)].append(float(val))
        items = sorted((idx, math.fsum(vals)) for idx, vals in acc.items())
        items = [(idx, val) for idx, val in items if val != 0.0]
        return cls(tuple(idx for idx, _ in items), tuple(val for _, val in items))

    @classmethod
    def from_dense(cls, values: Sequence[float], start: int = 1) -> "FiniteVector":
        """Coordinates `values[k]` placed at index `start + k`."""
        return cls.from_pairs((start + k, float(v)) for k, v in enumerate(values))

    @classmethod
    def zero(cls) -> "FiniteVector":
        return cls()

    @classmethod
    def unit(cls, n: int) -> "FiniteVector":
        """e_n = χ_{n}."""
        return cls((int(n),), (1.0,))

    @classmethod
    def indicator(cls, indices: Iterable[int]) -> "FiniteVector":
        """χ_A for a finite index set A."""
        return cls.from_pairs((idx, 1.0) for idx in set(indices))

    # --- access ---

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(zip(self.indices, self.values))

    @property
    def support(self) -> Tuple[int, ...]:
        return self.indices

    def is_zero(self) -> bool:
        return not self.indices

    def get(self, index: int) -> float:
        pos = np.searchsorted(self.indices, index) if self.indices else 0
        if pos < len(self.indices) and self.indices[pos] == index:
            return self.values[pos]
        return 0.0

    def as_dict(self) -> Dict[int, float]:
        return dict(zip(self.indices, self.values))

    def to_dense(self, n: int) -> np.ndarray:
        """Coordinates 1..n as a numpy array (entries beyond n are dropped)."""
        out = np.zeros(n, dtype=float)
        for idx, val in zip(self.indices, self.values):
            if idx <= n:
                out[idx - 1] = val
        return out

    def max_index(self) -> int:
        return self.indices[-1] if self.indices else 0

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self.values)

    # --- arithmetic ---

    def abs(self) -> "FiniteVector":
        return FiniteVector(self.indices, tuple(abs(v) for v in self.values))

    def sign(self) -> "FiniteVector":
        return FiniteVector(self.indices, tuple(math.copysign(1.0, v) for v in self.values))

    def scale(self, alpha: float) -> "FiniteVector":
        if alpha == 0.0:
            return FiniteVector()
        return FiniteVector.from_pairs((i, alpha * v) for i, v in self)

    def power(self, p: float) -> "FiniteVector":
        """|f|^p entrywise; raises NormRangeError on overflow or underflow."""
        out = []
        for idx, val in self:
            try:
                powered = abs(val) ** p
            except OverflowError:
                raise NormRangeError(f"|f|^{p} overflows at index {idx}.", index=idx)
            if math.isinf(powered):
                raise NormRangeError(f"|f|^{p} overflows at index {idx}.", index=idx)
            if powered == 0.0:
                raise NormRangeError(f"|f|^{p} underflows to zero at index {idx}.", index=idx)
            out.append(powered)
        return FiniteVector(self.indices, tuple(out))

    def add(self, other: "FiniteVector") -> "FiniteVector":
        return FiniteVector.from_pairs(list(self) + list(other))

    def sub(self, other: "FiniteVector") -> "FiniteVector":
        return FiniteVector.from_pairs(list(self) + [(i, -v) for i, v in other])

    def __add__(self, other: "FiniteVector") -> "FiniteVector":
        return self.add(other)

    def __sub__(self, other: "FiniteVector") -> "FiniteVector":
        return self.sub(other)

    def __neg__(self) -> "FiniteVector":
        return FiniteVector(self.indices, tuple(-v for v in self.values))

    def multiply(self, other: "FiniteVector") -> "FiniteVector":
        """Pointwise product."""
        right = other.as_dict()
        return FiniteVector.from_pairs((i, v * right[i]) for i, v in self if i in right)

    def truncate(self, n: int) -> "FiniteVector":
        """Keep the coordinates with index <= n."""
        keep = [(i, v) for i, v in self if i <= n]
        return FiniteVector(tuple(i for i, _ in keep), tuple(v for _, v in keep))

    def restrict(self, indices: Iterable[int]) -> "FiniteVector":
        """f·χ_A."""
        chosen = set(indices)
        keep = [(i, v) for i, v in self if i in chosen]
        return FiniteVector(tuple(i for i, _ in keep), tuple(v for _, v in keep))

    @staticmethod
    def linear_combination(terms: Iterable[Tuple[float, "FiniteVector"]]) -> "FiniteVector":
        """Σ α_k v_k with compensated summation per coordinate."""
        acc: Dict[int, List[float]] = defaultdict(list)
        for alpha, vec in terms:
            for idx, val in vec:
                acc[idx].append(alpha * val)
        return FiniteVector.from_pairs((idx, math.fsum(vals)) for idx, vals in acc.items())
