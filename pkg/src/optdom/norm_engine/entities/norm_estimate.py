from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional

from optdom.norm_engine.entities.enums import Method
from optdom.norm_engine.errors import InvalidArgumentError

_BRACKET_SLACK = 1e-12


@dataclass(frozen=True)
class NormEstimate:
    """
    Valeur de norme calculée avec son encadrement certifié.
    Immuable.

    Attributes
    - value (float|None): valeur exacte si connue
    - lower (float): borne inférieure certifiée
    - upper (float): borne supérieure certifiée (inf si ouverte au-dessus)
    - method (Method): provenance de l'encadrement
    - certificate (str): description de l'origine des bornes

    Invariants
    - lower <= upper ; valeur exacte => lower == upper == value.
    - méthode subset-sup-sandwich => upper == 2·lower.
    """
    value: Optional[float]
    lower: float
    upper: float
    method: Method
    certificate: str = ""

    def __post_init__(self):
        if self.lower > self.upper * (1 + _BRACKET_SLACK) + _BRACKET_SLACK:
            raise InvalidArgumentError(f"Bracket is inverted: [{self.lower}, {self.upper}].")
        if self.value is not None and not (self.lower == self.value == self.upper):
            raise InvalidArgumentError("An exact estimate must have lower == value == upper.")

    @classmethod
    def exact(cls, value: float, method: Method, certificate: str = "") -> "NormEstimate":
        return cls(value=value, lower=value, upper=value, method=method, certificate=certificate)

    @classmethod
    def bracket(cls, lower: float, upper: float, method: Method, certificate: str = "") -> "NormEstimate":
        if lower == upper:
            return cls.exact(lower, method, certificate)
        return cls(value=None, lower=lower, upper=upper, method=method, certificate=certificate)

    @property
    def is_exact(self) -> bool:
        return self.value is not None

    @property
    def is_closed(self) -> bool:
        return math.isfinite(self.upper)

    @property
    def best(self) -> float:
        """The exact value when known, otherwise the lower bound."""
        return self.value if self.value is not None else self.lower

    def transform(self, fn: Callable[[float], float], certificate: Optional[str] = None) -> "NormEstimate":
        """Apply a nondecreasing map to value and bracket."""
        cert = self.certificate if certificate is None else certificate
        if self.value is not None:
            return NormEstimate.exact(fn(self.value), self.method, cert)
        upper = fn(self.upper) if math.isfinite(self.upper) else math.inf
        return NormEstimate(value=None, lower=fn(self.lower), upper=upper, method=self.method, certificate=cert)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "lower": self.lower,
            "upper": self.upper if math.isfinite(self.upper) else None,
            "method": self.method.value,
            "certificate": self.certificate,
        }
        if self.value is not None:
            out["value"] = self.value
        return out


def combine_max(first: NormEstimate, second: NormEstimate, certificate: str = "") -> NormEstimate:
    """Bracket of max{a, b} from brackets of a and b."""
    lower = max(first.lower, second.lower)
    upper = max(first.upper, second.upper)
    method = first.method if first.lower >= second.lower else second.method
    if first.is_exact and second.is_exact:
        return NormEstimate.exact(max(first.value, second.value), method, certificate)
    return NormEstimate.bracket(lower, upper, method, certificate)
