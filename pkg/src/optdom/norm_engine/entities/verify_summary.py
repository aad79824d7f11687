from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

SCALES = ("quick", "full")


@dataclass
class InvariantResult:
    """
    Résultat d'un invariant du jeu de vérification.

    Attributes
    - name (str): identifiant de l'invariant
    - checked (int): nombre de cas évalués
    - failed (int): nombre de cas en échec
    - first_failure (str|None): description du premier échec
    """
    name: str
    checked: int = 0
    failed: int = 0
    first_failure: Optional[str] = None

    def record(self, ok: bool, detail: str = "") -> None:
        self.checked += 1
        if not ok:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = detail

    @property
    def passed(self) -> bool:
        return self.failed == 0 and self.checked > 0


@dataclass
class VerifySummary:
    seed: int
    scale: str
    results: List[InvariantResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "scale": self.scale,
            "passed": self.passed,
            "invariants": [
                {
                    "name": r.name,
                    "checked": r.checked,
                    "failed": r.failed,
                    "passed": r.passed,
                    "first_failure": r.first_failure,
                }
                for r in self.results
            ],
        }
