"""
Multiplicative ascent for scale-invariant ratios on the open positive cone.

The objective R(x) is homogeneous of degree 0, so each step moves along the
log-coordinates x_j <- x_j·exp(η·e_j / max|e|), with e_j = x_j ∂_j R (the
elasticities), then rescales so that max x_j = 1. Nonnegativity is preserved
by construction.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from optdom.norm_engine.entities.factorability_report import AscentTrace
from optdom.norm_engine.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 10_000
REL_IMPROVEMENT = 1e-10
MIN_STEP = 1e-12
INITIAL_STEP = 0.5
FLOOR = 1e-30
FD_STEP = 1e-6

RatioFn = Callable[[np.ndarray], float]
ElasticityFn = Callable[[np.ndarray], Optional[np.ndarray]]


@dataclass(frozen=True)
class RatioProblem:
    """
    Rapport homogène de degré 0 à maximiser sur x >= 0, x != 0.

    Attributes
    - n (int): dimension
    - ratio (callable): évaluation rapide (vectorisée) de R(x)
    - elasticity (callable|None): x ⊙ ∇R(x) à un facteur positif près ;
        None (ou un retour None) déclenche les différences finies
    - exact (callable|None): réévaluation compensée des points finaux
    """
    n: int
    ratio: RatioFn
    elasticity: Optional[ElasticityFn] = None
    exact: Optional[RatioFn] = None

    def evaluate_exact(self, x: np.ndarray) -> float:
        return self.exact(x) if self.exact is not None else self.ratio(x)


def ascend(problem: RatioProblem, start: np.ndarray) -> Tuple[np.ndarray, float, int]:
    """Run one ascent; returns (maximizer, fast value, iterations)."""
    x = _normalize(np.maximum(np.asarray(start, dtype=float), 0.0))
    value = problem.ratio(x)
    step = INITIAL_STEP
    iterations = 0

    while iterations < MAX_ITERATIONS and step >= MIN_STEP:
        iterations += 1
        e = _elasticity(problem, x, value)
        scale = float(np.max(np.abs(e))) if e.size else 0.0
        if not scale > 0 or not math.isfinite(scale):
            break
        candidate = _normalize(x * np.exp(step * e / scale))
        candidate = np.where(x > 0, np.maximum(candidate, FLOOR), 0.0)
        candidate_value = problem.ratio(candidate)
        if candidate_value > value:
            improvement = (candidate_value - value) / max(abs(value), FLOOR)
            x, value = candidate, candidate_value
            step = min(2.0 * step, 1.0)
            if improvement < REL_IMPROVEMENT:
                break
        else:
            step /= 2.0
    return x, value, iterations


def maximize(problem: RatioProblem, starts: Sequence[np.ndarray],
             candidates: Sequence[np.ndarray] = ()) -> Tuple[float, np.ndarray, AscentTrace]:
    """
    Ascend from every start, evaluate every candidate as is, and keep the
    point with the largest exactly re-evaluated ratio (lowest index on ties;
    starts come before candidates).
    """
    finals: List[np.ndarray] = []
    total_iterations = 0
    for start in starts:
        x, _, iterations = ascend(problem, start)
        finals.append(x)
        total_iterations += iterations
    finals.extend(np.asarray(c, dtype=float) for c in candidates if np.any(np.asarray(c) > 0))
    if not finals:
        raise InvalidArgumentError("maximize needs at least one start or nonzero candidate.")

    best_index, best_value = 0, -math.inf
    for k, x in enumerate(finals):
        value = problem.evaluate_exact(x)
        if value > best_value:
            best_index, best_value = k, value
    best_x = finals[best_index]
    trace = AscentTrace(
        starts=len(finals),
        best_start=best_index,
        iterations=total_iterations,
        maximizer=tuple(float(v) for v in best_x),
    )
    logger.debug("Ascent over %d points: best %.12g from point %d after %d iterations",
                 len(finals), best_value, best_index, total_iterations)
    return best_value, best_x, trace


def _elasticity(problem: RatioProblem, x: np.ndarray, value: float) -> np.ndarray:
    if problem.elasticity is not None:
        e = problem.elasticity(x)
        if e is not None:
            return np.where(x > 0, e, 0.0)
    e = np.zeros(problem.n)
    for j in np.flatnonzero(x > 0):
        shifted = x.copy()
        shifted[j] *= math.exp(FD_STEP)
        e[j] = (problem.ratio(shifted) - value) / FD_STEP
    return e


def _normalize(x: np.ndarray) -> np.ndarray:
    top = float(np.max(x)) if x.size else 0.0
    return x / top if top > 0 else x
