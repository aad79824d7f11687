"""
Inequality checkers: Young's inequality for products of powers and an
empirical scan of the quasi-triangle constant.
"""

import logging

import numpy as np

from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.space_spec import SpaceSpec
from optdom.norm_engine.errors import InvalidArgumentError
from optdom.norm_engine.seeding import task_rng
from optdom.norm_engine.seqspace.norms import norm

logger = logging.getLogger(__name__)

YOUNG_SLACK = 1e-12


def _young_sides(a: float, b: float, s: float, t: float):
    if a < 0 or b < 0 or not (s > 0 and t > 0):
        raise InvalidArgumentError(f"young_check needs a, b >= 0 and s, t > 0, got {(a, b, s, t)}.")
    r = 1.0 / (1.0 / s + 1.0 / t)
    lhs = a ** r * b ** r
    rhs = (r / s) * a ** s + (r / t) * b ** t
    return lhs, rhs


def young_check(a: float, b: float, s: float, t: float) -> bool:
    """a^r b^r <= (r/s) a^s + (r/t) b^t with 1/r = 1/s + 1/t, up to 1e-12 relative slack."""
    lhs, rhs = _young_sides(a, b, s, t)
    return lhs <= rhs + YOUNG_SLACK * max(abs(rhs), abs(lhs))


def young_gap(a: float, b: float, s: float, t: float) -> float:
    """Relative slack (rhs - lhs) / rhs; zero exactly at the equality case a^s = b^t."""
    lhs, rhs = _young_sides(a, b, s, t)
    if rhs == 0:
        return 0.0
    return (rhs - lhs) / rhs


def quasinorm_axiom_scan(space: SpaceSpec, samples: int, seed: int = 0, support: int = 6) -> float:
    """
    Largest observed ‖f + g‖ / (‖f‖ + ‖g‖) over seeded random pairs.

    The disjoint pair (e_1, e_2) is always included: it saturates 2^{1/q - 1}
    for ℓ^q with q < 1.
    """
    observed = _ratio(space, FiniteVector.unit(1), FiniteVector.unit(2))
    rng = task_rng(seed, "quasinorm-scan")
    for _ in range(samples):
        f = random_vector(rng, support)
        g = random_vector(rng, support)
        observed = max(observed, _ratio(space, f, g))
    logger.debug("Observed quasi-triangle constant of %s over %d pairs: %.6g", space.describe(), samples, observed)
    return observed


def _ratio(space: SpaceSpec, f: FiniteVector, g: FiniteVector) -> float:
    denom = norm(space, f) + norm(space, g)
    if denom == 0:
        return 0.0
    return norm(space, f + g) / denom


def random_vector(rng: np.random.Generator, support: int) -> FiniteVector:
    size = int(rng.integers(1, support + 1))
    indices = rng.choice(np.arange(1, 2 * support + 1), size=size, replace=False)
    magnitudes = np.exp(rng.normal(0.0, 1.0, size=size))
    signs = rng.choice(np.array([-1.0, 1.0]), size=size)
    # half of the pairs are nonnegative, where quasi-norms are tightest
    if rng.random() < 0.5:
        signs = np.abs(signs)
    values = magnitudes * signs
    return FiniteVector.from_pairs(zip(indices.tolist(), values.tolist()))
