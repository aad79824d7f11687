"""Köthe duals and norm gradients of the closed-form lattice norms."""

import math
from typing import Optional, Sequence

import numpy as np

from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.space_spec import Lq, SpaceSpec, WeightedLq
from optdom.norm_engine.errors import UnsupportedDualError
from optdom.norm_engine.seqspace.norms import vector_norm


def conjugate_exponent(q: float) -> float:
    """q' with 1/q + 1/q' = 1, for q in [1, inf]."""
    if q == 1.0:
        return math.inf
    if math.isinf(q):
        return 1.0
    return q / (q - 1.0)


def koethe_dual_norm(space: SpaceSpec, f: FiniteVector) -> float:
    """‖f‖ in the Köthe dual of `space` (Lq or WeightedLq with q >= 1 only)."""
    if f.is_zero():
        _check_dual(space)
        return 0.0
    return dual_vector_norm(space, f.indices, np.asarray(f.values, dtype=float))


def dual_vector_norm(space: SpaceSpec, indices: Sequence[int], values: np.ndarray) -> float:
    _check_dual(space)
    values = np.asarray(values, dtype=float)
    qc = conjugate_exponent(space.q)
    if isinstance(space, WeightedLq):
        weights = np.array([space.weights(j) for j in indices], dtype=float)
        values = values / weights
    return vector_norm(Lq(qc), indices, values)


def norm_gradient(space: SpaceSpec, indices: Sequence[int], values: np.ndarray) -> Optional[np.ndarray]:
    """
    Gradient (a subgradient at kinks) of the norm at `values`.

    Returns None when no closed form applies: Power/Sum/Intersection
    variants, the zero vector, or q < 1 with a vanishing coordinate.
    For q >= 1 the result is a norming functional: its dual norm is 1 and
    its pairing with `values` equals the norm.
    """
    values = np.asarray(values, dtype=float)
    if not isinstance(space, (Lq, WeightedLq)):
        return None
    if isinstance(space, WeightedLq):
        weights = np.array([space.weights(j) for j in indices], dtype=float)
    else:
        weights = np.ones(len(indices))
    y = weights * values
    if not np.any(y):
        return None
    q = space.q
    if q < 1 and np.any(y == 0):
        return None
    signs = np.sign(y)
    mags = np.abs(y)
    if math.isinf(q):
        g = np.zeros_like(y)
        k = int(np.argmax(mags))
        g[k] = signs[k]
    elif q == 1.0:
        g = np.where(signs == 0, 1.0, signs)
    else:
        total = vector_norm(Lq(q), indices, y)
        g = signs * (mags / total) ** (q - 1.0)
    return weights * g


def _check_dual(space: SpaceSpec) -> None:
    if not isinstance(space, (Lq, WeightedLq)):
        raise UnsupportedDualError(f"No closed-form Köthe dual for {space.describe()}.")
    if space.q < 1:
        raise UnsupportedDualError(f"{space.describe()} is not a Banach lattice; its Köthe dual is not computed.")
