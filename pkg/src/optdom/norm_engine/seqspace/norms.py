"""
Sequence-space (quasi-)norms evaluated on finitely supported vectors.

Closed-form branches (Lq, WeightedLq, Power, Intersection) are exact up to
compensated summation; the Sum branch delegates to the aligned-decomposition
solver in `sum_solver`.
"""

import logging
import math
from typing import Sequence

import numpy as np

from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.space_spec import (
    Intersection,
    Lq,
    Power,
    SpaceSpec,
    Sum,
    WeightedLq,
)
from optdom.norm_engine.errors import InvalidSpaceError, NormRangeError

logger = logging.getLogger(__name__)


def norm(space: SpaceSpec, f: FiniteVector) -> float:
    """(Quasi-)norm of a canonical FiniteVector in `space`."""
    if f.is_zero():
        return 0.0
    return vector_norm(space, f.indices, np.asarray(f.values, dtype=float))


def vector_norm(space: SpaceSpec, indices: Sequence[int], values: np.ndarray) -> float:
    """Norm of the vector carrying `values[k]` at `indices[k]` (zeros allowed)."""
    values = np.asarray(values, dtype=float)
    if isinstance(space, Lq):
        return _lq(space.q, indices, np.abs(values))
    if isinstance(space, WeightedLq):
        weights = np.array([space.weights(j) for j in indices], dtype=float)
        return _lq(space.q, indices, weights * np.abs(values))
    if isinstance(space, Power):
        powered = _power_entries(indices, np.abs(values), space.p)
        inner = vector_norm(space.base, indices, powered)
        return _root(inner, space.p, indices, powered)
    if isinstance(space, Intersection):
        return max(vector_norm(space.left, indices, values), vector_norm(space.right, indices, values))
    if isinstance(space, Sum):
        from optdom.norm_engine.seqspace.sum_solver import sum_norm_decomposition

        f = FiniteVector.from_pairs(zip(indices, values.tolist()))
        return sum_norm_decomposition(space, f).value
    raise InvalidSpaceError(f"Unsupported space variant {type(space).__name__}.")


def batch_norm(space: SpaceSpec, indices: Sequence[int], rows: np.ndarray) -> np.ndarray:
    """
    Norms of many vectors at once: row k of `rows` lives on `indices`.

    Vectorized (plain floating-point sums); Sum spaces fall back to one
    solver call per row.
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    if isinstance(space, Lq):
        return _lq_rows(space.q, np.abs(rows))
    if isinstance(space, WeightedLq):
        weights = np.array([space.weights(j) for j in indices], dtype=float)
        return _lq_rows(space.q, np.abs(rows) * weights[None, :])
    if isinstance(space, Power):
        with np.errstate(over="ignore", under="ignore"):
            powered = np.abs(rows) ** space.p
        if not np.all(np.isfinite(powered)):
            bad = int(np.argwhere(~np.isfinite(powered))[0][1])
            raise NormRangeError(f"|f|^{space.p} overflows at index {indices[bad]}.", index=indices[bad])
        inner = batch_norm(space.base, indices, powered)
        with np.errstate(over="ignore"):
            return inner ** (1.0 / space.p)
    if isinstance(space, Intersection):
        return np.maximum(batch_norm(space.left, indices, rows), batch_norm(space.right, indices, rows))
    if isinstance(space, Sum):
        return np.array([vector_norm(space, indices, row) for row in rows])
    raise InvalidSpaceError(f"Unsupported space variant {type(space).__name__}.")


def quasinorm_constant(space: SpaceSpec) -> float:
    """Analytic upper bound K >= 1 of the quasi-triangle constant."""
    if isinstance(space, (Lq, WeightedLq)):
        if space.q >= 1:
            return 1.0
        return 2.0 ** (1.0 / space.q - 1.0)
    if isinstance(space, Power):
        base = quasinorm_constant(space.base)
        inv = 1.0 / space.p
        return base ** max(1.0, inv) * 2.0 ** max(0.0, inv - 1.0)
    if isinstance(space, (Sum, Intersection)):
        # inf over decompositions: ‖f+g‖ <= max(K_X, K_Y)·(‖f‖ + ‖g‖)
        return max(quasinorm_constant(space.left), quasinorm_constant(space.right))
    raise InvalidSpaceError(f"Unsupported space variant {type(space).__name__}.")


def aligned_projection(f: FiniteVector, g1: FiniteVector):
    """
    Project an arbitrary split f = g1 + (f - g1) onto aligned form.

    h1_i = sign(f_i)·clamp(g1_i·sign(f_i), 0, |f_i|), h2 = f - h1.
    """
    g = g1.as_dict()
    pairs = []
    for idx, val in f:
        s = math.copysign(1.0, val)
        t = min(max(g.get(idx, 0.0) * s, 0.0), abs(val))
        pairs.append((idx, s * t))
    h1 = FiniteVector.from_pairs(pairs)
    return h1, f.sub(h1)


# --- helpers ---

def _lq(q: float, indices: Sequence[int], magnitudes: np.ndarray) -> float:
    if magnitudes.size == 0:
        return 0.0
    top = float(np.max(magnitudes))
    if top == 0.0:
        return 0.0
    if math.isinf(q):
        return top
    if q == 1.0:
        return math.fsum(magnitudes.tolist())
    scaled = math.fsum(((magnitudes / top) ** q).tolist())
    try:
        root = scaled ** (1.0 / q)
    except OverflowError:
        root = math.inf
    value = top * root
    if math.isinf(value):
        worst = indices[int(np.argmax(magnitudes))]
        raise NormRangeError(f"Lq({q:g}) norm overflows (largest entry at index {worst}).", index=worst)
    return value


def _lq_rows(q: float, magnitudes: np.ndarray) -> np.ndarray:
    if magnitudes.shape[1] == 0:
        return np.zeros(magnitudes.shape[0])
    top = magnitudes.max(axis=1)
    if math.isinf(q):
        return top
    if q == 1.0:
        return magnitudes.sum(axis=1)
    safe = np.where(top > 0, top, 1.0)
    with np.errstate(over="ignore"):
        scaled = ((magnitudes / safe[:, None]) ** q).sum(axis=1) ** (1.0 / q)
    return np.where(top > 0, top * scaled, 0.0)


def _power_entries(indices: Sequence[int], magnitudes: np.ndarray, p: float) -> np.ndarray:
    out = np.empty_like(magnitudes)
    for k, (idx, val) in enumerate(zip(indices, magnitudes)):
        if val == 0.0:
            out[k] = 0.0
            continue
        try:
            powered = float(val) ** p
        except OverflowError:
            raise NormRangeError(f"|f|^{p} overflows at index {idx}.", index=idx)
        if math.isinf(powered):
            raise NormRangeError(f"|f|^{p} overflows at index {idx}.", index=idx)
        if powered == 0.0:
            raise NormRangeError(f"|f|^{p} underflows to zero at index {idx}.", index=idx)
        out[k] = powered
    return out


def _root(inner: float, p: float, indices: Sequence[int], powered: np.ndarray) -> float:
    try:
        value = inner ** (1.0 / p)
    except OverflowError:
        value = math.inf
    if math.isinf(value):
        worst = indices[int(np.argmax(powered))] if len(indices) else None
        raise NormRangeError(f"Power norm overflows taking the 1/{p:g} root.", index=worst)
    return value

