"""
Brute-force reference computations.

Each routine enumerates its search space directly (aligned grids, subsets,
sampled dual functionals, simplex grids) and reads matrix entries straight
from `MatrixOperator.coefficient`, without going through the solvers it is
used to validate.
"""

import math
from itertools import combinations, product
from typing import Callable, List, Sequence, Tuple

import numpy as np

from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.space_spec import Lq, SpaceSpec
from optdom.norm_engine.errors import SupportTooLargeError, UnsupportedDualError
from optdom.norm_engine.seeding import task_rng
from optdom.norm_engine.seqspace.norms import batch_norm, norm
from optdom.norm_engine.vmeasure.measure import AtomicVectorMeasure, integrate

SUM_GRID_CAP = 4
SUBSET_CAP = 20
SIMPLEX_CAP = 4
SIMPLEX_STEPS = 64
SAMPLE_CHUNK = 4096


def sum_norm_bruteforce(X: SpaceSpec, Y: SpaceSpec, f: FiniteVector, grid_steps: int = 64) -> float:
    """min over the aligned grid u_i ∈ {0, |f_i|/g, ..., |f_i|} of ‖u‖_X + ‖|f| - u‖_Y."""
    if len(f) > SUM_GRID_CAP:
        raise SupportTooLargeError(f"sum_norm_bruteforce supports at most {SUM_GRID_CAP} coordinates, got {len(f)}.")
    if f.is_zero():
        return 0.0
    indices = list(f.indices)
    a = np.abs(np.asarray(f.values, dtype=float))
    levels = np.arange(grid_steps + 1, dtype=float) / grid_steps

    # one chunk per value of the first coordinate
    rest = np.array(list(product(range(grid_steps + 1), repeat=len(a) - 1)), dtype=float).reshape(-1, len(a) - 1)
    best = math.inf
    for k0 in range(grid_steps + 1):
        U = np.empty((rest.shape[0], len(a)))
        U[:, 0] = levels[k0] * a[0]
        if len(a) > 1:
            U[:, 1:] = levels[rest.astype(int)] * a[None, 1:]
        values = batch_norm(X, indices, U) + batch_norm(Y, indices, a[None, :] - U)
        best = min(best, float(values.min()))
    return best


def exhaustive_subset_sup(m: AtomicVectorMeasure, f: FiniteVector) -> float:
    """Exact max over every A ⊆ supp f of ‖∫_A f dm‖_E."""
    s = len(f)
    if s > SUBSET_CAP:
        raise SupportTooLargeError(f"exhaustive_subset_sup supports at most {SUBSET_CAP} atoms, got {s}.")
    if s == 0:
        return 0.0
    rows, atoms = _dense_atoms(m.source, f.indices, m.n_E)
    weighted = atoms * np.asarray(f.values, dtype=float)[:, None]

    best_value, best_subset = -1.0, ()
    for size in range(1, s + 1):
        for subset in combinations(range(s), size):
            value = float(batch_norm(m.codomain, rows, weighted[list(subset)].sum(axis=0)[None, :])[0])
            if value > best_value:
                best_value, best_subset = value, subset
    chosen = [f.indices[k] for k in best_subset]
    return norm(m.codomain, integrate(m, f, chosen))


def l1m_norm_dual_sample(m: AtomicVectorMeasure, f: FiniteVector, samples: int, seed: int = 0) -> float:
    """
    max over unit functionals y of Σ_j |f_j|·|⟨C_j, y⟩|.

    Gaussian directions normalized in ℓ^{q'}, plus the all-ones direction
    and the norming functionals of every atom and of M|f|.
    """
    E = m.codomain
    if not (isinstance(E, Lq) and E.q >= 1):
        raise UnsupportedDualError(f"Dual sampling needs an Lq codomain with q >= 1, got {E.describe()}.")
    if f.is_zero():
        return 0.0
    rows, atoms = _dense_atoms(m.source, f.indices, m.n_E)
    if not rows:
        return 0.0
    weights = np.abs(np.asarray(f.values, dtype=float))
    dual_q = math.inf if E.q == 1.0 else (1.0 if math.isinf(E.q) else E.q / (E.q - 1.0))

    deterministic = [np.ones(len(rows))]
    deterministic.extend(_norming_functional(atom, E.q) for atom in atoms)
    deterministic.append(_norming_functional(weights @ np.abs(atoms), E.q))
    deterministic.append(_norming_functional(weights @ atoms, E.q))
    best = _dual_values(atoms, weights, _normalize_rows(np.array(deterministic), dual_q)).max()

    rng = task_rng(seed, "l1m-dual-sample")
    remaining = samples
    while remaining > 0:
        size = min(SAMPLE_CHUNK, remaining)
        Y = _normalize_rows(rng.normal(size=(size, len(rows))), dual_q)
        best = max(best, _dual_values(atoms, weights, Y).max())
        remaining -= size
    return float(best)


def simplex_grid(n: int, steps: int = SIMPLEX_STEPS) -> np.ndarray:
    """All x >= 0 with Σ x_j = 1 and every x_j a multiple of 1/steps."""
    if n < 1:
        raise SupportTooLargeError("simplex_grid needs n >= 1.")
    if n == 1:
        return np.ones((1, 1))
    out = []
    for bars in combinations(range(steps + n - 1), n - 1):
        previous = -1
        parts = []
        for b in bars:
            parts.append(b - previous - 1)
            previous = b
        parts.append(steps + n - 2 - previous)
        out.append(parts)
    return np.array(out, dtype=float) / steps


def simplex_grid_sup(batch_ratio: Callable[[np.ndarray], np.ndarray], n: int,
                     steps: int = SIMPLEX_STEPS) -> Tuple[float, np.ndarray]:
    """max of a scale-invariant ratio over the simplex grid (n <= 4)."""
    if n > SIMPLEX_CAP:
        raise SupportTooLargeError(f"Simplex grid oracle supports n <= {SIMPLEX_CAP}, got {n}.")
    grid = simplex_grid(n, steps)
    values = batch_ratio(grid)
    k = int(np.nanargmax(values))
    return float(values[k]), grid[k]


def constant_grid_sup(M: MatrixOperator, E: SpaceSpec, domain: SpaceSpec, n: int, n_E: int,
                      steps: int = SIMPLEX_STEPS) -> Tuple[float, np.ndarray]:
    """Grid reference for sup ‖Mx‖_E / ‖x‖_domain over x >= 0 on [1, n]."""
    rows, atoms = _dense_atoms(M, range(1, n + 1), n_E)
    domain_indices = list(range(1, n + 1))

    def ratio(X: np.ndarray) -> np.ndarray:
        return batch_norm(E, rows, X @ atoms) / batch_norm(domain, domain_indices, X)

    return simplex_grid_sup(ratio, n, steps)


def domination_grid_sup(M: MatrixOperator, E: SpaceSpec, r: float, n: int, n_E: int,
                        steps: int = SIMPLEX_STEPS) -> Tuple[float, np.ndarray]:
    """Grid reference for sup ‖Σ x_j^r C_j‖^{1/r} / sup_N ‖Σ_N x_j C_j‖."""
    rows, atoms = _dense_atoms(M, range(1, n + 1), n_E)

    def ratio(X: np.ndarray) -> np.ndarray:
        numerator = batch_norm(E, rows, (X ** r) @ atoms) ** (1.0 / r)
        return numerator / _subset_sup_rows(E, rows, atoms, X)

    return simplex_grid_sup(ratio, n, steps)


def embedding_grid_sup(M: MatrixOperator, E: SpaceSpec, r: float, n: int, n_E: int,
                       steps: int = SIMPLEX_STEPS) -> Tuple[float, np.ndarray]:
    """Grid reference for sup ‖x‖_{L^r(m)} / ‖x‖_{L¹(m)} by sign enumeration."""
    rows, atoms = _dense_atoms(M, range(1, n + 1), n_E)

    def ratio(X: np.ndarray) -> np.ndarray:
        numerator = _sign_sup_rows(E, rows, atoms, X ** r) ** (1.0 / r)
        return numerator / _sign_sup_rows(E, rows, atoms, X)

    return simplex_grid_sup(ratio, n, steps)


# --- helpers ---

def _dense_atoms(M: MatrixOperator, columns: Sequence[int], n_E: int) -> Tuple[List[int], np.ndarray]:
    """Columns as rows of a dense array over the rows where some column is nonzero."""
    columns = list(columns)
    full = np.array([[M.coefficient(i, j) for i in range(1, n_E + 1)] for j in columns], dtype=float)
    keep = np.flatnonzero(np.any(full != 0.0, axis=0))
    return [int(i) + 1 for i in keep], full[:, keep]


def _subset_sup_rows(E: SpaceSpec, rows: List[int], atoms: np.ndarray, X: np.ndarray) -> np.ndarray:
    n = atoms.shape[0]
    best = np.zeros(X.shape[0])
    for mask in range(1, 1 << n):
        pick = np.array([(mask >> b) & 1 for b in range(n)], dtype=float)
        best = np.maximum(best, batch_norm(E, rows, (X * pick[None, :]) @ atoms))
    return best


def _sign_sup_rows(E: SpaceSpec, rows: List[int], atoms: np.ndarray, X: np.ndarray) -> np.ndarray:
    n = atoms.shape[0]
    best = np.zeros(X.shape[0])
    for signs in product((1.0, -1.0), repeat=n - 1):
        eps = np.array((1.0,) + signs)
        best = np.maximum(best, batch_norm(E, rows, (X * eps[None, :]) @ atoms))
    return best


def _norming_functional(v: np.ndarray, q: float) -> np.ndarray:
    """y with ‖y‖_{q'} = 1 and ⟨v, y⟩ = ‖v‖_q (up to the final normalization)."""
    if not np.any(v):
        return np.ones_like(v)
    if math.isinf(q):
        y = np.zeros_like(v)
        k = int(np.argmax(np.abs(v)))
        y[k] = np.sign(v[k])
        return y
    if q == 1.0:
        return np.sign(v)
    mags = np.abs(v) / np.abs(v).max()
    return np.sign(v) * mags ** (q - 1.0)


def _normalize_rows(Y: np.ndarray, dual_q: float) -> np.ndarray:
    mags = np.abs(Y)
    if math.isinf(dual_q):
        scale = mags.max(axis=1)
    elif dual_q == 1.0:
        scale = mags.sum(axis=1)
    else:
        top = mags.max(axis=1, keepdims=True)
        top = np.where(top > 0, top, 1.0)
        scale = top[:, 0] * ((mags / top) ** dual_q).sum(axis=1) ** (1.0 / dual_q)
    scale = np.where(scale > 0, scale, 1.0)
    return Y / scale[:, None]


def _dual_values(atoms: np.ndarray, weights: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return weights @ np.abs(atoms @ Y.T)
