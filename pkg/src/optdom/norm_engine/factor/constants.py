"""
Lower bounds for the factorization constant C_p(n) and the domination
constant D_r(n) of a matrix truncated to its first n columns.

Both are suprema of scale-invariant ratios over nonnegative x on [1, n]; they
are estimated with the multiplicative ascent of `factor.ascent` from seeded
starts. The returned value is always the ratio at an evaluated point, hence a
valid lower bound. For n <= 4 the simplex-grid oracle is run alongside.
"""

import dataclasses
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from optdom.norm_engine.entities.factorability_report import ConstantPoint
from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.space_spec import SpaceSpec
from optdom.norm_engine.errors import InvalidArgumentError
from optdom.norm_engine.factor.ascent import RatioProblem, maximize
from optdom.norm_engine.matop.operations import apply, check_nonzero_columns, column
from optdom.norm_engine.oracle.brute_force import SIMPLEX_CAP, constant_grid_sup, domination_grid_sup
from optdom.norm_engine.seeding import task_rng
from optdom.norm_engine.seqspace.duals import norm_gradient
from optdom.norm_engine.seqspace.norms import batch_norm, norm, vector_norm

logger = logging.getLogger(__name__)

CONFIRM_RATIO = 0.99
WARM_PERTURBATION = 0.05
SUBSET_CHUNK = 1 << 14


def truncated_block(M: MatrixOperator, n: int, n_E: int) -> Tuple[List[int], np.ndarray]:
    """
    Columns C_1..C_n (rows 1..n_E) stacked as the rows of a dense array.

    Returns (row indices of E, B) with B[j-1] = C_j restricted to the union
    of the column supports.
    """
    columns = [column(M, j, n_E) for j in range(1, n + 1)]
    rows = sorted(set(i for col in columns for i in col.indices))
    position = {i: k for k, i in enumerate(rows)}
    B = np.zeros((n, len(rows)))
    for j, col in enumerate(columns):
        for i, a in col:
            B[j, position[i]] = a
    return rows, B


# --- C_p(n) ---

def constant_problem(M: MatrixOperator, E: SpaceSpec, domain: SpaceSpec, n: int, n_E: int) -> RatioProblem:
    """R(x) = ‖Mx‖_E / ‖x‖_domain on [1, n]."""
    rows, B = truncated_block(M, n, n_E)
    idx = list(range(1, n + 1))

    def ratio(x: np.ndarray) -> float:
        den = vector_norm(domain, idx, x)
        return float(batch_norm(E, rows, (x @ B)[None, :])[0]) / den if den > 0 else 0.0

    def elasticity(x: np.ndarray) -> Optional[np.ndarray]:
        y = x @ B
        g_E = norm_gradient(E, rows, y)
        g_D = norm_gradient(domain, idx, x)
        if g_E is None or g_D is None:
            return None
        return x * (B @ g_E) / vector_norm(E, rows, y) - x * g_D / vector_norm(domain, idx, x)

    def exact(x: np.ndarray) -> float:
        f = FiniteVector.from_dense(x)
        return norm(E, apply(M, f, n_E)) / norm(domain, f)

    return RatioProblem(n=n, ratio=ratio, elasticity=elasticity, exact=exact)


def best_constant(M: MatrixOperator, E: SpaceSpec, domain: SpaceSpec, n: int, restarts: int = 8, *,
                  n_E: int, seed: int = 0, warm_start: Optional[Sequence[float]] = None,
                  confirm: bool = True) -> ConstantPoint:
    """
    Lower bound of sup { ‖Mx‖_E : x >= 0 on [1, n], ‖x‖_domain = 1 }.

    Every unit vector e_j and the zero-padded `warm_start` (typically the
    maximizer at the previous schedule point) are evaluated as candidates,
    which keeps the estimates nondecreasing along a schedule.
    """
    _check_sizes(n, restarts)
    check_nonzero_columns(M, n, n_E)
    problem = constant_problem(M, E, domain, n, n_E)
    starts, candidates = starts_and_candidates(n, restarts, task_rng(seed, "best-constant", n), warm_start)
    value, x, trace = maximize(problem, starts, candidates)

    scale = vector_norm(domain, list(range(1, n + 1)), x)
    trace = dataclasses.replace(trace, maximizer=tuple(float(v) for v in x / scale))

    grid_value, confirmed = None, None
    if confirm and n <= SIMPLEX_CAP:
        grid_value, _ = constant_grid_sup(M, E, domain, n, n_E)
        confirmed = _confirm("best_constant", value, grid_value, n)
    logger.info("C(n=%d) of '%s' into %s over %s: %.10g", n, M.name, E.describe(), domain.describe(), value)
    return ConstantPoint(n=n, value=value, trace=trace, grid_value=grid_value, confirmed=confirmed)


# --- D_r(n) ---

def domination_problem(M: MatrixOperator, E: SpaceSpec, r: float, n: int, n_E: int,
                       n_enum: int) -> Tuple[RatioProblem, bool]:
    """
    R(x) = ‖Σ x_j^r C_j‖^{1/r} / sup_{N ⊆ [1,n]} ‖Σ_{j∈N} x_j C_j‖.

    The denominator is the full sum for declared-nonnegative matrices, an
    exhaustive subset maximum for n <= n_enum and a greedy subset otherwise;
    the returned flag says whether it is exact.
    """
    rows, B = truncated_block(M, n, n_E)

    def numerator(x: np.ndarray) -> float:
        return float(batch_norm(E, rows, ((x ** r) @ B)[None, :])[0]) ** (1.0 / r)

    if M.nonnegative:
        def denominator(x: np.ndarray) -> float:
            return float(batch_norm(E, rows, (x @ B)[None, :])[0])
        exact_denominator = True
    elif n <= n_enum:
        def denominator(x: np.ndarray) -> float:
            return _subset_max(E, rows, B, x)
        exact_denominator = True
    else:
        def denominator(x: np.ndarray) -> float:
            return _greedy_subset(E, rows, B, x)
        exact_denominator = False

    def ratio(x: np.ndarray) -> float:
        den = denominator(x)
        return numerator(x) / den if den > 0 else 0.0

    elasticity = exact = None
    if M.nonnegative:
        def elasticity(x: np.ndarray) -> Optional[np.ndarray]:
            xr = x ** r
            y_r, y = xr @ B, x @ B
            g_r, g = norm_gradient(E, rows, y_r), norm_gradient(E, rows, y)
            if g_r is None or g is None:
                return None
            return xr * (B @ g_r) / vector_norm(E, rows, y_r) - x * (B @ g) / vector_norm(E, rows, y)

        def exact(x: np.ndarray) -> float:
            f = FiniteVector.from_dense(x)
            top = norm(E, apply(M, f.power(r), n_E)) ** (1.0 / r)
            return top / norm(E, apply(M, f, n_E))

    return RatioProblem(n=n, ratio=ratio, elasticity=elasticity, exact=exact), exact_denominator


def power_domination_constant(M: MatrixOperator, E: SpaceSpec, r: float, n: int, restarts: int = 8, *,
                              n_E: int, n_enum: int = 20, seed: int = 0,
                              warm_start: Optional[Sequence[float]] = None,
                              confirm: bool = True) -> ConstantPoint:
    """Lower bound of the r-power domination constant D_r(n)."""
    if not (r > 0 and np.isfinite(r)):
        raise InvalidArgumentError(f"r must be in (0, inf), got {r}.")
    if r > 1:
        logger.warning("Domination exponent r = %g > 1 is unusual (factorization uses r = 1/p <= 1).", r)
    _check_sizes(n, restarts)
    check_nonzero_columns(M, n, n_E)

    problem, exact_denominator = domination_problem(M, E, r, n, n_E, n_enum)
    starts, candidates = starts_and_candidates(n, restarts, task_rng(seed, "power-domination", n), warm_start)
    value, x, trace = maximize(problem, starts, candidates)
    trace = dataclasses.replace(trace, maximizer=tuple(float(v) for v in x / x.sum()))

    if not exact_denominator:
        logger.warning("D_%g(%d): greedy subset denominator; the value is not a certified lower bound.", r, n)

    grid_value, confirmed = None, None
    if confirm and n <= SIMPLEX_CAP:
        grid_value, _ = domination_grid_sup(M, E, r, n, n_E)
        confirmed = _confirm("power_domination_constant", value, grid_value, n)
    return ConstantPoint(n=n, value=value, trace=trace, grid_value=grid_value, confirmed=confirmed,
                         exact_denominator=exact_denominator)


# --- helpers ---

def _check_sizes(n: int, restarts: int) -> None:
    if n < 1:
        raise InvalidArgumentError(f"Truncation size n must be >= 1, got {n}.")
    if restarts < 0:
        raise InvalidArgumentError(f"restarts must be >= 0, got {restarts}.")


def starts_and_candidates(n: int, restarts: int, rng: np.random.Generator,
                           warm_start: Optional[Sequence[float]]) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Ones plus `restarts` seeded uniform starts; unit vectors and the padded warm start as candidates."""
    starts = [np.ones(n)]
    starts.extend(rng.uniform(0.1, 1.0, size=n) for _ in range(restarts))
    candidates = [row for row in np.eye(n)]
    if warm_start is not None and len(warm_start) > 0:
        padded = np.zeros(n)
        m = min(n, len(warm_start))
        padded[:m] = np.maximum(np.asarray(warm_start, dtype=float)[:m], 0.0)
        if padded.max() > 0:
            starts.append(padded + WARM_PERTURBATION * padded.max())
            candidates.append(padded)
    return starts, candidates


def _confirm(name: str, value: float, grid_value: float, n: int) -> bool:
    confirmed = value >= CONFIRM_RATIO * grid_value
    if not confirmed:
        logger.warning("%s at n=%d: ascent %.10g below 99%% of the grid oracle %.10g.", name, n, value, grid_value)
    return confirmed


def _subset_max(E: SpaceSpec, rows: List[int], B: np.ndarray, x: np.ndarray) -> float:
    n = B.shape[0]
    total = (1 << n) - 1
    shifts = np.arange(n, dtype=np.int64)
    weighted = x[:, None] * B
    best = 0.0
    for start in range(1, total + 1, SUBSET_CHUNK):
        masks = np.arange(start, min(total, start + SUBSET_CHUNK - 1) + 1, dtype=np.int64)
        picks = ((masks[:, None] >> shifts[None, :]) & 1).astype(float)
        best = max(best, float(batch_norm(E, rows, picks @ weighted).max()))
    return best


def _greedy_subset(E: SpaceSpec, rows: List[int], B: np.ndarray, x: np.ndarray) -> float:
    weighted = x[:, None] * B
    current = np.zeros(B.shape[1])
    chosen = np.zeros(B.shape[0], dtype=bool)
    best = 0.0
    while not chosen.all():
        trial = current[None, :] + weighted
        values = batch_norm(E, rows, trial)
        values[chosen] = -1.0
        k = int(np.argmax(values))
        if values[k] <= best:
            break
        best = float(values[k])
        current = trial[k]
        chosen[k] = True
    return best
