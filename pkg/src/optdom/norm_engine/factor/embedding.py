"""
Finite-scale consequences of ℓ¹(m) ⊂ ℓ^r(m) ⇔ r-power domination, and of
1/p-power domination ⇒ p-th power factorability.
"""

import logging
import math
from itertools import combinations
from typing import List

import numpy as np

from optdom.norm_engine.entities.factorability_report import DominationCheck, FactorizationBound
from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.space_spec import SpaceSpec, is_banach
from optdom.norm_engine.errors import PreconditionError
from optdom.norm_engine.factor.ascent import RatioProblem, maximize
from optdom.norm_engine.factor.constants import (
    domination_problem,
    power_domination_constant,
    starts_and_candidates,
    truncated_block,
)
from optdom.norm_engine.matop.operations import apply, check_nonzero_columns, operator_norm_l1
from optdom.norm_engine.oracle.brute_force import SIMPLEX_CAP, domination_grid_sup, embedding_grid_sup
from optdom.norm_engine.seeding import task_rng
from optdom.norm_engine.seqspace.norms import batch_norm
from optdom.norm_engine.vmeasure.l1m import l1m_norm, lpm_norm
from optdom.norm_engine.vmeasure.measure import AtomicVectorMeasure, integrate

logger = logging.getLogger(__name__)

CHECK_TOL = 1e-6
EXTENSION_TOL = 1e-12
RESTRICTION_CAP = 12


def embedding_problem(m: AtomicVectorMeasure, r: float, n: int) -> RatioProblem:
    """R(x) = ‖x‖_{L^r(m)} / ‖x‖_{L¹(m)} on [1, n], both by sign enumeration."""
    rows, B = truncated_block(m.source, n, m.n_E)
    free = n - 1
    ks = np.arange(1 << free, dtype=np.int64)
    signs = np.ones((len(ks), n))
    if free:
        signs[:, 1:] = 1.0 - 2.0 * ((ks[:, None] >> np.arange(free, dtype=np.int64)[None, :]) & 1)

    def l1(x: np.ndarray) -> float:
        return float(batch_norm(m.codomain, rows, (signs * x[None, :]) @ B).max())

    def ratio(x: np.ndarray) -> float:
        den = l1(x)
        return l1(x ** r) ** (1.0 / r) / den if den > 0 else 0.0

    def exact(x: np.ndarray) -> float:
        f = FiniteVector.from_dense(x)
        return lpm_norm(m, f, r).best / l1m_norm(m, f).best

    return RatioProblem(n=n, ratio=ratio, exact=exact)


def domination_embedding_check(M: MatrixOperator, E: SpaceSpec, r: float, n: int, *, n_E: int,
                               n_enum: int = 20, restarts: int = 8, seed: int = 0) -> DominationCheck:
    """
    Estimate D = D_r(n) and B = sup ‖x‖_{ℓ^r(m)} / ‖x‖_{ℓ¹(m)}, then check
    D <= 2B and B <= 2^{1/r}·D up to CHECK_TOL.

    Both inequalities hold pointwise (D at x against B at x; B at x against D
    at the restrictions of x), so each estimate is also evaluated at the
    other's maximizers.
    """
    if n > n_enum:
        raise PreconditionError(f"domination_embedding_check needs exact norms: n = {n} > n_enum = {n_enum}.")
    check_nonzero_columns(M, n, n_E)
    m = AtomicVectorMeasure(M, E, n_E, n_enum=n_enum, seed=seed, use_tail=False)

    d_point = power_domination_constant(M, E, r, n, restarts, n_E=n_E, n_enum=n_enum, seed=seed, confirm=False)
    d_problem, _ = domination_problem(M, E, r, n, n_E, n_enum)
    b_problem = embedding_problem(m, r, n)

    D = d_point.value
    d_points = [np.asarray(d_point.trace.maximizer, dtype=float)]
    starts, candidates = starts_and_candidates(n, restarts, task_rng(seed, "embedding", n), None)
    B, x_B, _ = maximize(b_problem, starts, candidates + d_points)
    b_points = [x_B]

    if n <= SIMPLEX_CAP:
        d_grid, x_dg = domination_grid_sup(M, E, r, n, n_E)
        b_grid, x_bg = embedding_grid_sup(M, E, r, n, n_E)
        D = max(D, d_grid)
        B = max(B, b_grid, b_problem.evaluate_exact(x_dg))
        b_points.append(x_bg)

    for x in b_points:
        for restricted in _restrictions(x):
            D = max(D, d_problem.evaluate_exact(restricted))
            B = max(B, b_problem.evaluate_exact(restricted))

    first_half_ok = D <= 2.0 * B + CHECK_TOL * max(1.0, B)
    second_half_ok = B <= 2.0 ** (1.0 / r) * D + CHECK_TOL * max(1.0, D)
    if not (first_half_ok and second_half_ok):
        logger.warning("Domination check failed for '%s' (r=%g, n=%d): D=%.10g, B=%.10g", M.name, r, n, D, B)
    return DominationCheck(r=r, n=n, D=D, B=B, first_half_ok=first_half_ok, second_half_ok=second_half_ok)


def domination_factorability_bound(M: MatrixOperator, E: SpaceSpec, p: float, n: int, *, n_E: int,
                                   n_enum: int = 20, restarts: int = 8, seed: int = 0) -> FactorizationBound:
    """C_p(n) <= (D_{1/p}(n)·K(n))^{1/p}, K(n) = max_{j<=n} ‖C_j‖_E (infinite for quasi-normed E)."""
    if not p > 1:
        raise PreconditionError(f"p must be > 1, got {p}.")
    D = power_domination_constant(M, E, 1.0 / p, n, restarts, n_E=n_E, n_enum=n_enum, seed=seed,
                                  confirm=False).value
    K = operator_norm_l1(M, E, n, n_E, use_tail=False).lower
    bound = (D * K) ** (1.0 / p) if is_banach(E) else math.inf
    return FactorizationBound(p=p, n=n, domination_constant=D, operator_norm_l1=K, bound=bound)


def extension_consistency(M: MatrixOperator, E: SpaceSpec, f: FiniteVector, n_E: int) -> bool:
    """∫ f dm_M (sum of weighted atoms) agrees with Mf (row sums) to 1e-12."""
    m = AtomicVectorMeasure(M, E, n_E)
    by_atoms = integrate(m, f, f.indices).as_dict()
    by_rows = apply(M, f, n_E).as_dict()
    for i in set(by_atoms) | set(by_rows):
        a, b = by_atoms.get(i, 0.0), by_rows.get(i, 0.0)
        if abs(a - b) > EXTENSION_TOL * max(1.0, abs(a), abs(b)):
            logger.warning("Extension mismatch for '%s' at row %d: %.17g vs %.17g", M.name, i, a, b)
            return False
    return True


def _restrictions(x: np.ndarray) -> List[np.ndarray]:
    """x·χ_N for the nonempty N ⊆ supp x (singletons and x itself beyond RESTRICTION_CAP)."""
    support = [int(k) for k in np.flatnonzero(x > 0)]
    if len(support) > RESTRICTION_CAP:
        subsets = [(k,) for k in support] + [tuple(support)]
    else:
        subsets = [s for size in range(1, len(support) + 1) for s in combinations(support, size)]
    out = []
    for subset in subsets:
        restricted = np.zeros_like(x)
        restricted[list(subset)] = x[list(subset)]
        out.append(restricted)
    return out
