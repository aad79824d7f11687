"""
Invariant suite behind `optdom verify`.

Every check is seeded from (seed, invariant name) so that a run is
reproducible, and counts cases rather than stopping at the first failure.
"""

import logging
import math
from itertools import combinations
from typing import Callable, Dict, List

import numpy as np
from tqdm import tqdm

from optdom.norm_engine.entities.enums import SeriesVerdict
from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.space_spec import Intersection, Lq, Power, Sum, WeightedLq
from optdom.norm_engine.entities.verify_summary import SCALES, InvariantResult, VerifySummary
from optdom.norm_engine.entities.weights import WeightSequence
from optdom.norm_engine.errors import InvalidArgumentError
from optdom.norm_engine.factor.conditions import condition_I, rows_condition
from optdom.norm_engine.factor.constants import best_constant
from optdom.norm_engine.factor.embedding import domination_embedding_check, extension_consistency
from optdom.norm_engine.matop import generators
from optdom.norm_engine.matop.operations import operator_norm_l1
from optdom.norm_engine.oracle.brute_force import exhaustive_subset_sup, l1m_norm_dual_sample, sum_norm_bruteforce
from optdom.norm_engine.oracle.inequalities import quasinorm_axiom_scan, random_vector, young_check, young_gap
from optdom.norm_engine.analysis.metrics import is_nondecreasing
from optdom.norm_engine.seeding import task_rng
from optdom.norm_engine.seqspace.norms import norm, quasinorm_constant
from optdom.norm_engine.seqspace.sum_solver import sum_norm_decomposition
from optdom.norm_engine.vmeasure.l1m import l1m_norm
from optdom.norm_engine.vmeasure.measure import AtomicVectorMeasure, integrate

logger = logging.getLogger(__name__)

REL_TOL = 1e-9
EXACT_TOL = 1e-12

SCALE_PARAMS: Dict[str, Dict[str, object]] = {
    "quick": {
        "young": 10_000,
        "reduction": 20,
        "sandwich": 20,
        "contraction": 10,
        "contraction_n": 6,
        "sizes": (2, 4),
        "domination": 8,
        "domination_n": 4,
        "sum_instances": 10,
        "sum_support": 3,
        "sum_splits": 100,
        "identities": 100,
        "scan_samples": 500,
        "extension": 100,
        "dual": 10,
        "dual_samples": 2_000,
        "schedule": (1, 2, 4),
    },
    "full": {
        "young": 100_000,
        "reduction": 200,
        "sandwich": 200,
        "contraction": 100,
        "contraction_n": 10,
        "sizes": (2, 4, 8, 16),
        "domination": 100,
        "domination_n": 8,
        "sum_instances": 50,
        "sum_support": 4,
        "sum_splits": 1_000,
        "identities": 1_000,
        "scan_samples": 10_000,
        "extension": 1_000,
        "dual": 50,
        "dual_samples": 20_000,
        "schedule": (1, 2, 4, 8),
    },
}

LATTICE_CODOMAINS = (Lq(1.0), Lq(2.0), Lq(math.inf))


def run_verify_suite(seed: int = 0, scale: str = "quick", verbose: bool = False) -> VerifySummary:
    """Run every invariant at the given scale; the summary lists per-invariant counts."""
    if scale not in SCALES:
        raise InvalidArgumentError(f"scale must be one of {SCALES}, got '{scale}'.")
    params = SCALE_PARAMS[scale]
    summary = VerifySummary(seed=seed, scale=scale)

    iterator = tqdm(INVARIANTS.items()) if verbose else INVARIANTS.items()
    for name, check in iterator:
        result = InvariantResult(name=name)
        check(result, task_rng(seed, f"verify-{name}"), params)
        summary.results.append(result)
        level = logging.INFO if result.passed else logging.WARNING
        logger.log(level, "%-24s %6d checked, %d failed", name, result.checked, result.failed)
    return summary


# --- invariants ---

def check_young(result: InvariantResult, rng: np.random.Generator, params) -> None:
    for _ in range(params["young"]):
        a, b = rng.uniform(0.0, 10.0, size=2)
        s, t = rng.uniform(0.1, 10.0, size=2)
        result.record(young_check(a, b, s, t), f"young_check({a}, {b}, {s}, {t}) failed")
    # equality case a^s = b^t
    for _ in range(params["young"] // 100):
        a = rng.uniform(0.0, 3.0)
        s, t = rng.uniform(0.1, 3.0, size=2)
        b = a ** (s / t)
        gap = young_gap(a, b, s, t)
        result.record(abs(gap) <= 1e-9, f"equality case a={a}, s={s}, t={t} has gap {gap}")


def check_nonnegative_reduction(result: InvariantResult, rng: np.random.Generator, params) -> None:
    for _ in range(params["reduction"]):
        n = int(rng.integers(1, 13))
        block = rng.uniform(0.05, 1.0, size=(n, n))
        f = FiniteVector.from_dense(rng.uniform(0.1, 2.0, size=n))
        for E in LATTICE_CODOMAINS:
            reduced = l1m_norm(AtomicVectorMeasure(generators.dense(block), E, n), f).value
            enumerated = l1m_norm(AtomicVectorMeasure(generators.dense(block, nonnegative=False), E, n), f).value
            result.record(abs(reduced - enumerated) <= EXACT_TOL * max(1.0, enumerated),
                          f"n={n}, {E.describe()}: reduction {reduced} vs enumeration {enumerated}")


def check_sandwich(result: InvariantResult, rng: np.random.Generator, params) -> None:
    for _ in range(params["sandwich"]):
        n = int(rng.integers(1, 13))
        E = LATTICE_CODOMAINS[int(rng.integers(len(LATTICE_CODOMAINS)))]
        m = AtomicVectorMeasure(generators.dense(rng.normal(size=(n, n))), E, n)
        f = FiniteVector.from_dense(rng.normal(size=n))
        S = exhaustive_subset_sup(m, f)
        N = l1m_norm(m, f).value
        ok = S <= N * (1 + REL_TOL) + EXACT_TOL and N <= 2.0 * S * (1 + REL_TOL) + EXACT_TOL
        result.record(ok, f"n={n}, {E.describe()}: S={S}, N={N}")


def check_contraction(result: InvariantResult, rng: np.random.Generator, params) -> None:
    for _ in range(params["contraction"]):
        n = int(rng.integers(1, params["contraction_n"] + 1))
        E = LATTICE_CODOMAINS[int(rng.integers(len(LATTICE_CODOMAINS)))]
        m = AtomicVectorMeasure(generators.dense(rng.normal(size=(n, n))), E, n)
        f = FiniteVector.from_dense(rng.normal(size=n))
        N = l1m_norm(m, f).value
        worst = max(norm(E, integrate(m, f, A))
                    for size in range(len(f) + 1) for A in combinations(f.indices, size))
        result.record(worst <= N + 1e-9, f"n={n}, {E.describe()}: ‖∫_A f dm‖ = {worst} > {N}")


def check_closed_form_constants(result: InvariantResult, rng: np.random.Generator, params) -> None:
    seed = int(rng.integers(2 ** 32))
    for q in (1.0, 2.0, math.inf):
        for p in (2.0, 3.0):
            for n in params["sizes"]:
                point = best_constant(generators.identity(), Lq(q), Lq(p), n, 2, n_E=n, seed=seed)
                expected = n ** max(0.0, 1.0 / q - 1.0 / p)
                ok = abs(point.value - expected) <= 0.02 * expected and point.confirmed is not False
                result.record(ok, f"identity into Lq({q}), domain Lq({p}), n={n}: {point.value} vs {expected}")

    for p in (2.0, 3.0):
        pc = p / (p - 1.0)
        n = max(params["sizes"])
        d = tuple(float(v) for v in rng.uniform(0.1, 2.0, size=n))
        M = generators.diagonal(WeightSequence("explicit", values=d))
        for k in params["sizes"]:
            point = best_constant(M, Lq(1.0), Lq(p), k, 2, n_E=k, seed=seed)
            expected = math.fsum(v ** pc for v in d[:k]) ** (1.0 / pc)
            ok = abs(point.value - expected) <= 0.01 * expected and point.confirmed is not False
            result.record(ok, f"diagonal into Lq(1), p={p}, n={k}: {point.value} vs {expected}")


def check_degenerate_domain(result: InvariantResult, rng: np.random.Generator, params) -> None:
    """With domain ℓ¹ the constant is max_j ‖C_j‖_E."""
    n_E = 64
    for M in _builtin_matrices():
        for E in (Lq(1.0), Lq(2.0)):
            for n in params["sizes"]:
                value = best_constant(M, E, Lq(1.0), n, 2, n_E=n_E, confirm=False).value
                expected = operator_norm_l1(M, E, n, n_E, use_tail=False).lower
                result.record(abs(value - expected) <= 1e-9 * max(1.0, expected),
                              f"'{M.name}' into {E.describe()}, n={n}: {value} vs {expected}")


def check_monotone_constants(result: InvariantResult, rng: np.random.Generator, params) -> None:
    n_E = 64
    for M in _builtin_matrices():
        for E in (Lq(1.0), Lq(2.0)):
            values, warm = [], None
            for n in params["schedule"]:
                point = best_constant(M, E, Lq(2.0), n, 2, n_E=n_E, warm_start=warm, confirm=False)
                values.append(point.value)
                warm = point.trace.maximizer
            result.record(is_nondecreasing(values), f"'{M.name}' into {E.describe()}: {values}")


def check_domination(result: InvariantResult, rng: np.random.Generator, params) -> None:
    identity = domination_embedding_check(generators.identity(), Lq(1.0), 0.5, 2, n_E=2, restarts=2)
    result.record(abs(identity.D - 2.0) <= 0.02 and identity.first_half_ok and identity.second_half_ok,
                  f"identity into Lq(1), r=1/2, n=2: D={identity.D}, B={identity.B}")
    for k in range(params["domination"]):
        n = int(rng.integers(1, params["domination_n"] + 1))
        r = (0.5, 1.0 / 3.0)[k % 2]
        E = (Lq(1.0), Lq(2.0))[int(rng.integers(2))]
        M = generators.dense(rng.uniform(0.05, 1.0, size=(n, n)))
        check = domination_embedding_check(M, E, r, n, n_E=n, restarts=2, seed=int(rng.integers(2 ** 32)))
        result.record(check.first_half_ok and check.second_half_ok,
                      f"n={n}, r={r:.4g}, {E.describe()}: D={check.D}, B={check.B}")


def check_sum_norm(result: InvariantResult, rng: np.random.Generator, params) -> None:
    spaces = (
        Sum(Lq(1.0), Lq(math.inf)),
        Sum(Lq(2.0), Lq(1.0)),
        Sum(Lq(1.0), WeightedLq(1.0, WeightSequence("geometric", constant=1.0, ratio=0.5))),
        Sum(Lq(math.inf), Lq(2.0)),
    )
    canonical = sum_norm_decomposition(spaces[0], FiniteVector.from_dense([2.0, 1.0])).value
    result.record(abs(canonical - 2.0) <= 1e-8 * 2.0, f"Sum(Lq(1), Lq(inf)) at (2, 1): {canonical}")

    for k in range(params["sum_instances"]):
        space = spaces[k % len(spaces)]
        size = int(rng.integers(1, params["sum_support"] + 1))
        indices = rng.choice(np.arange(1, 9), size=size, replace=False)
        f = FiniteVector.from_pairs(zip(indices.tolist(), rng.normal(size=size).tolist()))
        solver = sum_norm_decomposition(space, f, seed=k).value
        brute = sum_norm_bruteforce(space.left, space.right, f)
        step = f.abs().scale(1.0 / 64)
        modulus = norm(space.left, step) + norm(space.right, step)
        ok = solver <= brute + 1e-8 * max(1.0, brute) and brute <= solver + modulus
        result.record(ok, f"{space.describe()}, f={f.as_dict()}: solver {solver}, grid {brute}")

        extra = int(max(f.indices)) + 1
        worst_gap = math.inf
        for _ in range(params["sum_splits"]):
            g1 = FiniteVector.from_pairs(zip(list(f.indices) + [extra], rng.normal(size=len(f) + 1).tolist()))
            worst_gap = min(worst_gap, norm(space.left, g1) + norm(space.right, f - g1) - solver)
        result.record(worst_gap >= -1e-8 * max(1.0, solver),
                      f"{space.describe()}: a random split beats the solver by {-worst_gap}")


def check_space_identities(result: InvariantResult, rng: np.random.Generator, params) -> None:
    for k in range(params["identities"]):
        f = random_vector(rng, 6)
        p = (0.5, 2.0, 3.0)[k % 3]
        power, direct = norm(Power(Lq(1.0), p), f), norm(Lq(p), f)
        result.record(abs(power - direct) <= EXACT_TOL * max(1.0, direct),
                      f"Power(Lq(1), {p}) = {power} vs Lq({p}) = {direct}")
        both = norm(Intersection(Lq(1.0), Lq(2.0)), f)
        result.record(both == max(norm(Lq(1.0), f), norm(Lq(2.0), f)), f"intersection {both} is not the max")

    for space in (Lq(2.0), Lq(0.5), Intersection(Lq(1.0), Lq(2.0)), Power(Lq(1.0), 0.5), Lq(1.0 / 3.0)):
        observed = quasinorm_axiom_scan(space, params["scan_samples"], seed=int(rng.integers(2 ** 32)))
        K = quasinorm_constant(space)
        result.record(observed <= K + 1e-9, f"{space.describe()}: observed {observed} > K = {K}")


def check_extension(result: InvariantResult, rng: np.random.Generator, params) -> None:
    builtins = _builtin_matrices()
    for k in range(params["extension"]):
        if k % 2:
            M = builtins[k % len(builtins)]
            n_E = 32
        else:
            n = int(rng.integers(1, 9))
            M = generators.dense(rng.normal(size=(n, n)))
            n_E = n
        f = random_vector(rng, 6)
        result.record(extension_consistency(M, Lq(2.0), f, n_E), f"'{M.name}', f={f.as_dict()}")


def check_conditions(result: InvariantResult, rng: np.random.Generator, params) -> None:
    geometric = generators.diagonal(WeightSequence("geometric", constant=0.5, ratio=0.5))
    cond = condition_I(geometric, Lq(1.0), 2.0, 32, n_E=32)
    result.record(abs(cond.partial_sums[-1] - 1.0 / 3.0) <= 1e-6 and cond.verdict == SeriesVerdict.CONVERGES,
                  f"diagonal 2^-j: {cond.partial_sums[-1]} ({cond.verdict.value})")

    triangular = generators.expr("2**(-i) if j <= i else 0", nonnegative=True, row_extent="i")
    rows = rows_condition(triangular, 1.0, 64)
    result.record(abs(rows.partial_sums[-1] - 2.0) <= 1e-6 and rows.verdict == SeriesVerdict.CONVERGES,
                  f"rows 2^-i: {rows.partial_sums[-1]} ({rows.verdict.value})")

    cesaro_rows = rows_condition(generators.cesaro(), 1.0, 64)
    result.record(cesaro_rows.verdict == SeriesVerdict.DIVERGES, f"Cesàro rows: {cesaro_rows.verdict.value}")

    for M, E, p in ((geometric, Lq(1.0), 2.0), (generators.hilbert(), Lq(2.0), 3.0)):
        for n in params["sizes"]:
            n_E = 4 * n
            bound = condition_I(M, E, p, n, n_E=n_E).hoelder_bound
            point = best_constant(M, E, Lq(p), n, restarts=2, n_E=n_E, seed=int(rng.integers(2 ** 32)), confirm=False)
            result.record(point.value <= bound * (1 + REL_TOL),
                          f"'{M.name}' into {E.describe()}, p={p:g}, n={n}: "
                          f"C={point.value} above Hölder bound {bound}")


def check_dual_sampling(result: InvariantResult, rng: np.random.Generator, params) -> None:
    for _ in range(params["dual"]):
        n = int(rng.integers(1, 13))
        E = LATTICE_CODOMAINS[int(rng.integers(len(LATTICE_CODOMAINS)))]
        m = AtomicVectorMeasure(generators.dense(rng.normal(size=(n, n))), E, n)
        f = FiniteVector.from_dense(rng.normal(size=n))
        sampled = l1m_norm_dual_sample(m, f, params["dual_samples"], seed=int(rng.integers(2 ** 32)))
        N = l1m_norm(m, f).value
        result.record(sampled <= N * (1 + REL_TOL) + EXACT_TOL, f"n={n}, {E.describe()}: sampled {sampled} > {N}")


def _builtin_matrices() -> List:
    return [
        generators.identity(),
        generators.cesaro(),
        generators.hilbert(),
        generators.diagonal(WeightSequence("geometric", constant=0.5, ratio=0.5)),
    ]


INVARIANTS: Dict[str, Callable[[InvariantResult, np.random.Generator, Dict[str, object]], None]] = {
    "young": check_young,
    "nonnegative-reduction": check_nonnegative_reduction,
    "sandwich": check_sandwich,
    "contraction": check_contraction,
    "closed-form-constants": check_closed_form_constants,
    "degenerate-domain": check_degenerate_domain,
    "monotone-constants": check_monotone_constants,
    "domination": check_domination,
    "sum-norm": check_sum_norm,
    "space-identities": check_space_identities,
    "extension": check_extension,
    "conditions": check_conditions,
    "dual-sampling": check_dual_sampling,
}
