"""
L¹(m) and L^p(m) norms of finitely supported functions.

‖f‖_{L¹(m)} = sup_{x* ∈ B_{E*}} Σ_j |f_j|·|⟨C_j, x*⟩| is resolved by a sign
choice per atom: the supremum equals max_ε ‖Σ_j ε_j f_j C_j‖_E.

Branches
- declared-nonnegative atoms: the all-ones pattern is optimal, N = ‖M|f|‖_E
- |supp f| <= n_enum: exhaustive enumeration of the 2^{s-1} patterns (ε_1 = +1)
- otherwise: greedy subset supremum and seeded bit-flip local search for the
  lower bound, triangle inequality for the upper bound
- a Sum anywhere in the codomain turns the first two branches into solver
  brackets with SUM_SOLVER provenance
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from optdom.norm_engine.entities.enums import Method
from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.norm_estimate import NormEstimate, combine_max
from optdom.norm_engine.entities.space_spec import SpaceSpec, Sum, contains_sum, is_banach, is_lattice_lq
from optdom.norm_engine.errors import InvalidArgumentError, SupportTooLargeError
from optdom.norm_engine.matop.operations import apply, combine_disjoint
from optdom.norm_engine.seeding import task_rng
from optdom.norm_engine.seqspace.norms import batch_norm, norm
from optdom.norm_engine.seqspace.sum_solver import sum_norm_bracket
from optdom.norm_engine.vmeasure.measure import AtomicVectorMeasure, check_magnitudes, integrate

logger = logging.getLogger(__name__)

ENUM_CHUNK = 1 << 22
LOCAL_RESTARTS = 32
SANDWICH_CAP = 20


@dataclass(frozen=True)
class OptimalDomainNorms:
    """Norms of f in ℓ¹(m), ℓ^{1/p}(m) and their intersection."""
    l1: NormEstimate
    l_inv_p: NormEstimate
    intersection: NormEstimate

    def to_dict(self) -> Dict[str, Any]:
        return {
            "l1": self.l1.to_dict(),
            "l_inv_p": self.l_inv_p.to_dict(),
            "intersection": self.intersection.to_dict(),
        }


def l1m_norm(m: AtomicVectorMeasure, f: FiniteVector) -> NormEstimate:
    if f.is_zero():
        return NormEstimate.exact(0.0, Method.EXACT, "zero function")
    check_magnitudes(f)
    E = m.codomain

    if m.source.nonnegative:
        estimate = _codomain_estimate(m, apply(m.source, f.abs(), m.n_E), Method.NONNEGATIVE_REDUCTION,
                                      "nonnegative atoms: all-ones sign pattern is optimal")
    elif len(f) <= m.n_enum:
        value, pattern = sign_enumeration(m, f)
        certificate = f"max over {1 << (len(f) - 1)} sign patterns"
        if contains_sum(E):
            best = _codomain_estimate(m, _pattern_combination(m, f, pattern), Method.SUM_SOLVER, certificate)
            estimate = NormEstimate.bracket(best.lower, max(best.upper, value), Method.SUM_SOLVER,
                                            best.certificate)
        else:
            estimate = NormEstimate.exact(value, Method.EXACT_SIGN_ENUMERATION, certificate)
    else:
        estimate = _local_estimate(m, f)
    return _with_column_tail(m, f, estimate)


def lpm_norm(m: AtomicVectorMeasure, f: FiniteVector, p: float) -> NormEstimate:
    """‖f‖_{L^p(m)} = ‖|f|^p‖_{L¹(m)}^{1/p}."""
    if not (p > 0 and math.isfinite(p)):
        raise InvalidArgumentError(f"lpm_norm needs p in (0, inf), got {p}.")
    if f.is_zero():
        return NormEstimate.exact(0.0, Method.EXACT, "zero function")
    estimate = l1m_norm(m, f.power(p))
    if p == 1.0:
        return estimate
    return estimate.transform(lambda v: v ** (1.0 / p), f"{estimate.certificate}; raised to 1/{p:g}")


def optimal_domain_norms(m: AtomicVectorMeasure, f: FiniteVector, p: float) -> OptimalDomainNorms:
    """Norms in ℓ¹(m), ℓ^{1/p}(m) and ℓ^{1/p}(m) ∩ ℓ¹(m) for p > 1."""
    if not p > 1:
        raise InvalidArgumentError(f"optimal_domain_norms needs p > 1, got {p}.")
    l1 = l1m_norm(m, f)
    l_inv_p = lpm_norm(m, f, 1.0 / p)
    return OptimalDomainNorms(l1=l1, l_inv_p=l_inv_p,
                              intersection=combine_max(l1, l_inv_p, "max of the two brackets"))


def semivariation(m: AtomicVectorMeasure, A: Iterable[int]) -> NormEstimate:
    """‖m‖(A) = ‖χ_A‖_{L¹(m)}."""
    return l1m_norm(m, FiniteVector.indicator(A))


def sign_enumeration(m: AtomicVectorMeasure, f: FiniteVector) -> Tuple[float, Tuple[float, ...]]:
    """
    Exact max over ε ∈ {±1}^{supp f}, ε_1 = +1, of ‖Σ ε_j f_j C_j‖_E.

    Vectorized in chunks; the winning pattern (lowest pattern index among
    ties) is re-evaluated with compensated summation.
    """
    s = len(f)
    if s > 24:
        raise SupportTooLargeError(f"Sign enumeration over {s} atoms exceeds the cap of 24.")
    rows, W = m.atoms_matrix(f)
    if not rows:
        return 0.0, (1.0,) * s

    free = s - 1
    total = 1 << free
    chunk = max(1, ENUM_CHUNK // max(len(rows), 1))
    shifts = np.arange(free, dtype=np.int64)
    best_value, best_index = -1.0, 0
    for start in range(0, total, chunk):
        ks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        signs = np.ones((len(ks), s))
        if free:
            signs[:, 1:] = 1.0 - 2.0 * ((ks[:, None] >> shifts[None, :]) & 1)
        values = batch_norm(m.codomain, rows, signs @ W)
        k = int(np.argmax(values))
        if values[k] > best_value:
            best_value, best_index = float(values[k]), start + k

    pattern = (1.0,) + tuple(-1.0 if (best_index >> b) & 1 else 1.0 for b in range(free))
    return pattern_value(m, f, pattern), pattern


def pattern_value(m: AtomicVectorMeasure, f: FiniteVector, pattern: Sequence[float]) -> float:
    """‖Σ ε_j f_j C_j‖_E with compensated summation."""
    return norm(m.codomain, _pattern_combination(m, f, pattern))


def _pattern_combination(m: AtomicVectorMeasure, f: FiniteVector, pattern: Sequence[float]) -> FiniteVector:
    return FiniteVector.linear_combination(
        (eps * val, m.atom(idx)) for eps, (idx, val) in zip(pattern, f)
    )


def subset_sup(m: AtomicVectorMeasure, f: FiniteVector) -> Tuple[float, Tuple[int, ...]]:
    """
    sup over A ⊆ supp f of ‖∫_A f dm‖_E by vectorized enumeration.

    Ties are broken by the lexicographically smallest maximizing subset.
    """
    s = len(f)
    if s > SANDWICH_CAP:
        raise SupportTooLargeError(f"Subset enumeration over {s} atoms exceeds the cap of {SANDWICH_CAP}.")
    if s == 0:
        return 0.0, ()
    rows, W = m.atoms_matrix(f)
    if not rows:
        return 0.0, ()

    total = 1 << s
    chunk = max(1, ENUM_CHUNK // max(len(rows), 1))
    shifts = np.arange(s, dtype=np.int64)
    best_value = -1.0
    best_masks: List[int] = []
    for start in range(0, total, chunk):
        ks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        picks = ((ks[:, None] >> shifts[None, :]) & 1).astype(float)
        values = batch_norm(m.codomain, rows, picks @ W)
        top = float(values.max())
        if top > best_value:
            best_value, best_masks = top, []
        if top == best_value:
            best_masks.extend(int(start + k) for k in np.flatnonzero(values == top))

    subsets = [tuple(f.indices[b] for b in range(s) if (mask >> b) & 1) for mask in best_masks]
    chosen = min(subsets)
    return norm(m.codomain, integrate(m, f, chosen)), chosen


def sandwich_estimate(m: AtomicVectorMeasure, f: FiniteVector) -> NormEstimate:
    """[S, 2S] with S the exact subset supremum (½‖f‖_{L¹(m)} <= S <= ‖f‖_{L¹(m)})."""
    if f.is_zero():
        return NormEstimate.exact(0.0, Method.EXACT, "zero function")
    check_magnitudes(f)
    value, chosen = subset_sup(m, f)
    return NormEstimate.bracket(value, 2.0 * value, Method.SUBSET_SUP_SANDWICH,
                                f"subset sup attained at A={list(chosen)}")


# --- estimation branch ---

def _local_estimate(m: AtomicVectorMeasure, f: FiniteVector) -> NormEstimate:
    E = m.codomain
    rows, W = m.atoms_matrix(f)
    subset = _greedy_subset(E, rows, W)
    chosen = [f.indices[k] for k in subset]
    subset_value = norm(E, integrate(m, f, chosen)) if chosen else 0.0

    rng = task_rng(m.seed, "l1m-local-search", len(f))
    pattern = _local_search(E, rows, W, rng)
    search_value = pattern_value(m, f, pattern)

    lower = max(subset_value, search_value)
    upper = max(_triangle_bound(m, f), lower)
    logger.debug("L1(m) estimate on %d atoms: greedy subset %.6g, local search %.6g, triangle %.6g",
                 len(f), subset_value, search_value, upper)
    return NormEstimate.bracket(
        lower, upper, Method.LOCAL_SEARCH,
        f"lower: max(greedy subset sup, {LOCAL_RESTARTS}-restart bit-flip search); upper: triangle inequality",
    )


def _greedy_subset(E: SpaceSpec, rows: List[int], W: np.ndarray) -> List[int]:
    """Add the atom that most increases ‖Σ_A f_j C_j‖ until nothing improves."""
    s = W.shape[0]
    chosen: List[int] = []
    current = np.zeros(W.shape[1])
    value = 0.0
    while len(chosen) < s:
        remaining = [k for k in range(s) if k not in chosen]
        values = batch_norm(E, rows, current[None, :] + W[remaining])
        k = int(np.argmax(values))
        if not values[k] > value:
            break
        chosen.append(remaining[k])
        current = current + W[remaining[k]]
        value = float(values[k])
    return sorted(chosen)


def _local_search(E: SpaceSpec, rows: List[int], W: np.ndarray, rng: np.random.Generator) -> Tuple[float, ...]:
    """Best single-bit-flip ascent from seeded random sign patterns."""
    s = W.shape[0]
    best_value, best_pattern = -1.0, np.ones(s)
    for _ in range(LOCAL_RESTARTS):
        eps = rng.choice(np.array([-1.0, 1.0]), size=s)
        eps[0] = 1.0
        v = eps @ W
        value = float(batch_norm(E, rows, v[None, :])[0])
        while True:
            flips = v[None, :] - 2.0 * eps[:, None] * W
            values = batch_norm(E, rows, flips)
            k = int(np.argmax(values))
            if not values[k] > value * (1.0 + 1e-12):
                break
            eps[k] = -eps[k]
            v = flips[k]
            value = float(values[k])
        if value > best_value:
            best_value, best_pattern = value, eps.copy()
    if best_pattern[0] < 0:
        best_pattern = -best_pattern
    return tuple(float(e) for e in best_pattern)


def _triangle_bound(m: AtomicVectorMeasure, f: FiniteVector) -> float:
    terms = [abs(val) * norm(m.codomain, m.atom(idx)) for idx, val in f]
    return _aggregate(m.codomain, terms)


def _aggregate(E: SpaceSpec, terms: List[float]) -> float:
    """Bound of ‖Σ v_k‖_E from the norms ‖v_k‖_E."""
    if is_banach(E):
        return math.fsum(terms)
    if is_lattice_lq(E):
        # ‖·‖_q^q is subadditive for q < 1
        return math.fsum(t ** E.q for t in terms) ** (1.0 / E.q)
    return math.inf


def _codomain_estimate(m: AtomicVectorMeasure, y: FiniteVector, method: Method, certificate: str) -> NormEstimate:
    """‖y‖_E, exact for closed-form codomains and a solver bracket once a Sum is involved."""
    E = m.codomain
    if isinstance(E, Sum):
        solved = sum_norm_bracket(E, y, seed=m.seed)
        return NormEstimate.bracket(solved.lower, solved.upper, Method.SUM_SOLVER,
                                    f"{certificate}; {solved.certificate}")
    value = norm(E, y)
    if contains_sum(E):
        return NormEstimate.bracket(0.0, value, Method.SUM_SOLVER,
                                    f"{certificate}; achieved decomposition of a nested sum")
    return NormEstimate.exact(value, method, certificate)


def _with_column_tail(m: AtomicVectorMeasure, f: FiniteVector, estimate: NormEstimate) -> NormEstimate:
    """Widen the upper bound by the declared E-norm of the rows beyond n_E."""
    tail = m.source.column_tail
    if not (m.use_tail and tail is not None and tail.applies_to(m.codomain)):
        return estimate
    if all(m.source.column_is_within(j, m.n_E) for j in f.indices):
        return estimate
    b = tail.bound(m.n_E)
    if b == 0.0:
        return estimate
    tail_norm = _aggregate(m.codomain, [abs(val) * b for _, val in f])
    upper = combine_disjoint(m.codomain, estimate.upper, tail_norm) if math.isfinite(tail_norm) else math.inf
    return NormEstimate.bracket(estimate.lower, upper, estimate.method,
                                f"{estimate.certificate}; upper includes declared column tail beyond row {m.n_E}")
