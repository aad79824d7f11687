import math

import numpy as np
import pytest

from optdom.norm_engine.entities import FiniteVector, Intersection, Lq, Power, Sum
from optdom.norm_engine.entities.verify_summary import InvariantResult
from optdom.norm_engine.errors import InvalidArgumentError, SupportTooLargeError, UnsupportedDualError
from optdom.norm_engine.matop import dense, identity
from optdom.norm_engine.oracle import (
    exhaustive_subset_sup,
    l1m_norm_dual_sample,
    quasinorm_axiom_scan,
    random_vector,
    simplex_grid,
    sum_norm_bruteforce,
    young_check,
    young_gap,
)
from optdom.norm_engine.oracle.suite import SCALE_PARAMS, check_conditions
from optdom.norm_engine.seqspace import quasinorm_constant, sum_norm_decomposition
from optdom.norm_engine.vmeasure import AtomicVectorMeasure, l1m_norm


class TestYoung:
    """a^r b^r <= (r/s) a^s + (r/t) b^t with 1/r = 1/s + 1/t."""

    def test_worked_example(self):
        # r = 1: 2 <= 0.5·4 + 0.5·1
        assert young_check(2.0, 1.0, 2.0, 2.0)

    def test_equality_case(self):
        assert young_gap(2.0, 4.0, 2.0, 1.0) == pytest.approx(0.0, abs=1e-12)
        assert young_check(2.0, 4.0, 2.0, 1.0)

    def test_random_triples(self):
        rng = np.random.default_rng(1)
        for _ in range(1000):
            a, b = rng.exponential(size=2)
            s, t = rng.uniform(0.2, 5.0, size=2)
            assert young_check(a, b, s, t)
            assert young_gap(a, b, s, t) >= -1e-12

    def test_zero_entries(self):
        assert young_check(0.0, 3.0, 1.5, 2.5)

    @pytest.mark.parametrize("args", [(-1.0, 1.0, 1.0, 1.0), (1.0, 1.0, 0.0, 1.0)])
    def test_invalid_arguments(self, args):
        with pytest.raises(InvalidArgumentError):
            young_check(*args)


class TestQuasinormScan:
    """Observed quasi-triangle constants stay below the analytic ones."""

    @pytest.mark.parametrize("space", [
        Lq(0.5),
        Lq(1.0),
        Lq(3.0),
        Power(Lq(1.0), 0.5),
        Intersection(Lq(0.5), Lq(2.0)),
    ])
    def test_observed_below_analytic(self, space):
        observed = quasinorm_axiom_scan(space, 300, seed=2)
        assert observed <= quasinorm_constant(space) * (1 + 1e-12)

    def test_disjoint_units_saturate_half_power(self):
        assert quasinorm_axiom_scan(Lq(0.5), 0) == pytest.approx(2.0)

    def test_random_vectors_are_seeded(self):
        first = random_vector(np.random.default_rng(4), 6)
        second = random_vector(np.random.default_rng(4), 6)
        assert first == second
        assert 1 <= len(first) <= 6
        assert max(first.indices) <= 12


class TestSumNormBruteforce:
    """Grid reference for ‖·‖_{X+Y}."""

    def test_l1_plus_linf(self):
        f = FiniteVector.from_dense([2.0, 1.0])
        assert sum_norm_bruteforce(Lq(1.0), Lq(math.inf), f) == pytest.approx(2.0)

    def test_solver_within_grid_modulus(self):
        rng = np.random.default_rng(6)
        space = Sum(Lq(1.5), Lq(3.0))
        for _ in range(10):
            f = FiniteVector.from_dense(rng.normal(size=3))
            solver = sum_norm_decomposition(space, f).value
            grid = sum_norm_bruteforce(space.left, space.right, f, grid_steps=32)
            assert grid >= solver - 1e-6
            # one grid cell per coordinate, each costing at most |f_i|/32 on both sides
            assert grid <= solver + 2.0 * float(np.abs(f.values).sum()) / 32

    def test_support_cap(self):
        with pytest.raises(SupportTooLargeError):
            sum_norm_bruteforce(Lq(1.0), Lq(2.0), FiniteVector.from_dense([1.0] * 5))


class TestMeasureOracles:
    """Subset and dual-sampling references for L¹(m)."""

    def test_exhaustive_subset_sup(self):
        m = AtomicVectorMeasure(dense([[1.0, 1.0], [1.0, -1.0]]), Lq(1.0), n_E=4)
        assert exhaustive_subset_sup(m, FiniteVector.from_dense([1.0, 1.0])) == pytest.approx(2.0)

    def test_dual_sampling_never_exceeds_exact(self):
        rng = np.random.default_rng(12)
        M = dense(rng.normal(size=(4, 5)).tolist())
        m = AtomicVectorMeasure(M, Lq(2.0), n_E=4)
        f = FiniteVector.from_dense(rng.normal(size=5))
        exact = l1m_norm(m, f).value
        sampled = l1m_norm_dual_sample(m, f, 2000, seed=3)
        assert sampled <= exact * (1 + 1e-9)
        assert sampled >= 0.9 * exact

    def test_dual_sampling_on_nonnegative_atoms_is_exact(self):
        m = AtomicVectorMeasure(identity(), Lq(1.0), n_E=4)
        f = FiniteVector.from_dense([1.0, 2.0])
        assert l1m_norm_dual_sample(m, f, 10) == pytest.approx(3.0)

    def test_dual_sampling_needs_lq_codomain(self):
        m = AtomicVectorMeasure(identity(), Lq(0.5), n_E=4)
        with pytest.raises(UnsupportedDualError):
            l1m_norm_dual_sample(m, FiniteVector.unit(1), 10)

    def test_simplex_grid_sums_to_one(self):
        grid = simplex_grid(3, steps=8)
        assert grid.shape == (45, 3)
        assert np.allclose(grid.sum(axis=1), 1.0)


class TestConditionsInvariant:
    def test_quick_scale_passes_with_hoelder_cases(self):
        result = InvariantResult("conditions")
        check_conditions(result, np.random.default_rng(0), SCALE_PARAMS["quick"])
        assert result.first_failure is None
        # three closed-form series plus two matrices at each quick size
        assert result.checked == 3 + 2 * len(SCALE_PARAMS["quick"]["sizes"])
