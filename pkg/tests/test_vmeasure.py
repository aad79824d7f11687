import math

import numpy as np
import pytest

from optdom.norm_engine.entities import FiniteVector, Intersection, Lq, Method, Sum, WeightSequence
from optdom.norm_engine.errors import InvalidArgumentError, SupportTooLargeError
from optdom.norm_engine.matop import cesaro, dense, diagonal, hilbert, identity
from optdom.norm_engine.oracle import exhaustive_subset_sup
from optdom.norm_engine.vmeasure import (
    AtomicVectorMeasure,
    integrate,
    l1m_norm,
    lpm_norm,
    measure,
    optimal_domain_norms,
    sandwich_estimate,
    semivariation,
    sign_enumeration,
    subset_sup,
)

TOL = 1e-12


def ones(n):
    return FiniteVector.from_dense([1.0] * n)


@pytest.fixture
def rotation_measure():
    """Atoms C_1 = (1, 1), C_2 = (1, -1)."""
    return AtomicVectorMeasure(dense([[1.0, 1.0], [1.0, -1.0]]), Lq(2.0), n_E=4)


class TestVectorMeasure:
    """m(A) = M·χ_A and integrals of simple functions."""

    def test_integrate_on_subset(self):
        m = AtomicVectorMeasure(identity(), Lq(1.0), n_E=8)
        f = FiniteVector.from_dense([1.0, 2.0, 3.0])
        assert integrate(m, f, [1, 3]).as_dict() == {1: 1.0, 3: 3.0}

    def test_measure_is_sum_of_columns(self):
        m = AtomicVectorMeasure(cesaro(), Lq(1.0), n_E=3)
        assert measure(m, [1, 2]).as_dict() == pytest.approx({1: 1.0, 2: 1.0, 3: 2 / 3})

    def test_semivariation(self):
        m = AtomicVectorMeasure(identity(), Lq(2.0), n_E=8)
        assert semivariation(m, [1, 2]).value == pytest.approx(math.sqrt(2.0))

    def test_rejects_denormal_entries(self):
        m = AtomicVectorMeasure(identity(), Lq(1.0), n_E=4)
        with pytest.raises(InvalidArgumentError):
            l1m_norm(m, FiniteVector((1,), (1e-310,)))

    def test_rejects_large_n_enum(self):
        with pytest.raises(InvalidArgumentError):
            AtomicVectorMeasure(identity(), Lq(1.0), n_E=4, n_enum=25)


class TestL1mNorm:
    """‖f‖_{L¹(m)} by reduction, enumeration or local search."""

    def test_diagonal_nonnegative_reduction(self):
        m = AtomicVectorMeasure(diagonal(WeightSequence("explicit", values=(1.0, 2.0))), Lq(1.0), n_E=8)
        estimate = l1m_norm(m, ones(2))
        assert estimate.value == pytest.approx(3.0)
        assert estimate.method == Method.NONNEGATIVE_REDUCTION

    def test_sign_enumeration_is_exact(self, rotation_measure):
        estimate = l1m_norm(rotation_measure, ones(2))
        assert estimate.method == Method.EXACT_SIGN_ENUMERATION
        assert estimate.value == pytest.approx(2.0)

    def test_sign_pattern_starts_positive(self):
        m = AtomicVectorMeasure(dense([[1.0, -1.0, 0.5], [0.0, 1.0, -2.0]]), Lq(1.0), n_E=4)
        value, pattern = sign_enumeration(m, ones(3))
        assert pattern[0] == 1.0
        assert value == pytest.approx(l1m_norm(m, ones(3)).value)

    def test_smaller_modulus_has_smaller_norm(self):
        rng = np.random.default_rng(17)
        m = AtomicVectorMeasure(dense(rng.normal(size=(5, 5))), Lq(2.0), n_E=5)
        for _ in range(20):
            values = rng.normal(size=5)
            f = FiniteVector.from_dense(values)
            g = FiniteVector.from_dense(values * rng.uniform(-1.0, 1.0, size=5))
            larger, smaller = l1m_norm(m, f), l1m_norm(m, g)
            assert larger.method == smaller.method == Method.EXACT_SIGN_ENUMERATION
            assert smaller.value <= larger.value * (1.0 + 1e-9)

    @pytest.mark.parametrize("source", [identity(), dense([[1.0, 1.0], [1.0, -1.0]])], ids=["reduction", "enumeration"])
    def test_sum_codomain_reports_solver_bracket(self, source):
        # ‖(2, 0)‖ in ℓ¹ + ℓ^∞ is 2, and so is every sign pattern of the rotation
        f = FiniteVector.from_dense([2.0, 1.0] if source.nonnegative else [1.0, 1.0])
        m = AtomicVectorMeasure(source, Sum(Lq(1.0), Lq(math.inf)), n_E=4)
        estimate = l1m_norm(m, f)
        assert estimate.method == Method.SUM_SOLVER
        assert estimate.lower <= 2.0 + 1e-8
        assert estimate.upper == pytest.approx(2.0, rel=1e-8)

    def test_nested_sum_codomain_is_an_open_bracket(self):
        m = AtomicVectorMeasure(identity(), Intersection(Sum(Lq(1.0), Lq(math.inf)), Lq(2.0)), n_E=4)
        estimate = l1m_norm(m, FiniteVector.from_dense([2.0, 1.0]))
        assert estimate.method == Method.SUM_SOLVER
        assert estimate.lower == 0.0
        assert estimate.upper == pytest.approx(math.sqrt(5.0), rel=1e-8)

    def test_local_search_brackets_exact_value(self):
        rng = np.random.default_rng(5)
        M = dense(rng.normal(size=(6, 8)).tolist())
        f = FiniteVector.from_dense(rng.normal(size=8))
        exact = l1m_norm(AtomicVectorMeasure(M, Lq(2.0), n_E=6), f).value
        estimate = l1m_norm(AtomicVectorMeasure(M, Lq(2.0), n_E=6, n_enum=0, seed=2), f)
        assert estimate.method == Method.LOCAL_SEARCH
        assert estimate.lower <= exact * (1 + TOL)
        assert exact <= estimate.upper * (1 + TOL)

    def test_declared_tail_widens_upper_bound(self):
        f = ones(2)
        with_tail = l1m_norm(AtomicVectorMeasure(hilbert(tail_q=2.0), Lq(2.0), n_E=16), f)
        without = l1m_norm(AtomicVectorMeasure(hilbert(tail_q=2.0), Lq(2.0), n_E=16, use_tail=False), f)
        assert without.is_exact
        assert with_tail.lower == without.value
        assert with_tail.upper > with_tail.lower

    def test_zero_function(self, rotation_measure):
        assert l1m_norm(rotation_measure, FiniteVector()).value == 0.0


class TestLpmNorm:
    """‖f‖_{L^p(m)} = ‖|f|^p‖_{L¹(m)}^{1/p}."""

    def test_half_power_on_identity(self):
        m = AtomicVectorMeasure(identity(), Lq(1.0), n_E=8)
        assert lpm_norm(m, ones(2), 0.5).value == pytest.approx(4.0)

    def test_p_one_is_l1m(self, rotation_measure):
        f = FiniteVector.from_dense([2.0, -1.0])
        assert lpm_norm(rotation_measure, f, 1.0).value == pytest.approx(l1m_norm(rotation_measure, f).value)

    @pytest.mark.parametrize("p", [0.0, -2.0, math.inf])
    def test_invalid_exponent(self, rotation_measure, p):
        with pytest.raises(InvalidArgumentError):
            lpm_norm(rotation_measure, ones(2), p)

    def test_optimal_domain_norms(self):
        m = AtomicVectorMeasure(identity(), Lq(1.0), n_E=8)
        norms = optimal_domain_norms(m, ones(2), 2.0)
        assert norms.l1.value == pytest.approx(2.0)
        assert norms.l_inv_p.value == pytest.approx(4.0)
        assert norms.intersection.value == pytest.approx(4.0)

    def test_optimal_domain_needs_p_above_one(self, rotation_measure):
        with pytest.raises(InvalidArgumentError):
            optimal_domain_norms(rotation_measure, ones(2), 1.0)


class TestSubsetSup:
    """sup_A ‖∫_A f dm‖ and the [S, 2S] sandwich."""

    def test_two_rotated_atoms(self, rotation_measure):
        value, chosen = subset_sup(rotation_measure, ones(2))
        assert value == pytest.approx(2.0)
        assert chosen == (1, 2)

    def test_ties_pick_smallest_subset(self):
        m = AtomicVectorMeasure(dense([[1.0, 1.0], [1.0, -1.0]]), Lq(1.0), n_E=4)
        value, chosen = subset_sup(m, ones(2))
        assert value == pytest.approx(2.0)
        assert chosen == (1,)

    def test_sandwich_contains_l1m(self, rotation_measure):
        f = FiniteVector.from_dense([1.0, 0.5])
        sandwich = sandwich_estimate(rotation_measure, f)
        exact = l1m_norm(rotation_measure, f).value
        assert sandwich.method == Method.SUBSET_SUP_SANDWICH
        assert sandwich.upper == 2.0 * sandwich.lower
        assert sandwich.lower <= exact <= sandwich.upper

    def test_matches_exhaustive_oracle(self):
        rng = np.random.default_rng(8)
        M = dense(rng.normal(size=(5, 6)).tolist())
        m = AtomicVectorMeasure(M, Lq(1.5), n_E=5)
        f = FiniteVector.from_dense(rng.normal(size=6))
        assert subset_sup(m, f)[0] == pytest.approx(exhaustive_subset_sup(m, f), rel=1e-12)

    def test_support_cap(self):
        m = AtomicVectorMeasure(identity(), Lq(1.0), n_E=32)
        with pytest.raises(SupportTooLargeError):
            sandwich_estimate(m, ones(21))
