import math

import numpy as np
import pytest

from optdom.norm_engine.entities import DecayModel, FiniteVector, Lq, SeriesVerdict, Verdict, WeightSequence
from optdom.norm_engine.errors import InvalidArgumentError, PreconditionError
from optdom.norm_engine.factor import (
    RatioProblem,
    best_constant,
    condition_I,
    domination_embedding_check,
    domination_factorability_bound,
    extension_consistency,
    factorability_verdict,
    maximize,
    power_domination_constant,
    rows_condition,
)
from optdom.norm_engine.factor.verdict import check_schedule
from optdom.norm_engine.matop import cesaro, dense, diagonal, expr, hilbert, identity

GEOMETRIC = WeightSequence("geometric", constant=0.5, ratio=0.5)


def halving_diagonal(column_decay=None):
    """d_j = 2^{-j}."""
    return diagonal(GEOMETRIC, column_decay=column_decay)


class TestAscent:
    """Multiplicative ascent on the positive cone."""

    def test_candidates_are_evaluated(self):
        problem = RatioProblem(n=3, ratio=lambda x: float(x[0] / x.sum()))
        value, x, trace = maximize(problem, [np.ones(3)], list(np.eye(3)))
        assert value == pytest.approx(1.0)
        assert trace.starts == 4

    def test_ascent_reaches_interior_maximum(self):
        problem = RatioProblem(n=3, ratio=lambda x: float(np.sqrt(x).sum() ** 2 / x.sum()))
        value, _, _ = maximize(problem, [np.array([1.0, 0.2, 0.5])])
        assert value == pytest.approx(3.0, rel=1e-4)

    def test_needs_a_point(self):
        problem = RatioProblem(n=2, ratio=lambda x: 1.0)
        with pytest.raises(InvalidArgumentError):
            maximize(problem, [], [np.zeros(2)])


class TestBestConstant:
    """Lower bounds of C_p(n)."""

    @pytest.mark.parametrize("n", [2, 4, 8, 16])
    def test_identity_closed_form(self, n):
        point = best_constant(identity(), Lq(1.0), Lq(2.0), n, n_E=2 * n, seed=0)
        assert point.value == pytest.approx(math.sqrt(n), rel=0.02)

    def test_identity_n4_matches_grid_oracle(self):
        point = best_constant(identity(), Lq(1.0), Lq(2.0), 4, n_E=8)
        assert point.value == pytest.approx(2.0, rel=1e-6)
        assert point.grid_value is not None
        assert point.confirmed is True

    def test_identity_into_larger_q_is_one(self):
        point = best_constant(identity(), Lq(3.0), Lq(2.0), 4, n_E=8)
        assert point.value == pytest.approx(1.0, rel=1e-9)

    def test_diagonal_hoelder_sharpness(self):
        n = 8
        point = best_constant(halving_diagonal(), Lq(1.0), Lq(2.0), n, n_E=16)
        expected = math.sqrt(sum(4.0 ** -j for j in range(1, n + 1)))
        assert point.value == pytest.approx(expected, rel=0.01)

    @pytest.mark.parametrize("make, E, p, n, n_E", [
        (halving_diagonal, Lq(1.0), 2.0, 4, 16),
        (halving_diagonal, Lq(1.0), 2.0, 8, 16),
        (hilbert, Lq(2.0), 3.0, 4, 24),
        (hilbert, Lq(2.0), 3.0, 6, 24),
        (cesaro, Lq(2.0), 2.0, 6, 24),
    ])
    def test_constant_never_exceeds_hoelder_bound(self, make, E, p, n, n_E):
        M = make()
        point = best_constant(M, E, Lq(p), n, n_E=n_E, seed=1)
        cond = condition_I(M, E, p, n, n_E=n_E)
        assert point.value <= cond.hoelder_bound * (1 + 1e-9)

    def test_maximizer_is_normalized(self):
        point = best_constant(identity(), Lq(1.0), Lq(2.0), 4, n_E=8)
        assert np.linalg.norm(point.trace.maximizer) == pytest.approx(1.0)

    def test_seeded_runs_agree(self):
        first = best_constant(hilbert(), Lq(2.0), Lq(3.0), 6, n_E=24, seed=9)
        second = best_constant(hilbert(), Lq(2.0), Lq(3.0), 6, n_E=24, seed=9)
        assert first.value == second.value
        assert first.trace.maximizer == second.trace.maximizer

    def test_warm_start_keeps_constants_nondecreasing(self):
        small = best_constant(hilbert(), Lq(2.0), Lq(3.0), 4, n_E=32)
        large = best_constant(hilbert(), Lq(2.0), Lq(3.0), 8, n_E=32, warm_start=small.trace.maximizer)
        assert large.value >= small.value * (1 - 1e-12)


class TestPowerDomination:
    """D_r(n) and the embedding equivalence."""

    def test_identity_half_power(self):
        point = power_domination_constant(identity(), Lq(1.0), 0.5, 2, n_E=4)
        assert point.value == pytest.approx(2.0, rel=0.01)
        assert point.exact_denominator

    def test_invalid_exponent(self):
        with pytest.raises(InvalidArgumentError):
            power_domination_constant(identity(), Lq(1.0), 0.0, 2, n_E=4)

    def test_greedy_denominator_is_flagged(self):
        M = dense([[1.0, -1.0, 1.0], [1.0, 1.0, -1.0]])
        point = power_domination_constant(M, Lq(1.0), 0.5, 3, n_E=2, n_enum=2, confirm=False)
        assert not point.exact_denominator

    def test_embedding_check_on_identity(self):
        check = domination_embedding_check(identity(), Lq(1.0), 0.5, 2, n_E=4)
        assert check.D == pytest.approx(2.0, rel=0.01)
        assert check.B == pytest.approx(2.0, rel=0.01)
        assert check.first_half_ok and check.second_half_ok

    @pytest.mark.parametrize("r", [0.5, 1 / 3])
    def test_embedding_check_on_random_nonnegative(self, r):
        rng = np.random.default_rng(21)
        M = dense(rng.uniform(0.0, 1.0, size=(5, 4)).tolist())
        check = domination_embedding_check(M, Lq(2.0), r, 4, n_E=5, restarts=4, seed=1)
        assert check.first_half_ok and check.second_half_ok

    def test_embedding_check_needs_exact_norms(self):
        with pytest.raises(PreconditionError):
            domination_embedding_check(identity(), Lq(1.0), 0.5, 6, n_E=8, n_enum=4)

    def test_factorization_bound_dominates_constant(self):
        bound = domination_factorability_bound(identity(), Lq(1.0), 2.0, 4, n_E=8)
        constant = best_constant(identity(), Lq(1.0), Lq(2.0), 4, n_E=8)
        assert bound.domination_constant == pytest.approx(4.0, rel=0.01)
        assert bound.operator_norm_l1 == 1.0
        assert constant.value <= bound.bound * (1 + 1e-6)

    def test_factorization_bound_is_open_for_quasi_norms(self):
        bound = domination_factorability_bound(identity(), Lq(0.5), 2.0, 2, n_E=4)
        assert bound.bound == math.inf


class TestConditions:
    """Sufficient conditions for factorability."""

    def test_condition_I_halving_diagonal(self):
        result = condition_I(halving_diagonal(), Lq(1.0), 2.0, 24, n_E=32)
        assert result.partial_sums[-1] == pytest.approx(1.0 / 3.0, abs=1e-6)
        assert result.verdict == SeriesVerdict.CONVERGES
        assert not result.certified
        assert result.hoelder_bound == pytest.approx(1.0 / math.sqrt(3.0), rel=1e-6)
        assert result.note.startswith("condition (I) is sufficient only")

    def test_condition_I_certified_by_decay(self):
        decay = DecayModel("geometric", 1.0, ratio=0.5)
        result = condition_I(halving_diagonal(column_decay=decay), Lq(1.0), 2.0, 8, n_E=16)
        assert result.certified
        assert result.tail_bound == pytest.approx(0.25 ** 9 / 0.75)

    def test_condition_I_diverges_on_identity(self):
        result = condition_I(identity(), Lq(2.0), 2.0, 32, n_E=32)
        assert result.verdict == SeriesVerdict.DIVERGES

    def test_condition_I_needs_p_above_one(self):
        with pytest.raises(PreconditionError):
            condition_I(identity(), Lq(1.0), 1.0, 4, n_E=4)

    def test_rows_example_converges_to_two(self):
        M = expr("2**(-i) if j <= i else 0", nonnegative=True, row_extent="i")
        result = rows_condition(M, 1.0, 48)
        assert result.partial_sums[-1] == pytest.approx(2.0, abs=1e-6)
        assert result.verdict == SeriesVerdict.CONVERGES
        assert all(result.row_exact)

    def test_cesaro_rows_diverge(self):
        result = rows_condition(cesaro(), 1.0, 64)
        assert result.verdict == SeriesVerdict.DIVERGES

    def test_rows_domination_bound(self):
        M = expr("2**(-i) if j <= i else 0", nonnegative=True, row_extent="i")
        result = rows_condition(M, 1.0, 48, p=2.0)
        assert result.domination_bound == pytest.approx(2.0, abs=1e-6)

    def test_rows_condition_needs_nonnegative_matrix(self):
        with pytest.raises(PreconditionError):
            rows_condition(dense([[1.0, -1.0]]), 1.0, 4)


class TestVerdict:
    """Growth fit plus condition (I)."""

    def test_identity_into_l1_is_unbounded(self):
        report = factorability_verdict(identity(), Lq(1.0), 2.0, [2, 4, 8], n_E=16, restarts=2)
        assert report.verdict == Verdict.UNBOUNDED
        assert report.growth.exponent == pytest.approx(0.5, abs=0.02)
        assert report.monotone

    def test_halving_diagonal_is_bounded(self):
        report = factorability_verdict(halving_diagonal(), Lq(1.0), 2.0, [2, 4, 8, 16], n_E=32, restarts=2)
        assert report.verdict == Verdict.BOUNDED
        assert report.condition_I.verdict == SeriesVerdict.CONVERGES
        assert report.condition_II is not None

    def test_invalid_schedules(self):
        with pytest.raises(PreconditionError):
            check_schedule(1.0, [2, 4])
        with pytest.raises(InvalidArgumentError):
            check_schedule(2.0, [4, 2])
        with pytest.raises(InvalidArgumentError):
            check_schedule(2.0, [])


class TestExtension:
    """∫ f dm_M agrees with Mf."""

    @pytest.mark.parametrize("M", [cesaro(), hilbert(), identity()])
    def test_atoms_match_rows(self, M):
        f = FiniteVector.from_dense([1.0, -0.5, 0.25, 2.0])
        assert extension_consistency(M, Lq(2.0), f, 16)
