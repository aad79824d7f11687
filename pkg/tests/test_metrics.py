import math

import pytest

from optdom.norm_engine.analysis.metrics import (
    doubling_points,
    growth_fit,
    is_nondecreasing,
    partial_sums,
    running_max,
    series_verdict,
)
from optdom.norm_engine.entities import NormEstimate, SeriesVerdict, Verdict
from optdom.norm_engine.entities.enums import Method
from optdom.norm_engine.entities.norm_estimate import combine_max
from optdom.norm_engine.errors import InvalidArgumentError
from optdom.norm_engine.seeding import derive_seed, task_rng


class TestGrowthFit:
    """log-log slope over the last four points."""

    def test_constant_is_bounded(self):
        fit = growth_fit([2, 4, 8, 16], [3.0, 3.0, 3.0, 3.0])
        assert fit.verdict == Verdict.BOUNDED
        assert fit.exponent == pytest.approx(0.0, abs=1e-12)

    def test_square_root_is_unbounded(self):
        ns = [2, 4, 8, 16]
        fit = growth_fit(ns, [math.sqrt(n) for n in ns])
        assert fit.verdict == Verdict.UNBOUNDED
        assert fit.exponent == pytest.approx(0.5)

    def test_middle_band_is_inconclusive(self):
        ns = [2, 4, 8, 16]
        fit = growth_fit(ns, [n ** 0.1 for n in ns])
        assert fit.verdict == Verdict.INCONCLUSIVE

    def test_only_last_window_counts(self):
        ns = [1, 2, 4, 8, 16, 32]
        values = [1.0, 100.0, 5.0, 5.0, 5.0, 5.0]
        fit = growth_fit(ns, values)
        assert fit.window == (4, 8, 16, 32)
        assert fit.verdict == Verdict.BOUNDED

    def test_too_few_points(self):
        fit = growth_fit([4], [1.0])
        assert fit.exponent is None
        assert fit.verdict == Verdict.INCONCLUSIVE

    def test_skips_zero_and_infinite_values(self):
        fit = growth_fit([2, 4, 8], [0.0, math.inf, 1.0])
        assert fit.verdict == Verdict.INCONCLUSIVE

    @pytest.mark.parametrize("verdict, expected", [
        (Verdict.BOUNDED, SeriesVerdict.CONVERGES),
        (Verdict.UNBOUNDED, SeriesVerdict.DIVERGES),
        (Verdict.INCONCLUSIVE, SeriesVerdict.INCONCLUSIVE),
    ])
    def test_series_verdict(self, verdict, expected):
        fit = growth_fit([2, 4], [1.0, 1.0])
        fit = type(fit)(exponent=fit.exponent, verdict=verdict, window=fit.window)
        assert series_verdict(fit) == expected


class TestSequences:
    def test_doubling_points(self):
        assert doubling_points(10) == [1, 2, 4, 8, 10]
        assert doubling_points(8) == [1, 2, 4, 8]
        assert doubling_points(0) == []

    def test_partial_sums_are_compensated(self):
        sums = partial_sums([1e16, 1.0, -1e16])
        assert sums[-1] == 1.0

    def test_running_max(self):
        assert running_max([1.0, 3.0, 2.0, 4.0]) == [1.0, 3.0, 3.0, 4.0]

    def test_is_nondecreasing_tolerates_rounding(self):
        assert is_nondecreasing([1.0, 1.0 - 1e-12, 2.0])
        assert not is_nondecreasing([1.0, 0.9])


class TestNormEstimate:
    """Bracket invariants."""

    def test_exact_has_equal_bounds(self):
        estimate = NormEstimate.exact(2.0, Method.EXACT)
        assert estimate.lower == estimate.upper == 2.0
        assert estimate.is_exact and estimate.is_closed

    def test_inverted_bracket(self):
        with pytest.raises(InvalidArgumentError):
            NormEstimate.bracket(3.0, 1.0, Method.LOCAL_SEARCH)

    def test_open_bracket_serializes_upper_as_none(self):
        estimate = NormEstimate.bracket(1.0, math.inf, Method.TRUNCATED_COLUMN)
        assert not estimate.is_closed
        assert estimate.to_dict()["upper"] is None
        assert estimate.best == 1.0

    def test_transform_keeps_open_upper(self):
        estimate = NormEstimate.bracket(4.0, math.inf, Method.TRUNCATED_COLUMN)
        root = estimate.transform(math.sqrt)
        assert root.lower == 2.0
        assert root.upper == math.inf

    def test_combine_max(self):
        first = NormEstimate.exact(2.0, Method.EXACT)
        second = NormEstimate.bracket(1.0, 3.0, Method.LOCAL_SEARCH)
        combined = combine_max(first, second)
        assert (combined.lower, combined.upper) == (2.0, 3.0)


class TestSeeding:
    def test_tasks_get_independent_streams(self):
        assert derive_seed(7, "a") != derive_seed(7, "b")
        assert derive_seed(7, "a", 1) != derive_seed(7, "a", 2)

    def test_streams_are_reproducible(self):
        assert task_rng(3, "x").random() == task_rng(3, "x").random()
