import json
import math

import pytest

import optdom.norm_engine.engine as engine_module
from optdom.norm_engine.analysis.report import build_payload, render_markdown, render_verify_summary
from optdom.norm_engine.engine import AnalysisEngine
from optdom.norm_engine.entities import FiniteVector, Lq, Method, Sum, Verdict, WeightSequence
from optdom.norm_engine.entities.analysis_config import AnalysisConfig
from optdom.norm_engine.entities.factorability_report import AscentTrace, ConstantPoint
from optdom.norm_engine.entities.verify_summary import InvariantResult, VerifySummary
from optdom.norm_engine.errors import InvalidArgumentError, OracleDisagreementError, ZeroColumnError
from optdom.norm_engine.matop import dense, diagonal, identity
from optdom.runners import run_analyze, run_norm
from optdom.storage import ReportExporter


def identity_config(**kwargs):
    params = dict(matrix=identity(), codomain=Lq(1.0), p=2.0, schedule=(2, 4, 8), n_E=16, restarts=2)
    params.update(kwargs)
    return AnalysisConfig(**params)


@pytest.fixture(scope="module")
def identity_report():
    return AnalysisEngine().run(identity_config(probes=(FiniteVector.from_dense([1.0, 1.0]),)))


class TestAnalysisEngine:
    """End-to-end analyses on matrices with known answers."""

    def test_identity_into_l1_is_unbounded(self, identity_report):
        fact = identity_report.factorability
        assert fact.verdict == Verdict.UNBOUNDED
        assert fact.growth.exponent == pytest.approx(0.5, abs=0.02)

    def test_steps_follow_schedule(self, identity_report):
        steps = identity_report.steps
        assert [s.n for s in steps] == [2, 4, 8]
        for step in steps:
            assert step.constant == pytest.approx(math.sqrt(step.n), rel=0.02)
            assert step.column_sup == pytest.approx(1.0)
            assert step.hoelder_partial == pytest.approx(math.sqrt(step.n))
        assert steps[0].grid_value is not None
        assert steps[-1].grid_value is None

    def test_domination_runs_at_small_size(self, identity_report):
        assert identity_report.domination.first_half_ok
        assert identity_report.domination.second_half_ok
        assert identity_report.factorization_bound.operator_norm_l1 == 1.0

    def test_probe_norms(self, identity_report):
        (probe,) = identity_report.probes
        assert probe.norms.l1.value == pytest.approx(2.0)
        assert probe.norms.l_inv_p.value == pytest.approx(4.0)

    def test_config_summary(self, identity_report):
        config = identity_report.config
        assert config["codomain"] == "Lq(1)"
        assert config["schedule"] == [2, 4, 8]
        assert config["matrix"]["name"] == "identity"

    @pytest.mark.slow
    def test_halving_diagonal_is_bounded(self):
        M = diagonal(WeightSequence("geometric", constant=0.5, ratio=0.5))
        report = AnalysisEngine().run(identity_config(matrix=M, schedule=(2, 4, 8, 16), n_E=32))
        assert report.factorability.verdict == Verdict.BOUNDED

    def test_zero_column_is_rejected(self):
        config = identity_config(matrix=dense([[1.0, 0.0]]), schedule=(2,), n_E=4, domination_n=2)
        with pytest.raises(ZeroColumnError) as info:
            AnalysisEngine().run(config)
        assert info.value.column == 2

    def test_unconfirmed_ascent_aborts(self, monkeypatch):
        def short_ascent(M, E, F, n, *args, **kwargs):
            trace = AscentTrace(starts=1, best_start=0, iterations=0, maximizer=tuple([1.0] * n))
            return ConstantPoint(n=n, value=1.0, trace=trace, grid_value=2.0, confirmed=False)

        monkeypatch.setattr(engine_module, "best_constant", short_ascent)
        with pytest.raises(OracleDisagreementError):
            AnalysisEngine().run(identity_config())


class TestAnalyzeRunner:
    """Reports on disk."""

    def test_writes_json_and_markdown(self, tmp_path):
        json_path, md_path = tmp_path / "report.json", tmp_path / "report.md"
        run_analyze(identity_config(schedule=(2, 4), n_E=8, json_path=str(json_path), md_path=str(md_path)))

        data = json.loads(json_path.read_text(encoding="utf-8"))
        assert data["schema_version"] == 1
        assert data["kind"] == "analyze"
        assert data["report"]["factorability"]["verdict"] in {v.value for v in Verdict}
        assert "generated_at" in data["metadata"]

        text = md_path.read_text(encoding="utf-8")
        assert text.startswith("# Analysis of 'identity' into Lq(1)")
        assert "**Verdict**" in text

    def test_reports_are_reproducible(self):
        exporter = ReportExporter()
        config = identity_config(schedule=(2, 4), n_E=8, seed=11)
        first = run_analyze(config, save_results=False)["payload"]["report"]
        second = run_analyze(config, save_results=False)["payload"]["report"]
        assert exporter.to_json(first) == exporter.to_json(second)

    def test_no_files_without_paths(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        run_analyze(identity_config(schedule=(2,), n_E=4, domination_n=2))
        assert list(tmp_path.iterdir()) == []


class TestRendering:
    def test_markdown_sections(self, identity_report):
        text = render_markdown(identity_report)
        assert "- **Verdict**: unbounded-evidence" in text
        assert "- **Schedule**: 2, 4, 8" in text

    def test_verify_summary(self):
        result = InvariantResult("young")
        result.record(True)
        text = render_verify_summary(VerifySummary(seed=0, scale="quick", results=[result]))
        assert "All invariants pass." in text

    def test_failed_invariant_is_reported(self):
        result = InvariantResult("sandwich")
        result.record(False, "S = 2 above the exact norm")
        summary = VerifySummary(seed=3, scale="quick", results=[result])
        assert not summary.passed
        assert "S = 2 above the exact norm" in render_verify_summary(summary)

    def test_payload_layout(self):
        payload = build_payload({"x": 1}, "norm", meta={"generated_at": "fixed"})
        assert payload == {"schema_version": 1, "kind": "norm", "report": {"x": 1},
                           "metadata": {"generated_at": "fixed"}}


class TestNormRunner:
    """Selector dispatch."""

    def test_space(self):
        estimate = run_norm("space", FiniteVector.from_dense([3.0, 4.0]), space=Lq(2.0))
        assert estimate.value == pytest.approx(5.0)
        assert estimate.method == Method.EXACT

    def test_sum_space(self):
        estimate = run_norm("space", FiniteVector.from_dense([2.0, 1.0]), space=Sum(Lq(1.0), Lq(math.inf)))
        assert estimate.best == pytest.approx(2.0)

    def test_l1m(self):
        estimate = run_norm("l1m", FiniteVector.from_dense([1.0, 1.0]), matrix=dense([[1.0, 1.0], [1.0, -1.0]]),
                            codomain=Lq(2.0), n_E=4)
        assert estimate.value == pytest.approx(2.0)

    def test_lpm(self):
        estimate = run_norm("lpm", FiniteVector.from_dense([1.0, 1.0]), matrix=identity(), codomain=Lq(1.0),
                            p=0.5, n_E=8)
        assert estimate.value == pytest.approx(4.0)

    @pytest.mark.parametrize("selector, kwargs", [
        ("volume", {"space": Lq(1.0)}),
        ("space", {}),
        ("l1m", {"codomain": Lq(1.0)}),
        ("lpm", {"matrix": identity(), "codomain": Lq(1.0)}),
    ])
    def test_missing_inputs(self, selector, kwargs):
        with pytest.raises(InvalidArgumentError):
            run_norm(selector, FiniteVector.unit(1), **kwargs)
