import json

import pytest

import optdom.cli as cli_module
from optdom.cli import EXIT_INPUT, EXIT_INTERNAL, EXIT_OK, SEED_ENV, main

IDENTITY = '{"kind": "identity"}'
L1 = '{"variant": "lq", "q": 1}'


@pytest.fixture(autouse=True)
def clean_seed(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)


class TestGenerate:
    def test_prints_builtin_spec(self, capsys):
        assert main(["generate", "hilbert"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == {"kind": "hilbert", "params": {"tail_q": 2.0}}

    def test_generated_spec_feeds_analyze(self, tmp_path, capsys):
        matrix = tmp_path / "expr.json"
        assert main(["generate", "expr", "--out", str(matrix)]) == EXIT_OK
        code = main(["analyze", "--matrix", str(matrix), "--codomain", L1, "--p", "2", "--schedule", "2,4",
                     "--n-E", "8", "--restarts", "2"])
        assert code == EXIT_OK
        assert "# Analysis of 'expr' into Lq(1)" in capsys.readouterr().out


class TestAnalyze:
    """`optdom analyze`."""

    def run(self, tmp_path, name, *extra):
        out = tmp_path / name
        code = main(["analyze", "--matrix", IDENTITY, "--codomain", L1, "--p", "2", "--schedule", "2,4",
                     "--n-E", "8", "--restarts", "2", "--seed", "7", "--out", str(out), *extra])
        return code, json.loads(out.read_text(encoding="utf-8"))

    def test_reports_are_byte_identical(self, tmp_path):
        code_a, first = self.run(tmp_path, "a.json")
        code_b, second = self.run(tmp_path, "b.json")
        assert code_a == code_b == EXIT_OK
        assert json.dumps(first["report"], sort_keys=True) == json.dumps(second["report"], sort_keys=True)
        assert first["report"]["config"]["seed"] == 7

    def test_seed_from_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "5")
        out = tmp_path / "r.json"
        main(["analyze", "--matrix", IDENTITY, "--codomain", L1, "--p", "2", "--schedule", "2",
              "--n-E", "4", "--domination-n", "2", "--out", str(out)])
        assert json.loads(out.read_text(encoding="utf-8"))["report"]["config"]["seed"] == 5

    def test_config_file_with_overrides(self, tmp_path, capsys):
        (tmp_path / "m.json").write_text(IDENTITY, encoding="utf-8")
        config = tmp_path / "config.json"
        config.write_text(json.dumps({
            "matrix": "m.json",
            "codomain": {"variant": "lq", "q": 1},
            "p": 3,
            "schedule": [2, 4],
            "n_E": 8,
            "restarts": 2,
        }), encoding="utf-8")
        assert main(["analyze", "--config", str(config), "--p", "2", "--md", str(tmp_path / "r.md")]) == EXIT_OK
        assert "identity" in capsys.readouterr().out
        assert "- **p**: 2" in (tmp_path / "r.md").read_text(encoding="utf-8")

    def test_corrupted_matrix_file(self, tmp_path, capsys):
        matrix = tmp_path / "m.json"
        matrix.write_text('{"kind": "dense", "params": {"rows": [[1, ', encoding="utf-8")
        code = main(["analyze", "--matrix", str(matrix), "--codomain", L1, "--p", "2"])
        assert code == EXIT_INPUT
        assert "not valid JSON" in capsys.readouterr().err

    def test_missing_p(self, capsys):
        assert main(["analyze", "--matrix", IDENTITY, "--codomain", L1]) == EXIT_INPUT
        assert "'p'" in capsys.readouterr().err

    def test_p_must_exceed_one(self, capsys):
        assert main(["analyze", "--matrix", IDENTITY, "--codomain", L1, "--p", "1"]) == EXIT_INPUT
        assert "$.p" in capsys.readouterr().err

    def test_bad_seed_environment(self, monkeypatch):
        monkeypatch.setenv(SEED_ENV, "seven")
        assert main(["analyze", "--matrix", IDENTITY, "--codomain", L1, "--p", "2"]) == EXIT_INPUT

    def test_zero_column(self, capsys):
        code = main(["analyze", "--matrix", '{"kind": "dense", "params": {"rows": [[1, 0]]}}',
                     "--codomain", L1, "--p", "2", "--schedule", "2", "--domination-n", "2"])
        assert code == EXIT_INPUT
        assert "Column 2" in capsys.readouterr().err


class TestNorm:
    """`optdom norm`."""

    def test_space_norm(self, capsys):
        code = main(["norm", "--vector", '{"indices": [1, 2], "values": [3, 4]}',
                     "--space", '{"variant": "lq", "q": 2}'])
        assert code == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["value"] == pytest.approx(5.0)
        assert data["method"] == "exact"

    def test_l1m_from_files(self, tmp_path, capsys):
        (tmp_path / "m.csv").write_text("1,1\n1,-1\n", encoding="utf-8")
        (tmp_path / "f.json").write_text('{"indices": [1, 2], "values": [1, 1]}', encoding="utf-8")
        code = main(["norm", "--selector", "l1m", "--matrix", str(tmp_path / "m.csv"), "--codomain",
                     '{"variant": "lq", "q": 2}', "--vector", str(tmp_path / "f.json"), "--n-E", "4",
                     "--out", str(tmp_path / "n.json")])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["value"] == pytest.approx(2.0)
        assert json.loads((tmp_path / "n.json").read_text(encoding="utf-8"))["kind"] == "norm"

    def test_missing_vector(self, capsys):
        assert main(["norm", "--space", L1]) == EXIT_INPUT
        assert "--vector" in capsys.readouterr().err

    def test_invalid_inline_json(self):
        assert main(["norm", "--vector", "{indices", "--space", L1]) == EXIT_INPUT

    def test_unexpected_failure_is_an_internal_error(self, monkeypatch, capsys):
        def failing_norm(*args, **kwargs):
            raise ValueError("array must not contain infs or NaNs")

        monkeypatch.setattr(cli_module, "run_norm", failing_norm)
        code = main(["norm", "--vector", '{"indices": [1], "values": [1]}', "--space", L1])
        assert code == EXIT_INTERNAL
        assert "error: internal: array must not contain infs or NaNs" in capsys.readouterr().err


@pytest.mark.slow
class TestVerify:
    def test_quick_suite_passes(self, tmp_path, capsys):
        out = tmp_path / "verify.json"
        assert main(["verify", "--scale", "quick", "--seed", "1", "--out", str(out)]) == EXIT_OK
        assert "All invariants pass." in capsys.readouterr().out
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["kind"] == "verify"
        assert data["report"]["passed"] is True
