import json
import math

import pytest

from optdom.norm_engine.entities import FiniteVector, Intersection, Lq, NormEstimate, Power, Sum, WeightedLq
from optdom.norm_engine.entities.enums import Method
from optdom.norm_engine.errors import ConfigError, ContractError
from optdom.storage import FileSpecProvider, ReportExporter
from optdom.storage.loader import (
    load_csv_matrix,
    load_json,
    parse_config,
    parse_matrix,
    parse_schedule,
    parse_space,
    parse_vector,
)

L1 = {"variant": "lq", "q": 1}


def write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestParseSpace:
    """SpaceSpec JSON."""

    def test_nested_variants(self):
        space = parse_space({
            "variant": "intersection",
            "left": {"variant": "sum", "left": L1, "right": {"variant": "lq", "q": "inf"}},
            "right": {"variant": "power", "base": L1, "p": 0.5},
        })
        assert space == Intersection(Sum(Lq(1.0), Lq(math.inf)), Power(Lq(1.0), 0.5))

    def test_weighted(self):
        space = parse_space({"variant": "weighted_lq", "q": 2,
                             "weights": {"kind": "power_decay", "constant": 1, "exponent": 2}})
        assert isinstance(space, WeightedLq)
        assert space.weights(3) == pytest.approx(1 / 9)

    def test_invalid_exponent_points_at_node(self):
        with pytest.raises(ConfigError) as info:
            parse_space({"variant": "sum", "left": L1, "right": {"variant": "lq", "q": 0}})
        assert info.value.path == "$.right"

    def test_unknown_variant(self):
        with pytest.raises(ConfigError) as info:
            parse_space({"variant": "orlicz"})
        assert info.value.path == "$.variant"

    def test_missing_field(self):
        with pytest.raises(ConfigError) as info:
            parse_space({"variant": "power", "base": L1})
        assert info.value.path == "$.p"

    def test_boolean_is_not_a_number(self):
        with pytest.raises(ConfigError):
            parse_space({"variant": "lq", "q": True})


class TestParseMatrix:
    """MatrixOperator JSON and CSV."""

    def test_builtin_with_declared_decay(self):
        M = parse_matrix({
            "kind": "diagonal",
            "params": {"d": {"kind": "geometric", "constant": 0.5, "ratio": 0.5}},
            "column_decay": {"kind": "geometric", "constant": 1.0, "ratio": 0.5},
        })
        assert M.coefficient(3, 3) == 0.125
        assert M.column_decay.ratio == 0.5
        assert M.spec["column_decay"]["kind"] == "geometric"

    def test_hilbert_without_tail(self):
        M = parse_matrix({"kind": "hilbert", "params": {"tail_q": None}})
        assert M.column_tail is None

    def test_dense_rows_and_triples(self):
        rows = parse_matrix({"kind": "dense", "params": {"rows": [[1, 0], [2, 3]]}})
        triples = parse_matrix({"kind": "dense", "params": {"triples": [[2, 1, 2], [1, 1, 1], [2, 2, 3]]}})
        for i in (1, 2):
            for j in (1, 2):
                assert rows.coefficient(i, j) == triples.coefficient(i, j)

    def test_declared_sign_contradicted(self):
        M = parse_matrix({"kind": "dense", "nonnegative": True, "params": {"rows": [[1, -1]]}})
        with pytest.raises(ContractError):
            M.coefficient(1, 2)

    def test_bad_expression_is_a_config_error(self):
        with pytest.raises(ConfigError):
            parse_matrix({"kind": "expr", "params": {"expression": "open('x')"}})

    def test_bad_row_entry_path(self):
        with pytest.raises(ConfigError) as info:
            parse_matrix({"kind": "dense", "params": {"rows": [[1, 2], [3, "x"]]}})
        assert info.value.path == "$.params.rows[1][1]"

    def test_csv_row_major(self, tmp_path):
        path = tmp_path / "block.csv"
        path.write_text("1,0.5\n0,2\n", encoding="utf-8")
        M = load_csv_matrix(str(path))
        assert M.name == "block"
        assert M.coefficient(1, 2) == 0.5
        assert M.nonnegative

    def test_csv_triples(self, tmp_path):
        path = tmp_path / "sparse.csv"
        path.write_text("i,j,value\n1,1,1\n3,2,-4\n", encoding="utf-8")
        M = load_csv_matrix(str(path))
        assert M.coefficient(3, 2) == -4.0
        assert not M.nonnegative

    def test_csv_bad_cell(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\n3,oops\n", encoding="utf-8")
        with pytest.raises(ConfigError) as info:
            load_csv_matrix(str(path))
        assert info.value.path == "$[line 2]"

    def test_dense_from_relative_file(self, tmp_path):
        (tmp_path / "block.csv").write_text("1,2\n", encoding="utf-8")
        write_json(tmp_path / "matrix.json", {"kind": "dense", "params": {"file": "block.csv"}})
        M = FileSpecProvider(str(tmp_path)).get_matrix("matrix.json")
        assert M.coefficient(1, 2) == 2.0


class TestParseConfig:
    """AnalysisConfig with defaults and file references."""

    def test_defaults(self):
        config = parse_config({"matrix": {"kind": "identity"}, "codomain": L1, "p": 2})
        assert config.schedule == (2, 4, 8, 16)
        assert config.n_E == 64
        assert config.n_enum == 20
        assert config.domination_n == 4
        assert config.json_path is None

    def test_paths_relative_to_config(self, tmp_path):
        write_json(tmp_path / "m.json", {"kind": "cesaro"})
        write_json(tmp_path / "e.json", {"variant": "lq", "q": 2})
        write_json(tmp_path / "config.json", {
            "matrix": "m.json",
            "codomain": "e.json",
            "p": 3,
            "schedule": "2,4",
            "probes": [{"indices": [1, 2], "values": [1.0, -1.0]}],
            "outputs": {"json": "out.json"},
        })
        config = FileSpecProvider(str(tmp_path)).get_config("config.json", {"seed": 5})
        assert config.matrix.name == "cesaro"
        assert config.codomain == Lq(2.0)
        assert config.schedule == (2, 4)
        assert config.n_E == 16
        assert config.seed == 5
        assert config.probes == (FiniteVector((1, 2), (1.0, -1.0)),)
        assert config.json_path == "out.json"

    @pytest.mark.parametrize("patch, where", [
        ({"p": 1}, "$.p"),
        ({"schedule": [4, 2]}, "$.schedule"),
        ({"schedule": [0, 2]}, "$.schedule[0]"),
        ({"n_enum": 30}, "$.n_enum"),
        ({"seed": "x"}, "$.seed"),
        ({"use_tail": "yes"}, "$.use_tail"),
        ({"domination_n": 40}, "$.domination_n"),
    ])
    def test_invalid_fields(self, patch, where):
        data = {"matrix": {"kind": "identity"}, "codomain": L1, "p": 2}
        data.update(patch)
        with pytest.raises(ConfigError) as info:
            parse_config(data)
        assert info.value.path == where

    def test_missing_matrix(self):
        with pytest.raises(ConfigError) as info:
            parse_config({"codomain": L1, "p": 2})
        assert info.value.path == "$.matrix"

    def test_parse_schedule(self):
        assert parse_schedule("2, 4,8") == [2, 4, 8]
        with pytest.raises(ConfigError):
            parse_schedule("2,four")


class TestFiles:
    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_json(str(tmp_path / "absent.json"))

    def test_corrupted_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"kind": ', encoding="utf-8")
        with pytest.raises(ConfigError):
            load_json(str(path))

    def test_vector_index_must_be_positive(self):
        with pytest.raises(ConfigError) as info:
            parse_vector({"indices": [0], "values": [1.0]})
        assert info.value.path == "$.indices[0]"


class TestExporter:
    """Deterministic JSON, atomic writes."""

    def test_non_finite_floats_become_null(self):
        exporter = ReportExporter()
        estimate = NormEstimate.bracket(1.0, math.inf, Method.TRUNCATED_COLUMN)
        data = json.loads(exporter.to_json({"estimate": estimate, "nan": float("nan")}))
        assert data["estimate"]["upper"] is None
        assert data["nan"] is None

    def test_keys_are_sorted(self):
        text = ReportExporter().to_json({"b": 1, "a": FiniteVector.unit(2)})
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text)["a"] == {"indices": [2], "values": [1.0]}

    def test_export_creates_directories(self, tmp_path):
        target = tmp_path / "nested" / "report.json"
        ReportExporter().export_json({"space": Lq(2.0)}, str(target))
        assert json.loads(target.read_text(encoding="utf-8")) == {"space": "Lq(2)"}
        assert [p.name for p in target.parent.iterdir()] == ["report.json"]
