"""
JSON / CSV inputs -> entities.

Every parser takes the decoded JSON node and its path (`$.matrix.params.d`)
and raises ConfigError pointing at the failing node.
"""

import csv
import json
import logging
import math
import os
from typing import Any, Dict, List, Optional, Sequence

from optdom.norm_engine.entities.analysis_config import AnalysisConfig
from optdom.norm_engine.entities.decay_model import DecayModel
from optdom.norm_engine.entities.finite_vector import FiniteVector
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.space_spec import Intersection, Lq, Power, SpaceSpec, Sum, WeightedLq
from optdom.norm_engine.entities.weights import WeightSequence
from optdom.norm_engine.errors import ConfigError, OptdomError
from optdom.norm_engine.matop import generators

logger = logging.getLogger(__name__)

SPACE_VARIANTS = ("lq", "weighted_lq", "power", "sum", "intersection")
_INF_STRINGS = ("inf", "+inf", "infinity", "Infinity")


class FileSpecProvider:
    """Charge matrices, espaces, vecteurs et configurations depuis des fichiers.

    Les chemins relatifs trouvés dans un fichier de configuration sont
    résolus par rapport au dossier de ce fichier.
    """

    def __init__(self, base_dir: str = "."):
        self.base_dir = base_dir

    def _resolve(self, path: str) -> str:
        return path if os.path.isabs(path) else os.path.join(self.base_dir, path)

    def get_matrix(self, path: str) -> MatrixOperator:
        full = self._resolve(path)
        if full.lower().endswith(".csv"):
            return load_csv_matrix(full)
        return parse_matrix(load_json(full), "$", base_dir=os.path.dirname(full))

    def get_space(self, path: str) -> SpaceSpec:
        return parse_space(load_json(self._resolve(path)), "$")

    def get_vector(self, path: str) -> FiniteVector:
        return parse_vector(load_json(self._resolve(path)), "$")

    def get_config(self, path: str, overrides: Optional[Dict[str, Any]] = None) -> AnalysisConfig:
        full = self._resolve(path)
        data = load_json(full)
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object.", "$")
        merged = dict(data)
        merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
        return parse_config(merged, base_dir=os.path.dirname(full))


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as file:
            return json.load(file)
    except OSError as exc:
        raise ConfigError(f"cannot read '{path}': {exc.strerror}.", "$")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"'{path}' is not valid JSON ({exc.msg}, line {exc.lineno}).", "$")


# --- SpaceSpec ---

def parse_space(data: Any, path: str = "$") -> SpaceSpec:
    obj = _object(data, path)
    variant = _choice(obj, "variant", SPACE_VARIANTS, path)
    with _wrap(path):
        if variant == "lq":
            return Lq(_number(obj, "q", path, allow_inf=True))
        if variant == "weighted_lq":
            return WeightedLq(_number(obj, "q", path, allow_inf=True),
                              parse_weights(_field(obj, "weights", path), f"{path}.weights"))
        if variant == "power":
            return Power(parse_space(_field(obj, "base", path), f"{path}.base"), _number(obj, "p", path))
        left = parse_space(_field(obj, "left", path), f"{path}.left")
        right = parse_space(_field(obj, "right", path), f"{path}.right")
        return Sum(left, right) if variant == "sum" else Intersection(left, right)


def parse_weights(data: Any, path: str = "$") -> WeightSequence:
    obj = _object(data, path)
    kind = _choice(obj, "kind", ("power_decay", "geometric", "explicit"), path)
    with _wrap(path):
        if kind == "explicit":
            values = _list(obj, "values", path)
            return WeightSequence("explicit", values=tuple(_as_float(v, f"{path}.values[{k}]")
                                                           for k, v in enumerate(values)))
        return WeightSequence(
            kind,
            constant=_number(obj, "constant", path, default=1.0),
            exponent=_number(obj, "exponent", path, default=0.0),
            ratio=_number(obj, "ratio", path, default=1.0),
        )


def parse_decay(data: Any, path: str = "$") -> Optional[DecayModel]:
    if data is None:
        return None
    obj = _object(data, path)
    kind = _choice(obj, "kind", ("power_decay", "geometric"), path)
    q = obj.get("q")
    with _wrap(path):
        return DecayModel(
            kind,
            constant=_number(obj, "constant", path),
            exponent=_number(obj, "exponent", path, default=1.0),
            ratio=_number(obj, "ratio", path, default=0.5),
            q=None if q is None else _as_float(q, f"{path}.q", allow_inf=True),
        )


def parse_vector(data: Any, path: str = "$") -> FiniteVector:
    obj = _object(data, path)
    indices = _list(obj, "indices", path)
    values = _list(obj, "values", path)
    if len(indices) != len(values):
        raise ConfigError("indices and values must have the same length.", path)
    pairs = []
    for k, (idx, val) in enumerate(zip(indices, values)):
        if not isinstance(idx, int) or isinstance(idx, bool) or idx < 1:
            raise ConfigError(f"index {idx!r} is not a positive integer.", f"{path}.indices[{k}]")
        pairs.append((idx, _as_float(val, f"{path}.values[{k}]")))
    return FiniteVector.from_pairs(pairs)


# --- MatrixOperator ---

def parse_matrix(data: Any, path: str = "$", base_dir: str = ".") -> MatrixOperator:
    obj = _object(data, path)
    kind = _choice(obj, "kind", generators.BUILTIN_KINDS, path)
    params = obj.get("params", {})
    ppath = f"{path}.params"
    _object(params, ppath)
    column_tail = parse_decay(obj.get("column_tail"), f"{path}.column_tail")
    column_decay = parse_decay(obj.get("column_decay"), f"{path}.column_decay")
    row_decay = parse_decay(obj.get("row_decay"), f"{path}.row_decay")
    nonnegative = obj.get("nonnegative")
    if nonnegative is not None and not isinstance(nonnegative, bool):
        raise ConfigError("nonnegative must be a boolean.", f"{path}.nonnegative")

    with _wrap(path):
        if kind == "identity":
            M = generators.identity()
        elif kind == "diagonal":
            M = generators.diagonal(parse_weights(_field(params, "d", ppath), f"{ppath}.d"))
        elif kind in ("cesaro", "hilbert"):
            tail_q = params.get("tail_q", 2.0)
            tail_q = None if tail_q is None else _as_float(tail_q, f"{ppath}.tail_q")
            M = generators.cesaro(tail_q) if kind == "cesaro" else generators.hilbert(tail_q)
        elif kind == "dense":
            M = _parse_dense(params, ppath, nonnegative, base_dir)
        else:
            expression = params.get("expression")
            if not isinstance(expression, str):
                raise ConfigError("expr matrices need a string 'expression'.", f"{ppath}.expression")
            M = generators.expr(expression, nonnegative=bool(nonnegative),
                                column_extent=params.get("column_extent"), row_extent=params.get("row_extent"))

    overrides: Dict[str, Any] = {}
    if column_tail is not None:
        overrides["column_tail"] = column_tail
    if column_decay is not None:
        overrides["column_decay"] = column_decay
    if row_decay is not None:
        overrides["row_decay"] = row_decay
    if nonnegative is not None and kind != "dense":
        overrides["nonnegative"] = nonnegative
    if overrides:
        spec = dict(M.spec or {})
        spec.update({k: (v if isinstance(v, bool) else _decay_spec(v)) for k, v in overrides.items()})
        M = MatrixOperator(
            name=M.name,
            entry=M.entry,
            nonnegative=overrides.get("nonnegative", M.nonnegative),
            column_tail=overrides.get("column_tail", M.column_tail),
            column_decay=overrides.get("column_decay", M.column_decay),
            row_decay=overrides.get("row_decay", M.row_decay),
            column_extent=M.column_extent,
            row_extent=M.row_extent,
            spec=spec,
        )
    return M


def _parse_dense(params: Dict[str, Any], path: str, nonnegative: Optional[bool], base_dir: str) -> MatrixOperator:
    if "file" in params:
        file_path = params["file"]
        if not isinstance(file_path, str):
            raise ConfigError("file must be a path string.", f"{path}.file")
        full = file_path if os.path.isabs(file_path) else os.path.join(base_dir, file_path)
        return load_csv_matrix(full, nonnegative)
    if "triples" in params:
        triples = []
        for k, item in enumerate(_list(params, "triples", path)):
            tpath = f"{path}.triples[{k}]"
            if not isinstance(item, list) or len(item) != 3:
                raise ConfigError("a triple must be [i, j, value].", tpath)
            triples.append((_as_index(item[0], tpath), _as_index(item[1], tpath), _as_float(item[2], tpath)))
        return generators.from_triples(triples, nonnegative)
    rows = _list(params, "rows", path)
    block = []
    for k, row in enumerate(rows):
        if not isinstance(row, list):
            raise ConfigError("each row must be a list of numbers.", f"{path}.rows[{k}]")
        block.append([_as_float(v, f"{path}.rows[{k}][{c}]") for c, v in enumerate(row)])
    return generators.dense(block, nonnegative)


def load_csv_matrix(path: str, nonnegative: Optional[bool] = None) -> MatrixOperator:
    """Row-major numbers, or 'i,j,value' triples when the first line is that header."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as file:
            lines = [row for row in csv.reader(file) if row and any(cell.strip() for cell in row)]
    except OSError as exc:
        raise ConfigError(f"cannot read '{path}': {exc.strerror}.", "$")
    if not lines:
        raise ConfigError(f"'{path}' is empty.", "$")

    header = [cell.strip().lower() for cell in lines[0]]
    with _wrap("$"):
        if header == ["i", "j", "value"]:
            triples = []
            for k, row in enumerate(lines[1:], start=2):
                where = f"$[line {k}]"
                if len(row) != 3:
                    raise ConfigError("expected 'i,j,value'.", where)
                triples.append((_index_cell(row[0], where), _index_cell(row[1], where), _cell(row[2], where)))
            return generators.from_triples(triples, nonnegative)
        block = [[_cell(cell, f"$[line {k}]") for cell in row] for k, row in enumerate(lines, start=1)]
        return generators.dense(block, nonnegative, name=os.path.splitext(os.path.basename(path))[0])


# --- AnalysisConfig ---

def parse_config(data: Dict[str, Any], base_dir: str = ".") -> AnalysisConfig:
    """
    Build an AnalysisConfig. `matrix` / `codomain` may be inline objects or
    paths to JSON (or CSV for matrices) files.
    """
    matrix_node = _field(data, "matrix", "$")
    if isinstance(matrix_node, str):
        matrix = FileSpecProvider(base_dir).get_matrix(matrix_node)
    else:
        matrix = parse_matrix(matrix_node, "$.matrix", base_dir)
    codomain_node = _field(data, "codomain", "$")
    if isinstance(codomain_node, str):
        codomain = FileSpecProvider(base_dir).get_space(codomain_node)
    else:
        codomain = parse_space(codomain_node, "$.codomain")

    schedule = data.get("schedule", [2, 4, 8, 16])
    if isinstance(schedule, str):
        schedule = parse_schedule(schedule)
    if not isinstance(schedule, list):
        raise ConfigError("schedule must be a list of integers.", "$.schedule")
    schedule = tuple(_as_index(n, f"$.schedule[{k}]") for k, n in enumerate(schedule))

    probes = tuple(parse_vector(v, f"$.probes[{k}]") for k, v in enumerate(data.get("probes", []) or []))
    outputs = data.get("outputs", {}) or {}
    _object(outputs, "$.outputs")

    n_E = data.get("n_E")
    if n_E is None:
        n_E = default_n_E(schedule)
    return AnalysisConfig(
        matrix=matrix,
        codomain=codomain,
        p=_number(data, "p", "$"),
        schedule=schedule,
        n_E=_as_index(n_E, "$.n_E"),
        n_enum=_as_int(data.get("n_enum", 20), "$.n_enum"),
        seed=_as_int(data.get("seed", 0), "$.seed"),
        restarts=_as_int(data.get("restarts", 8), "$.restarts"),
        use_tail=_as_bool(data.get("use_tail", True), "$.use_tail"),
        domination_n=_as_int(data.get("domination_n", 4), "$.domination_n"),
        probes=probes,
        json_path=outputs.get("json"),
        md_path=outputs.get("md"),
    )


def default_n_E(schedule: Sequence[int]) -> int:
    """Codomain rows kept when none are given: four times the largest truncation."""
    return 4 * max(schedule) if schedule else 64


def parse_schedule(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ConfigError(f"schedule '{text}' is not a comma-separated list of integers.", "$.schedule")


# --- primitives ---

class _wrap:
    """Re-raise entity validation errors as ConfigError at `path`."""

    def __init__(self, path: str):
        self.path = path

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and isinstance(exc, OptdomError) and not isinstance(exc, ConfigError):
            raise ConfigError(str(exc), self.path) from exc
        return False


def _object(data: Any, path: str) -> Dict[str, Any]:
    if not isinstance(data, dict):
        raise ConfigError("expected a JSON object.", path)
    return data


def _field(obj: Dict[str, Any], key: str, path: str) -> Any:
    if key not in obj:
        raise ConfigError(f"missing required field '{key}'.", f"{path}.{key}")
    return obj[key]


def _list(obj: Dict[str, Any], key: str, path: str) -> List[Any]:
    value = _field(obj, key, path)
    if not isinstance(value, list):
        raise ConfigError("expected a list.", f"{path}.{key}")
    return value


def _choice(obj: Dict[str, Any], key: str, allowed: Sequence[str], path: str) -> str:
    value = _field(obj, key, path)
    if value not in allowed:
        raise ConfigError(f"'{value}' is not one of {', '.join(allowed)}.", f"{path}.{key}")
    return value


def _number(obj: Dict[str, Any], key: str, path: str, default: Optional[float] = None,
            allow_inf: bool = False) -> float:
    if key not in obj and default is not None:
        return default
    return _as_float(_field(obj, key, path), f"{path}.{key}", allow_inf)


def _as_float(value: Any, path: str, allow_inf: bool = False) -> float:
    if isinstance(value, str) and value.strip() in _INF_STRINGS and allow_inf:
        return math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}.", path)
    result = float(value)
    if math.isnan(result) or (math.isinf(result) and not allow_inf):
        raise ConfigError(f"expected a finite number, got {value!r}.", path)
    return result


def _as_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}.", path)
    return value


def _as_index(value: Any, path: str) -> int:
    result = _as_int(value, path)
    if result < 1:
        raise ConfigError(f"expected a positive integer, got {value!r}.", path)
    return result


def _as_bool(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"expected a boolean, got {value!r}.", path)
    return value


def _cell(text: str, path: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"'{text.strip()}' is not a number.", path)
    if not math.isfinite(value):
        raise ConfigError(f"'{text.strip()}' is not finite.", path)
    return value


def _index_cell(text: str, path: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ConfigError(f"'{text.strip()}' is not an integer index.", path)
    return _as_index(value, path)


def _decay_spec(model: DecayModel) -> Dict[str, Any]:
    return {"kind": model.kind, "constant": model.constant, "exponent": model.exponent,
            "ratio": model.ratio, "q": model.q}

