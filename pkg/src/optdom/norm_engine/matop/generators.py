"""
Built-in infinite matrices.

Each factory returns a MatrixOperator whose entry generator is a closure;
analytic metadata (extents, tail and decay models) is attached when the
closed form is known.
"""

import ast
import logging
import math
import operator
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from optdom.norm_engine.entities.decay_model import DecayModel
from optdom.norm_engine.entities.matrix_operator import MatrixOperator
from optdom.norm_engine.entities.weights import WeightSequence
from optdom.norm_engine.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

BUILTIN_KINDS = ("identity", "diagonal", "cesaro", "hilbert", "dense", "expr")


def identity() -> MatrixOperator:
    return MatrixOperator(
        name="identity",
        entry=lambda i, j: 1.0 if i == j else 0.0,
        nonnegative=True,
        column_extent=lambda j: j,
        row_extent=lambda i: i,
        spec={"kind": "identity", "params": {}},
    )


def diagonal(d: WeightSequence, column_decay: Optional[DecayModel] = None) -> MatrixOperator:
    """a_jj = d_j (strictly positive), zero elsewhere."""
    return MatrixOperator(
        name="diagonal",
        entry=lambda i, j: d(j) if i == j else 0.0,
        nonnegative=True,
        column_decay=column_decay,
        column_extent=lambda j: j,
        row_extent=lambda i: i,
        spec={"kind": "diagonal", "params": {"d": _weights_spec(d)}},
    )


def cesaro(tail_q: Optional[float] = 2.0) -> MatrixOperator:
    """a_ij = 1/i for j <= i, 0 otherwise."""
    tail, decay = _harmonic_models(tail_q)
    return MatrixOperator(
        name="cesaro",
        entry=lambda i, j: 1.0 / i if j <= i else 0.0,
        nonnegative=True,
        column_tail=tail,
        column_decay=decay,
        row_extent=lambda i: i,
        spec={"kind": "cesaro", "params": {"tail_q": tail_q}},
    )


def hilbert(tail_q: Optional[float] = 2.0) -> MatrixOperator:
    """a_ij = 1/(i + j - 1)."""
    tail, decay = _harmonic_models(tail_q)
    return MatrixOperator(
        name="hilbert",
        entry=lambda i, j: 1.0 / (i + j - 1),
        nonnegative=True,
        column_tail=tail,
        column_decay=decay,
        spec={"kind": "hilbert", "params": {"tail_q": tail_q}},
    )


def dense(rows: Sequence[Sequence[float]], nonnegative: Optional[bool] = None,
          name: str = "dense") -> MatrixOperator:
    """
    Finite block padded with zeros.

    `nonnegative=None` declares the sign from the data.
    """
    block = [[float(v) for v in row] for row in rows]
    if not block or not block[0]:
        raise InvalidArgumentError("Dense matrix block must not be empty.")
    width = len(block[0])
    if any(len(row) != width for row in block):
        raise InvalidArgumentError("Dense matrix rows must all have the same length.")
    if any(not math.isfinite(v) for row in block for v in row):
        raise InvalidArgumentError("Dense matrix entries must be finite.")
    height = len(block)

    last_row = [0] * width
    last_col = [0] * height
    for i, row in enumerate(block, start=1):
        for j, v in enumerate(row, start=1):
            if v != 0.0:
                last_row[j - 1] = i
                last_col[i - 1] = j

    def entry(i: int, j: int) -> float:
        if i > height or j > width:
            return 0.0
        return block[i - 1][j - 1]

    declared = all(v >= 0 for row in block for v in row) if nonnegative is None else nonnegative
    return MatrixOperator(
        name=name,
        entry=entry,
        nonnegative=declared,
        column_extent=lambda j: last_row[j - 1] if j <= width else 0,
        row_extent=lambda i: last_col[i - 1] if i <= height else 0,
        spec={"kind": "dense", "params": {"rows": block}},
    )


def from_triples(triples: Sequence[Tuple[int, int, float]], nonnegative: Optional[bool] = None) -> MatrixOperator:
    """Sparse (i, j, value) triples, 1-based; duplicates are summed."""
    if not triples:
        raise InvalidArgumentError("Sparse matrix needs at least one (i, j, value) triple.")
    height = max(int(i) for i, _, _ in triples)
    width = max(int(j) for _, j, _ in triples)
    rows = [[0.0] * width for _ in range(height)]
    for i, j, v in triples:
        if i < 1 or j < 1:
            raise InvalidArgumentError(f"Triple indices must be >= 1, got ({i}, {j}).")
        rows[int(i) - 1][int(j) - 1] += float(v)
    return dense(rows, nonnegative=nonnegative)


def expr(expression: str, nonnegative: bool = False, column_extent: Optional[str] = None,
         row_extent: Optional[str] = None, column_tail: Optional[DecayModel] = None,
         column_decay: Optional[DecayModel] = None, row_decay: Optional[DecayModel] = None) -> MatrixOperator:
    """
    Entries given by an arithmetic expression in i and j, e.g.
    "2**(-i) if j <= i else 0". Extents are expressions in j (resp. i).
    """
    entry_fn = compile_expression(expression, ("i", "j"))
    col_fn = _extent(column_extent, "j")
    row_fn = _extent(row_extent, "i")
    params: Dict[str, Any] = {"expression": expression}
    if column_extent is not None:
        params["column_extent"] = column_extent
    if row_extent is not None:
        params["row_extent"] = row_extent
    return MatrixOperator(
        name="expr",
        entry=lambda i, j: entry_fn(i=i, j=j),
        nonnegative=nonnegative,
        column_tail=column_tail,
        column_decay=column_decay,
        row_decay=row_decay,
        column_extent=col_fn,
        row_extent=row_fn,
        spec={"kind": "expr", "params": params},
    )


# --- expression compiler ---

_FUNCTIONS: Dict[str, Callable] = {
    "abs": abs,
    "min": min,
    "max": max,
    "sqrt": math.sqrt,
    "exp": math.exp,
    "log": math.log,
    "sin": math.sin,
    "cos": math.cos,
    "floor": math.floor,
    "ceil": math.ceil,
}
_CONSTANTS = {"pi": math.pi, "e": math.e}
_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    # floats only: integer powers of literals grow without bound
    ast.Pow: math.pow,
}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos, ast.Not: operator.not_}
_COMPARE = {
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
}


class _ExpressionEvaluator(ast.NodeVisitor):
    """Evaluates a parsed expression, rejecting every node outside the whitelist."""

    def __init__(self, variables: Dict[str, float]):
        self.variables = variables

    def generic_visit(self, node):
        raise InvalidArgumentError(f"Expression element '{type(node).__name__}' is not allowed.")

    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise InvalidArgumentError(f"Constant {node.value!r} is not a number.")
        return node.value

    def visit_Name(self, node):
        if node.id in self.variables:
            return self.variables[node.id]
        if node.id in _CONSTANTS:
            return _CONSTANTS[node.id]
        raise InvalidArgumentError(f"Unknown name '{node.id}' in expression.")

    def visit_BinOp(self, node):
        op = _BINOPS.get(type(node.op))
        if op is None:
            raise InvalidArgumentError(f"Operator '{type(node.op).__name__}' is not allowed.")
        return op(self.visit(node.left), self.visit(node.right))

    def visit_UnaryOp(self, node):
        op = _UNARY.get(type(node.op))
        if op is None:
            raise InvalidArgumentError(f"Operator '{type(node.op).__name__}' is not allowed.")
        return op(self.visit(node.operand))

    def visit_BoolOp(self, node):
        values = [self.visit(v) for v in node.values]
        if isinstance(node.op, ast.And):
            return all(values)
        return any(values)

    def visit_Compare(self, node):
        left = self.visit(node.left)
        for op_node, comparator in zip(node.ops, node.comparators):
            op = _COMPARE.get(type(op_node))
            if op is None:
                raise InvalidArgumentError(f"Comparison '{type(op_node).__name__}' is not allowed.")
            right = self.visit(comparator)
            if not op(left, right):
                return False
            left = right
        return True

    def visit_IfExp(self, node):
        return self.visit(node.body) if self.visit(node.test) else self.visit(node.orelse)

    def visit_Call(self, node):
        if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCTIONS or node.keywords:
            raise InvalidArgumentError("Only whitelisted functions may be called in expressions.")
        return _FUNCTIONS[node.func.id](*[self.visit(arg) for arg in node.args])


def compile_expression(expression: str, variables: Sequence[str]) -> Callable[..., float]:
    """Parse once, validate the names, return a keyword-argument evaluator."""
    try:
        tree = ast.parse(expression, mode="eval")
    except SyntaxError as exc:
        raise InvalidArgumentError(f"Invalid expression '{expression}': {exc.msg}.") from exc
    _validate_nodes(tree)
    allowed = set(variables) | set(_CONSTANTS) | set(_FUNCTIONS)
    for node in ast.walk(tree):
        if isinstance(node, ast.Name) and node.id not in allowed:
            raise InvalidArgumentError(f"Unknown name '{node.id}' in expression '{expression}'.")

    def evaluate(**values: float) -> float:
        try:
            result = _ExpressionEvaluator(values).visit(tree)
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            if isinstance(exc, InvalidArgumentError):
                raise
            raise InvalidArgumentError(f"Expression '{expression}' failed at {values}: {exc}.") from exc
        return float(result)

    return evaluate


def _validate_nodes(tree: ast.AST) -> None:
    """Reject non-whitelisted node kinds before any evaluation."""
    for node in ast.walk(tree):
        if isinstance(node, (ast.expr_context, ast.operator, ast.unaryop, ast.cmpop, ast.boolop)):
            continue
        if not hasattr(_ExpressionEvaluator, f"visit_{type(node).__name__}"):
            raise InvalidArgumentError(f"Expression element '{type(node).__name__}' is not allowed.")


def _extent(expression: Optional[str], variable: str) -> Optional[Callable[[int], int]]:
    if expression is None:
        return None
    fn = compile_expression(expression, (variable,))
    return lambda k: int(math.floor(fn(**{variable: k})))


def _harmonic_models(tail_q: Optional[float]) -> Tuple[Optional[DecayModel], Optional[DecayModel]]:
    """
    Columns dominated by (1/i)_{i >= j} in ℓ^q, q > 1:
    tail below row n <= (1/(q-1))^{1/q}·n^{-(q-1)/q},
    ‖C_j‖_q <= (q/(q-1))^{1/q}·j^{-(q-1)/q}.
    """
    if tail_q is None:
        return None, None
    q = float(tail_q)
    if not q > 1 or math.isinf(q):
        raise InvalidArgumentError(f"tail_q must be finite and > 1, got {tail_q}.")
    exponent = (q - 1.0) / q
    tail = DecayModel("power_decay", (1.0 / (q - 1.0)) ** (1.0 / q), exponent=exponent, q=q)
    decay = DecayModel("power_decay", (q / (q - 1.0)) ** (1.0 / q), exponent=exponent, q=q)
    return tail, decay


def _weights_spec(d: WeightSequence) -> Dict[str, Any]:
    if d.kind == "explicit":
        return {"kind": "explicit", "values": list(d.values)}
    if d.kind == "geometric":
        return {"kind": "geometric", "constant": d.constant, "ratio": d.ratio}
    return {"kind": "power_decay", "constant": d.constant, "exponent": d.exponent}


def builtin_spec(kind: str) -> Dict[str, Any]:
    """Sample JSON spec of a built-in matrix (used by `optdom generate`)."""
    samples: Dict[str, Dict[str, Any]] = {
        "identity": {"kind": "identity", "params": {}},
        "diagonal": {"kind": "diagonal", "params": {"d": {"kind": "geometric", "constant": 0.5, "ratio": 0.5}}},
        "cesaro": {"kind": "cesaro", "params": {"tail_q": 2.0}},
        "hilbert": {"kind": "hilbert", "params": {"tail_q": 2.0}},
        "dense": {"kind": "dense", "params": {"rows": [[1.0, 0.5], [0.0, 1.0]]}},
        "expr": {"kind": "expr", "params": {"expression": "2**(-i) if j <= i else 0", "row_extent": "i"},
                 "nonnegative": True},
    }
    if kind not in samples:
        raise InvalidArgumentError(f"Unknown built-in matrix '{kind}'; expected one of {', '.join(BUILTIN_KINDS)}.")
    return samples[kind]
