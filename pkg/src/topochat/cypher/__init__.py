"""Read-only Cypher subset: parser, canonical renderer, executor."""

from .ast import (
    AliasRef,
    BoolOp,
    Comparison,
    CountExpr,
    CypherQuery,
    Literal,
    MatchPattern,
    NodePattern,
    NotOp,
    NullCheck,
    OrderItem,
    PropertyRef,
    RelPattern,
    ReturnItem,
    VarRef,
    render,
    render_expr,
)
from .errors import (
    CypherError,
    CypherSyntaxError,
    EvaluationError,
    UnboundVariableError,
    UnsupportedFeatureError,
)
from .executor import ResultTable, compare, execute, format_results
from .parser import parse

__all__ = [
    "AliasRef",
    "BoolOp",
    "Comparison",
    "CountExpr",
    "CypherError",
    "CypherQuery",
    "CypherSyntaxError",
    "EvaluationError",
    "Literal",
    "MatchPattern",
    "NodePattern",
    "NotOp",
    "NullCheck",
    "OrderItem",
    "PropertyRef",
    "RelPattern",
    "ResultTable",
    "ReturnItem",
    "UnboundVariableError",
    "UnsupportedFeatureError",
    "VarRef",
    "compare",
    "execute",
    "format_results",
    "parse",
    "render",
    "render_expr",
]
