"""Syntax tree for the read-only Cypher subset.

All nodes are frozen dataclasses so parsed queries can be compared
structurally and used as dict keys.  ``render()`` produces canonical
text that parses back to an equal tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

Scalar = Union[str, int, float, bool]


@dataclass(frozen=True)
class Literal:
    value: Scalar


@dataclass(frozen=True)
class PropertyRef:
    var: str
    key: str


@dataclass(frozen=True)
class VarRef:
    """Bare variable reference; only legal inside count()."""

    name: str


@dataclass(frozen=True)
class Comparison:
    # op is one of = <> < <= > >= CONTAINS
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class NullCheck:
    operand: "Expr"
    negated: bool = False


@dataclass(frozen=True)
class BoolOp:
    # op is AND or OR; items has at least two entries
    op: str
    items: Tuple["Expr", ...]


@dataclass(frozen=True)
class NotOp:
    operand: "Expr"


@dataclass(frozen=True)
class CountExpr:
    # None means count(*)
    operand: Optional["Expr"] = None


Expr = Union[Literal, PropertyRef, VarRef, Comparison, NullCheck, BoolOp, NotOp, CountExpr]


@dataclass(frozen=True)
class NodePattern:
    var: Optional[str] = None
    label: Optional[str] = None
    props: Tuple[Tuple[str, Literal], ...] = ()


@dataclass(frozen=True)
class RelPattern:
    var: Optional[str] = None
    rtype: Optional[str] = None
    props: Tuple[Tuple[str, Literal], ...] = ()
    direction: str = "out"  # out, in, or undirected


@dataclass(frozen=True)
class MatchPattern:
    """Linear chain: nodes[0] -rels[0]- nodes[1] -rels[1]- ..."""

    nodes: Tuple[NodePattern, ...]
    rels: Tuple[RelPattern, ...] = ()

    def __post_init__(self):
        if len(self.nodes) != len(self.rels) + 1:
            raise ValueError("pattern must alternate nodes and relationships")


@dataclass(frozen=True)
class ReturnItem:
    expr: Expr
    alias: Optional[str] = None


@dataclass(frozen=True)
class OrderItem:
    # expr may be an AliasRef naming a RETURN alias
    expr: Union[Expr, "AliasRef"]
    ascending: bool = True


@dataclass(frozen=True)
class AliasRef:
    """ORDER BY reference to a projected column by its alias."""

    name: str


@dataclass(frozen=True)
class CypherQuery:
    patterns: Tuple[MatchPattern, ...]
    return_items: Tuple[ReturnItem, ...]
    where: Optional[Expr] = None
    distinct: bool = False
    order_by: Tuple[OrderItem, ...] = ()
    limit: Optional[int] = None


def _quote(text: str) -> str:
    return "'" + text.replace("\\", "\\\\").replace("'", "\\'") + "'"


def render_expr(expr: Union[Expr, AliasRef]) -> str:
    if isinstance(expr, Literal):
        v = expr.value
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, str):
            return _quote(v)
        return repr(v)
    if isinstance(expr, PropertyRef):
        return f"{expr.var}.{expr.key}"
    if isinstance(expr, VarRef):
        return expr.name
    if isinstance(expr, AliasRef):
        return expr.name
    if isinstance(expr, Comparison):
        return f"{render_expr(expr.left)} {expr.op} {render_expr(expr.right)}"
    if isinstance(expr, NullCheck):
        suffix = "IS NOT NULL" if expr.negated else "IS NULL"
        return f"{render_expr(expr.operand)} {suffix}"
    if isinstance(expr, BoolOp):
        sep = f" {expr.op} "
        return "(" + sep.join(render_expr(item) for item in expr.items) + ")"
    if isinstance(expr, NotOp):
        inner = render_expr(expr.operand)
        if isinstance(expr.operand, (Comparison, NullCheck)):
            inner = f"({inner})"
        return f"NOT {inner}"
    if isinstance(expr, CountExpr):
        if expr.operand is None:
            return "count(*)"
        return f"count({render_expr(expr.operand)})"
    raise TypeError(f"cannot render {type(expr).__name__}")


def _render_props(props: Tuple[Tuple[str, Literal], ...]) -> str:
    if not props:
        return ""
    body = ", ".join(f"{k}: {render_expr(v)}" for k, v in props)
    return "{" + body + "}"


def _render_node(node: NodePattern) -> str:
    parts = node.var or ""
    if node.label:
        parts += f":{node.label}"
    props = _render_props(node.props)
    if props:
        parts += (" " if parts else "") + props
    return f"({parts})"


def _render_rel(rel: RelPattern) -> str:
    body = rel.var or ""
    if rel.rtype:
        body += f":{rel.rtype}"
    props = _render_props(rel.props)
    if props:
        body += (" " if body else "") + props
    core = f"[{body}]" if body else ""
    if rel.direction == "out":
        return f"-{core}->"
    if rel.direction == "in":
        return f"<-{core}-"
    return f"-{core}-"


def render_pattern(pattern: MatchPattern) -> str:
    out = [_render_node(pattern.nodes[0])]
    for rel, node in zip(pattern.rels, pattern.nodes[1:]):
        out.append(_render_rel(rel))
        out.append(_render_node(node))
    return "".join(out)


def render(query: CypherQuery) -> str:
    parts = ["MATCH " + ", ".join(render_pattern(p) for p in query.patterns)]
    if query.where is not None:
        parts.append("WHERE " + render_expr(query.where))
    items = []
    for item in query.return_items:
        text = render_expr(item.expr)
        if item.alias:
            text += f" AS {item.alias}"
        items.append(text)
    head = "RETURN DISTINCT " if query.distinct else "RETURN "
    parts.append(head + ", ".join(items))
    if query.order_by:
        keys = ", ".join(
            render_expr(o.expr) + ("" if o.ascending else " DESC") for o in query.order_by
        )
        parts.append("ORDER BY " + keys)
    if query.limit is not None:
        parts.append(f"LIMIT {query.limit}")
    return " ".join(parts)
