"""Evaluator for parsed queries against a PropertyGraph.

Matching walks each linear pattern from its cheapest anchor node
(bound variable, name index hit, label scan, full scan, in that
order).  A relationship binds at most once per query; node variables
may rebind freely.  Result rows come out in ascending order of the
bound entity ids, pattern element by pattern element, so repeated
runs are byte-identical without ORDER BY.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from ..graph import GraphEdge, GraphNode, NodeCategory, PropertyGraph, get_node
from .ast import (
    AliasRef,
    BoolOp,
    Comparison,
    CountExpr,
    CypherQuery,
    Expr,
    Literal,
    MatchPattern,
    NodePattern,
    NotOp,
    NullCheck,
    PropertyRef,
    RelPattern,
    VarRef,
    render_expr,
)
from .errors import EvaluationError
from .parser import parse

Entity = Union[GraphNode, GraphEdge]
Env = dict


@dataclass
class ResultTable:
    columns: List[str]
    rows: List[List[object]]

    def to_dicts(self) -> List[dict]:
        return [dict(zip(self.columns, row)) for row in self.rows]

    def __len__(self) -> int:
        return len(self.rows)


# value semantics


def _parse_number(text: str) -> Optional[float]:
    try:
        value = float(text)
    except ValueError:
        return None
    # treat 'nan'/'inf' spellings as plain text
    return value if math.isfinite(value) else None


def _ordered(op: str, left, right) -> bool:
    if op == "=":
        return left == right
    if op == "<>":
        return left != right
    if op == "<":
        return left < right
    if op == "<=":
        return left <= right
    if op == ">":
        return left > right
    if op == ">=":
        return left >= right
    raise EvaluationError(f"unknown comparison operator {op!r}")


def compare(op: str, left, right) -> bool:
    """Three-valued-logic comparison collapsed to bool: any test
    against an absent value is False (except that <> against an
    unparsable text stays True for present values, see below)."""
    if left is None or right is None:
        return False
    if op == "CONTAINS":
        return (
            isinstance(left, str)
            and isinstance(right, str)
            and right in left
        )
    left_bool = isinstance(left, bool)
    right_bool = isinstance(right, bool)
    if left_bool or right_bool:
        if left_bool and right_bool:
            if op == "=":
                return left == right
            if op == "<>":
                return left != right
            return False
        return op == "<>"
    left_num = isinstance(left, (int, float))
    right_num = isinstance(right, (int, float))
    if left_num and right_num:
        return _ordered(op, left, right)
    if isinstance(left, str) and isinstance(right, str):
        return _ordered(op, left, right)
    # mixed number and text: compare numerically when the text parses,
    # otherwise only <> holds
    if left_num:
        parsed = _parse_number(right)
        return _ordered(op, left, parsed) if parsed is not None else op == "<>"
    parsed = _parse_number(left)
    return _ordered(op, parsed, right) if parsed is not None else op == "<>"


def _prop(entity: Entity, key: str):
    if isinstance(entity, GraphNode):
        return entity.attrs.get(key)
    if key == "rel_value":
        return entity.rel_value
    if key == "etype":
        return entity.etype.value
    return None


def _evaluate(expr: Expr, env: Env):
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, PropertyRef):
        return _prop(env[expr.var], expr.key)
    if isinstance(expr, VarRef):
        return env[expr.name]
    if isinstance(expr, Comparison):
        return compare(expr.op, _evaluate(expr.left, env), _evaluate(expr.right, env))
    if isinstance(expr, NullCheck):
        value = _evaluate(expr.operand, env)
        return (value is not None) if expr.negated else (value is None)
    if isinstance(expr, BoolOp):
        if expr.op == "AND":
            return all(_evaluate(item, env) is True for item in expr.items)
        return any(_evaluate(item, env) is True for item in expr.items)
    if isinstance(expr, NotOp):
        return _evaluate(expr.operand, env) is not True
    if isinstance(expr, CountExpr):
        raise EvaluationError("count() outside of projection")
    raise EvaluationError(f"cannot evaluate {type(expr).__name__}")


# pattern matching


def _node_ok(node: GraphNode, np: NodePattern, env: Env) -> bool:
    if np.var and np.var in env and env[np.var].id != node.id:
        return False
    if np.label is not None and node.cate.value != np.label:
        return False
    for key, lit in np.props:
        if not compare("=", node.attrs.get(key), lit.value):
            return False
    return True


def _rel_ok(edge: GraphEdge, rp: RelPattern, used: set) -> bool:
    if edge.id in used:
        return False
    if rp.rtype is not None and edge.etype.value != rp.rtype:
        return False
    for key, lit in rp.props:
        if not compare("=", _prop(edge, key), lit.value):
            return False
    return True


def _name_literal(np: NodePattern) -> Optional[str]:
    for key, lit in np.props:
        if key == "name" and isinstance(lit.value, str):
            return lit.value
    return None


def _anchor_cost(g: PropertyGraph, np: NodePattern, env: Env) -> int:
    if np.var and np.var in env:
        return 0
    if np.label is not None:
        try:
            cate = NodeCategory(np.label)
        except ValueError:
            return 0
        if _name_literal(np) is not None:
            return 1
        return len(g.nodes_in_category(cate))
    return len(g.nodes)


def _anchor_candidates(g: PropertyGraph, np: NodePattern, env: Env) -> List[GraphNode]:
    if np.var and np.var in env:
        bound = env[np.var]
        return [bound] if isinstance(bound, GraphNode) else []
    if np.label is not None:
        try:
            cate = NodeCategory(np.label)
        except ValueError:
            return []
        name = _name_literal(np)
        if name is not None:
            node = get_node(g, cate, name)
            return [node] if node is not None else []
        return g.nodes_in_category(cate)
    return list(g.nodes.values())


def _neighbors(g: PropertyGraph, node: GraphNode, rel: RelPattern, forward: bool):
    """Candidate (edge, other node id) pairs for one chain step."""
    pairs: List[Tuple[GraphEdge, int]] = []
    toward_next = rel.direction == "out" if forward else rel.direction == "in"
    toward_prev = rel.direction == "in" if forward else rel.direction == "out"
    if toward_next or rel.direction == "undirected":
        for edge in g.out_edges(node.id):
            pairs.append((edge, edge.dst))
    if toward_prev or rel.direction == "undirected":
        for edge in g.in_edges(node.id):
            pairs.append((edge, edge.src))
    return pairs


_NO_EDGES: frozenset = frozenset()


def _match_pattern(
    g: PropertyGraph, pattern: MatchPattern, env: Env, used: frozenset,
    track_used: bool = True,
) -> Iterator[Tuple[Env, frozenset, Tuple[Entity, ...]]]:
    k = len(pattern.nodes)
    anchor = min(range(k), key=lambda i: _anchor_cost(g, pattern.nodes[i], env))

    def extend(idx_env: Env, idx_used: set, ents: list, lo: int, hi: int):
        if lo == 0 and hi == k - 1:
            # idx_env is freshly built per candidate, safe to hand out
            done = frozenset(idx_used) if track_used else _NO_EDGES
            yield idx_env, done, tuple(ents)
            return
        if hi < k - 1:
            rel, np_next = pattern.rels[hi], pattern.nodes[hi + 1]
            here: GraphNode = ents[2 * hi]
            for edge, other_id in _neighbors(g, here, rel, forward=True):
                if not _rel_ok(edge, rel, idx_used):
                    continue
                other = g.node(other_id)
                if not _node_ok(other, np_next, idx_env):
                    continue
                env2 = dict(idx_env)
                if rel.var:
                    env2[rel.var] = edge
                if np_next.var:
                    env2[np_next.var] = other
                ents[2 * hi + 1] = edge
                ents[2 * hi + 2] = other
                idx_used.add(edge.id)
                yield from extend(env2, idx_used, ents, lo, hi + 1)
                idx_used.discard(edge.id)
            return
        rel, np_prev = pattern.rels[lo - 1], pattern.nodes[lo - 1]
        here = ents[2 * lo]
        for edge, other_id in _neighbors(g, here, rel, forward=False):
            if not _rel_ok(edge, rel, idx_used):
                continue
            other = g.node(other_id)
            if not _node_ok(other, np_prev, idx_env):
                continue
            env2 = dict(idx_env)
            if rel.var:
                env2[rel.var] = edge
            if np_prev.var:
                env2[np_prev.var] = other
            ents[2 * lo - 1] = edge
            ents[2 * lo - 2] = other
            idx_used.add(edge.id)
            yield from extend(env2, idx_used, ents, lo - 1, hi)
            idx_used.discard(edge.id)

    np0 = pattern.nodes[anchor]
    for start in _anchor_candidates(g, np0, env):
        if not _node_ok(start, np0, env):
            continue
        env1 = dict(env)
        if np0.var:
            env1[np0.var] = start
        ents: list = [None] * (2 * k - 1)
        ents[2 * anchor] = start
        yield from extend(env1, set(used), ents, anchor, anchor)


def _bindings(g: PropertyGraph, query: CypherQuery) -> List[Tuple[Env, Tuple[int, ...]]]:
    states: List[Tuple[Env, frozenset, Tuple[Entity, ...]]] = [({}, frozenset(), ())]
    for index, pattern in enumerate(query.patterns):
        last = index == len(query.patterns) - 1
        nxt = []
        for env, used, ents in states:
            for env2, used2, ents2 in _match_pattern(g, pattern, env, used,
                                                     track_used=not last):
                nxt.append((env2, used2, ents + ents2))
        states = nxt
        if not states:
            break
    keyed = [(env, tuple(e.id for e in ents)) for env, _, ents in states]
    keyed.sort(key=lambda pair: pair[1])
    return keyed


# projection


def _sort_value(value) -> tuple:
    if value is None:
        return (3, 0)
    if isinstance(value, bool):
        return (2, value)
    if isinstance(value, (int, float)):
        return (0, value)
    return (1, value)


def _column_index(query: CypherQuery, item_expr, aliases: List[Optional[str]]) -> Optional[int]:
    if isinstance(item_expr, AliasRef):
        for i, alias in enumerate(aliases):
            if alias == item_expr.name:
                return i
        return None
    for i, ret in enumerate(query.return_items):
        if ret.expr == item_expr:
            return i
    return None


def execute(g: PropertyGraph, query: Union[str, CypherQuery]) -> ResultTable:
    if isinstance(query, str):
        query = parse(query)
    bindings = _bindings(g, query)
    if query.where is not None:
        bindings = [b for b in bindings if _evaluate(query.where, b[0]) is True]

    items = query.return_items
    columns = [item.alias or render_expr(item.expr) for item in items]
    aliases = [item.alias for item in items]
    aggregated = any(isinstance(item.expr, CountExpr) for item in items)

    # without grouping, dedup or an explicit order, rows follow binding
    # order, so the limit can cut before the projection work happens
    if (query.limit is not None and not aggregated and not query.distinct
            and not query.order_by):
        bindings = bindings[: query.limit]

    records: List[Tuple[Optional[Env], List[object]]]
    if aggregated:
        plain = [i for i, item in enumerate(items) if not isinstance(item.expr, CountExpr)]
        groups: dict = {}
        for env, _ in bindings:
            key = tuple(_evaluate(items[i].expr, env) for i in plain)
            groups.setdefault(key, []).append(env)
        records = []
        for key, members in groups.items():
            row: List[object] = []
            plain_values = dict(zip(plain, key))
            for i, item in enumerate(items):
                if not isinstance(item.expr, CountExpr):
                    row.append(plain_values[i])
                elif item.expr.operand is None:
                    row.append(len(members))
                else:
                    op = item.expr.operand
                    row.append(sum(1 for env in members if _evaluate(op, env) is not None))
            records.append((None, row))
    else:
        records = [(env, [_evaluate(item.expr, env) for item in items]) for env, _ in bindings]

    if query.distinct:
        seen: dict = {}
        for env, row in records:
            seen.setdefault(tuple(row), (env, row))
        records = list(seen.values())

    if query.order_by:
        columns_only = aggregated or query.distinct
        for order in reversed(query.order_by):
            idx = _column_index(query, order.expr, aliases)
            if idx is None and isinstance(order.expr, AliasRef):
                raise EvaluationError(f"unknown ORDER BY alias {order.expr.name!r}")
            if idx is not None:
                key = lambda rec, i=idx: _sort_value(rec[1][i])
            elif columns_only:
                raise EvaluationError(
                    "ORDER BY must name a returned column when DISTINCT or count() is used"
                )
            else:
                key = lambda rec, e=order.expr: _sort_value(_evaluate(e, rec[0]))
            records.sort(key=key, reverse=not order.ascending)

    rows = [row for _, row in records]
    if query.limit is not None:
        rows = rows[: query.limit]
    return ResultTable(columns=columns, rows=rows)


def format_results(table: ResultTable, max_rows: int = 20) -> str:
    """Stable single-line rendering used in prompts and logs: a list of
    dicts keyed by column name, absent cells shown as ''."""
    shown = [
        {col: ("" if cell is None else cell) for col, cell in zip(table.columns, row)}
        for row in table.rows[:max_rows]
    ]
    text = repr(shown)
    extra = len(table.rows) - len(shown)
    if extra > 0:
        text += f" (+{extra} more rows)"
    return text
