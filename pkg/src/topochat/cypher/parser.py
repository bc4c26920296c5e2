"""Recursive-descent parser for the read-only Cypher subset."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

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
    OrderItem,
    PropertyRef,
    RelPattern,
    ReturnItem,
    VarRef,
    render,
)
from .errors import CypherSyntaxError, UnboundVariableError, UnsupportedFeatureError

__all__ = ["parse", "render"]

_KEYWORDS = {
    "MATCH", "WHERE", "RETURN", "AS", "DISTINCT", "ORDER", "BY", "LIMIT",
    "AND", "OR", "NOT", "CONTAINS", "IS", "NULL", "COUNT", "ASC", "DESC",
    "TRUE", "FALSE",
}

# write clauses and read features outside the subset
_UNSUPPORTED = {
    "CREATE", "MERGE", "DELETE", "DETACH", "SET", "REMOVE", "WITH",
    "UNWIND", "CALL", "OPTIONAL", "UNION", "FOREACH", "LOAD", "USING",
    "SKIP", "EXISTS", "CASE",
}

_PUNCT_TWO = ("<=", ">=", "<>")
_PUNCT_ONE = "()[]{}:,.=<>-*"


@dataclass
class _Token:
    kind: str  # IDENT, STRING, NUMBER, PUNCT, EOF
    value: Union[str, int, float]
    pos: int

    @property
    def keyword(self) -> Optional[str]:
        if self.kind == "IDENT" and str(self.value).upper() in _KEYWORDS:
            return str(self.value).upper()
        return None


def _tokenize(text: str) -> List[_Token]:
    out: List[_Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if text[i : i + 2] in _PUNCT_TWO:
            out.append(_Token("PUNCT", text[i : i + 2], i))
            i += 2
            continue
        if c in ("'", '"'):
            j = i + 1
            buf = []
            while j < n and text[j] != c:
                if text[j] == "\\" and j + 1 < n:
                    buf.append(text[j + 1])
                    j += 2
                else:
                    buf.append(text[j])
                    j += 1
            if j >= n:
                raise CypherSyntaxError(i, "closing quote")
            out.append(_Token("STRING", "".join(buf), i))
            i = j + 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            is_float = False
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                is_float = True
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    is_float = True
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            raw = text[i:j]
            out.append(_Token("NUMBER", float(raw) if is_float else int(raw), i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(_Token("IDENT", text[i:j], i))
            i = j
            continue
        if c in _PUNCT_ONE:
            out.append(_Token("PUNCT", c, i))
            i += 1
            continue
        raise CypherSyntaxError(i, f"a valid token, not {c!r}")
    out.append(_Token("EOF", "", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def _peek(self, ahead: int = 0) -> _Token:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def _next(self) -> _Token:
        tok = self.toks[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def _at_punct(self, value: str) -> bool:
        tok = self._peek()
        return tok.kind == "PUNCT" and tok.value == value

    def _at_keyword(self, word: str) -> bool:
        return self._peek().keyword == word

    def _eat_punct(self, value: str) -> _Token:
        if not self._at_punct(value):
            raise CypherSyntaxError(self._peek().pos, f"{value!r}")
        return self._next()

    def _eat_keyword(self, word: str) -> _Token:
        if not self._at_keyword(word):
            self._reject_unsupported()
            raise CypherSyntaxError(self._peek().pos, word)
        return self._next()

    def _eat_ident(self, what: str) -> str:
        tok = self._peek()
        if tok.kind != "IDENT" or tok.keyword is not None:
            raise CypherSyntaxError(tok.pos, what)
        self._next()
        return str(tok.value)

    def _reject_unsupported(self):
        tok = self._peek()
        if tok.kind == "IDENT" and str(tok.value).upper() in _UNSUPPORTED:
            raise UnsupportedFeatureError(str(tok.value).upper())

    # patterns

    def _parse_props(self) -> Tuple[Tuple[str, Literal], ...]:
        if not self._at_punct("{"):
            return ()
        self._next()
        props = []
        while True:
            key = self._eat_ident("a property name")
            self._eat_punct(":")
            props.append((key, self._parse_literal()))
            if self._at_punct(","):
                self._next()
                continue
            break
        self._eat_punct("}")
        return tuple(props)

    def _parse_literal(self) -> Literal:
        tok = self._peek()
        if tok.kind == "STRING":
            self._next()
            return Literal(str(tok.value))
        if tok.kind == "NUMBER":
            self._next()
            return Literal(tok.value)
        if self._at_punct("-"):
            self._next()
            num = self._peek()
            if num.kind != "NUMBER":
                raise CypherSyntaxError(num.pos, "a number")
            self._next()
            return Literal(-num.value)
        if tok.keyword == "TRUE":
            self._next()
            return Literal(True)
        if tok.keyword == "FALSE":
            self._next()
            return Literal(False)
        raise CypherSyntaxError(tok.pos, "a literal value")

    def _parse_node(self) -> NodePattern:
        self._eat_punct("(")
        var = None
        label = None
        tok = self._peek()
        if tok.kind == "IDENT" and tok.keyword is None:
            var = str(tok.value)
            self._next()
        if self._at_punct(":"):
            self._next()
            label = self._eat_ident("a node label")
        props = self._parse_props()
        self._eat_punct(")")
        return NodePattern(var=var, label=label, props=props)

    def _parse_rel_detail(self) -> Tuple[Optional[str], Optional[str], Tuple]:
        if not self._at_punct("["):
            return None, None, ()
        self._next()
        var = None
        rtype = None
        tok = self._peek()
        if tok.kind == "IDENT" and tok.keyword is None:
            var = str(tok.value)
            self._next()
        if self._at_punct(":"):
            self._next()
            rtype = self._eat_ident("a relationship type")
        if self._at_punct("*"):
            raise UnsupportedFeatureError("variable-length relationship")
        props = self._parse_props()
        self._eat_punct("]")
        return var, rtype, props

    def _parse_pattern(self) -> MatchPattern:
        nodes = [self._parse_node()]
        rels = []
        while self._at_punct("-") or self._at_punct("<"):
            if self._at_punct("<"):
                self._next()
                self._eat_punct("-")
                var, rtype, props = self._parse_rel_detail()
                self._eat_punct("-")
                direction = "in"
            else:
                self._next()
                var, rtype, props = self._parse_rel_detail()
                self._eat_punct("-")
                if self._at_punct(">"):
                    self._next()
                    direction = "out"
                else:
                    direction = "undirected"
            rels.append(RelPattern(var=var, rtype=rtype, props=props, direction=direction))
            nodes.append(self._parse_node())
        return MatchPattern(nodes=tuple(nodes), rels=tuple(rels))

    # expressions

    def _parse_expr(self) -> Expr:
        return self._parse_or()

    def _parse_or(self) -> Expr:
        items = [self._parse_and()]
        while self._at_keyword("OR"):
            self._next()
            items.append(self._parse_and())
        if len(items) == 1:
            return items[0]
        return BoolOp("OR", tuple(items))

    def _parse_and(self) -> Expr:
        items = [self._parse_not()]
        while self._at_keyword("AND"):
            self._next()
            items.append(self._parse_not())
        if len(items) == 1:
            return items[0]
        return BoolOp("AND", tuple(items))

    def _parse_not(self) -> Expr:
        if self._at_keyword("NOT"):
            self._next()
            return NotOp(self._parse_not())
        return self._parse_comparison()

    def _parse_comparison(self) -> Expr:
        left = self._parse_primary()
        tok = self._peek()
        if tok.kind == "PUNCT" and tok.value in ("=", "<>", "<", "<=", ">", ">="):
            self._next()
            return Comparison(str(tok.value), left, self._parse_primary())
        if tok.keyword == "CONTAINS":
            self._next()
            return Comparison("CONTAINS", left, self._parse_primary())
        if tok.keyword == "IS":
            self._next()
            negated = False
            if self._at_keyword("NOT"):
                self._next()
                negated = True
            self._eat_keyword("NULL")
            return NullCheck(left, negated=negated)
        return left

    def _parse_primary(self) -> Expr:
        tok = self._peek()
        if self._at_punct("("):
            self._next()
            inner = self._parse_expr()
            self._eat_punct(")")
            return inner
        if tok.keyword == "COUNT":
            self._next()
            self._eat_punct("(")
            if self._at_punct("*"):
                self._next()
                self._eat_punct(")")
                return CountExpr(None)
            operand = self._parse_count_operand()
            self._eat_punct(")")
            return CountExpr(operand)
        if tok.kind in ("STRING", "NUMBER") or tok.keyword in ("TRUE", "FALSE") or self._at_punct("-"):
            return self._parse_literal()
        if tok.keyword == "NULL":
            raise UnsupportedFeatureError("NULL literal")
        if tok.kind == "IDENT" and tok.keyword is None:
            var = str(tok.value)
            self._next()
            self._eat_punct(".")
            key = self._eat_ident("a property name")
            return PropertyRef(var, key)
        self._reject_unsupported()
        raise CypherSyntaxError(tok.pos, "an expression")

    def _parse_count_operand(self) -> Expr:
        tok = self._peek()
        if tok.kind == "IDENT" and tok.keyword is None and not (
            self._peek(1).kind == "PUNCT" and self._peek(1).value == "."
        ):
            self._next()
            return VarRef(str(tok.value))
        return self._parse_expr()

    # clauses

    def _parse_return_item(self) -> ReturnItem:
        if self._at_punct("*"):
            raise UnsupportedFeatureError("RETURN *")
        expr = self._parse_expr()
        alias = None
        if self._at_keyword("AS"):
            self._next()
            alias = self._eat_ident("an alias name")
        return ReturnItem(expr=expr, alias=alias)

    def _parse_order_item(self) -> OrderItem:
        tok = self._peek()
        if (
            tok.kind == "IDENT"
            and tok.keyword is None
            and not (self._peek(1).kind == "PUNCT" and self._peek(1).value == ".")
        ):
            self._next()
            expr: Union[Expr, AliasRef] = AliasRef(str(tok.value))
        else:
            expr = self._parse_expr()
        ascending = True
        if self._at_keyword("DESC"):
            self._next()
            ascending = False
        elif self._at_keyword("ASC"):
            self._next()
        return OrderItem(expr=expr, ascending=ascending)

    def parse_query(self) -> CypherQuery:
        self._reject_unsupported()
        self._eat_keyword("MATCH")
        patterns = [self._parse_pattern()]
        while True:
            if self._at_punct(","):
                self._next()
                patterns.append(self._parse_pattern())
                continue
            if self._at_keyword("MATCH"):
                self._next()
                patterns.append(self._parse_pattern())
                continue
            break
        where = None
        if self._at_keyword("WHERE"):
            self._next()
            where = self._parse_expr()
        self._reject_unsupported()
        self._eat_keyword("RETURN")
        distinct = False
        if self._at_keyword("DISTINCT"):
            self._next()
            distinct = True
        items = [self._parse_return_item()]
        while self._at_punct(","):
            self._next()
            items.append(self._parse_return_item())
        order_by: List[OrderItem] = []
        if self._at_keyword("ORDER"):
            self._next()
            self._eat_keyword("BY")
            order_by.append(self._parse_order_item())
            while self._at_punct(","):
                self._next()
                order_by.append(self._parse_order_item())
        limit = None
        if self._at_keyword("LIMIT"):
            self._next()
            tok = self._peek()
            if tok.kind != "NUMBER" or not isinstance(tok.value, int):
                raise CypherSyntaxError(tok.pos, "a non-negative integer")
            self._next()
            limit = tok.value
        tail = self._peek()
        if tail.kind != "EOF":
            self._reject_unsupported()
            raise CypherSyntaxError(tail.pos, "end of query")
        query = CypherQuery(
            patterns=tuple(patterns),
            return_items=tuple(items),
            where=where,
            distinct=distinct,
            order_by=tuple(order_by),
            limit=limit,
        )
        _check_semantics(query)
        return query


def _pattern_vars(query: CypherQuery) -> Tuple[set, set]:
    node_vars: set = set()
    rel_vars: set = set()
    for pattern in query.patterns:
        for node in pattern.nodes:
            if node.var:
                node_vars.add(node.var)
        for rel in pattern.rels:
            if rel.var:
                rel_vars.add(rel.var)
    return node_vars, rel_vars


def _walk_refs(expr: Union[Expr, AliasRef]):
    if isinstance(expr, (PropertyRef, VarRef, AliasRef)):
        yield expr
    elif isinstance(expr, Comparison):
        yield from _walk_refs(expr.left)
        yield from _walk_refs(expr.right)
    elif isinstance(expr, NullCheck):
        yield from _walk_refs(expr.operand)
    elif isinstance(expr, BoolOp):
        for item in expr.items:
            yield from _walk_refs(item)
    elif isinstance(expr, NotOp):
        yield from _walk_refs(expr.operand)
    elif isinstance(expr, CountExpr) and expr.operand is not None:
        yield from _walk_refs(expr.operand)


def _contains_count(expr: Union[Expr, AliasRef]) -> bool:
    if isinstance(expr, CountExpr):
        return True
    if isinstance(expr, Comparison):
        return _contains_count(expr.left) or _contains_count(expr.right)
    if isinstance(expr, (NullCheck, NotOp)):
        return _contains_count(expr.operand)
    if isinstance(expr, BoolOp):
        return any(_contains_count(item) for item in expr.items)
    return False


def _check_semantics(query: CypherQuery):
    node_vars, rel_vars = _pattern_vars(query)
    if node_vars & rel_vars:
        clash = sorted(node_vars & rel_vars)[0]
        raise CypherSyntaxError(0, f"distinct node and relationship variables (got {clash!r} as both)")
    # a relationship variable may appear on one relationship only
    seen_rels: set = set()
    for pattern in query.patterns:
        for rel in pattern.rels:
            if rel.var:
                if rel.var in seen_rels:
                    raise CypherSyntaxError(0, f"a unique relationship variable (got {rel.var!r} twice)")
                seen_rels.add(rel.var)
    bound = node_vars | rel_vars
    exprs: List[Union[Expr, AliasRef]] = [item.expr for item in query.return_items]
    if query.where is not None:
        exprs.append(query.where)
        if _contains_count(query.where):
            raise CypherSyntaxError(0, "count() only in RETURN, not WHERE")
    for item in query.return_items:
        if isinstance(item.expr, CountExpr):
            if item.expr.operand is not None and _contains_count(item.expr.operand):
                raise CypherSyntaxError(0, "a non-aggregate operand inside count()")
        elif _contains_count(item.expr):
            raise CypherSyntaxError(0, "count() as a whole return item")
    aliases = {item.alias for item in query.return_items if item.alias}
    for order in query.order_by:
        if isinstance(order.expr, AliasRef):
            if order.expr.name not in aliases:
                raise UnboundVariableError(order.expr.name)
            continue
        if _contains_count(order.expr):
            raise CypherSyntaxError(0, "an alias when ordering by count()")
        exprs.append(order.expr)
    for expr in exprs:
        for ref in _walk_refs(expr):
            if isinstance(ref, AliasRef):
                continue
            name = ref.var if isinstance(ref, PropertyRef) else ref.name
            if name not in bound:
                raise UnboundVariableError(name)


def parse(text: str) -> CypherQuery:
    """Parse one read-only query.  Raises CypherSyntaxError,
    UnboundVariableError, or UnsupportedFeatureError."""
    if not text or not text.strip():
        raise CypherSyntaxError(0, "a MATCH clause")
    return _Parser(text.strip()).parse_query()
