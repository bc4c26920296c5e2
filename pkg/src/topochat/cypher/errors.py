"""Errors raised by the Cypher subset parser and executor."""

from __future__ import annotations


class CypherError(Exception):
    pass


class CypherSyntaxError(CypherError):
    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"syntax error at position {position}: expected {expected}")


class UnboundVariableError(CypherError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"variable {name!r} is not bound by any pattern")


class UnsupportedFeatureError(CypherError):
    """Query uses Cypher outside the read-only subset (CREATE, MERGE, ...)."""

    def __init__(self, token: str):
        self.token = token
        super().__init__(f"unsupported Cypher feature: {token}")


class EvaluationError(CypherError):
    pass
