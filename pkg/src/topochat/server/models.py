"""Request/response bodies for the HTTP service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel


class ChatRequestBody(BaseModel):
    question: str
    session_id: str = ""


class CitationModel(BaseModel):
    kind: str
    value: str
    url: Optional[str] = None


class LiteratureRef(BaseModel):
    doi: str
    title: str
    question: str
    distance: float


class ChatResponse(BaseModel):
    answer: str
    citations: list[CitationModel]
    cypher: Optional[str]
    kg_rows: list[dict[str, Any]]
    literature: list[LiteratureRef]
    trace_id: str


class NodeModel(BaseModel):
    id: int
    cate: str
    name: str
    attrs: dict[str, Any]


class EdgeModel(BaseModel):
    id: int
    src: int
    dst: int
    etype: str
    rel_value: Optional[str] = None


class NeighborModel(BaseModel):
    edge: EdgeModel
    node: NodeModel


class SearchResponse(BaseModel):
    node: NodeModel
    neighbors: list[NeighborModel]


class HistoryEntryModel(BaseModel):
    question: str
    answer: str
    trace_id: str
    timestamp: float


class HistoryResponse(BaseModel):
    session_id: str
    entries: list[HistoryEntryModel]
