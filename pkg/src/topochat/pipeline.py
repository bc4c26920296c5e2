"""Question-to-answer orchestration.

Four stages: generate Cypher from the question, run it on the graph,
retrieve similar literature QA pairs, then ask the model to synthesize
both sources into a cited answer.  Every stage leaves its inputs,
outputs, and timing in a PipelineTrace; failure of the Cypher leg
degrades to a literature-only answer instead of erroring out.
"""

from __future__ import annotations

import itertools
import re
import time
from dataclasses import dataclass, field
from typing import Optional

from .cypher import CypherError, ResultTable, execute, format_results, parse
from .graph import EDGE_TARGET_CATEGORY, EdgeType, NodeCategory, PropertyGraph
from .literature import RetrievalHit, VectorIndex
from .llm import ChatMessage, LlmError
from .prompts import render_cypher_prompt, render_qa_prompt

MATERIAE_SITE = "http://materiae.iphy.ac.cn"
MATERIAL_URL_PREFIX = MATERIAE_SITE + "/materials/"


class CypherGenerationFailed(Exception):
    def __init__(self, raw: str, parse_error: str, candidates: Optional[list] = None):
        self.raw = raw
        self.parse_error = parse_error
        self.candidates = candidates or ([raw] if raw else [])
        super().__init__(f"could not obtain a valid query: {parse_error}")


@dataclass(frozen=True)
class ChatRequest:
    question: str
    session_id: str = ""
    k: int = 3
    max_rows: int = 20

    def __post_init__(self):
        if not self.question or not self.question.strip():
            raise ValueError("question must be non-empty")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.max_rows < 1:
            raise ValueError("max_rows must be positive")


@dataclass(frozen=True)
class Citation:
    kind: str  # doi or material
    value: str
    url: Optional[str] = None


@dataclass
class PipelineTrace:
    trace_id: str
    question: str
    cypher: Optional[str] = None
    cypher_candidates: list = field(default_factory=list)
    cypher_error: Optional[str] = None
    kg_table: Optional[ResultTable] = None
    kg_text: str = ""
    hits: list = field(default_factory=list)
    literature_text: str = ""
    prompts: dict = field(default_factory=dict)
    answer_text: str = ""
    flags: dict = field(default_factory=dict)
    stage_seconds: dict = field(default_factory=dict)


@dataclass
class ChatAnswer:
    text: str
    citations: list
    trace: PipelineTrace


_FENCE = re.compile(r"```[a-zA-Z]*")
_MATCH_START = re.compile(r"(?i)\bMATCH\b\s*\(")


def sanitize_cypher(raw: str) -> Optional[str]:
    """Cut model chatter down to the query: drop code fences, skip any
    prose before the first MATCH, stop at the first semicolon.  None if
    no MATCH clause is present."""
    text = _FENCE.sub(" ", raw or "")
    m = _MATCH_START.search(text)
    if not m:
        return None
    text = text[m.start() :]
    semi = text.find(";")
    if semi != -1:
        text = text[:semi]
    return text.strip() or None


_RETRY_NUDGE = (
    "The previous reply was not a valid query ({error}). "
    "Reply with exactly one Cypher query that starts with MATCH and nothing else."
)


def _try_candidate(raw: str) -> tuple[Optional[str], Optional[str]]:
    text = sanitize_cypher(raw)
    if text is None:
        return None, "no MATCH clause found"
    try:
        parse(text)
    except CypherError as exc:
        return None, str(exc)
    return text, None


def _generate_cypher(question: str, schema: str, llm) -> tuple[str, list, list]:
    """Returns (query text, raw candidates, prompt messages); one
    corrective retry carrying the parser error before giving up."""
    messages = render_cypher_prompt(schema, question)
    raw = llm.complete(messages, temperature=0.0)
    candidates = [raw]
    text, error = _try_candidate(raw)
    if text is not None:
        return text, candidates, messages
    retry = messages + [
        ChatMessage(role="assistant", content=raw or "(empty)"),
        ChatMessage(role="user", content=_RETRY_NUDGE.format(error=error)),
    ]
    raw2 = llm.complete(retry, temperature=0.0)
    candidates.append(raw2)
    text, error = _try_candidate(raw2)
    if text is not None:
        return text, candidates, messages
    raise CypherGenerationFailed(raw2, error, candidates=candidates)


def stage1_text2cypher(question: str, schema_text: str, llm) -> str:
    query, _, _ = _generate_cypher(question, schema_text, llm)
    return query


def stage2a_kg_query(graph: PropertyGraph, cypher: str) -> ResultTable:
    return execute(graph, cypher)


def stage2b_retrieve(index: Optional[VectorIndex], question: str, k: int = 3) -> list:
    if index is None or len(index) == 0 or k == 0:
        return []
    return index.search(question, k=k)


def literature_context(hits: list) -> str:
    blocks = []
    for i, hit in enumerate(hits, 1):
        blocks.append(
            f"[{i}] doi: {hit.pair.doi}\n"
            f"title: {hit.pair.title}\n"
            f"Q: {hit.pair.question}\n"
            f"A: {hit.pair.answer}"
        )
    return "\n\n".join(blocks)


def enrich_citations(table: Optional[ResultTable], hits: list) -> list:
    citations = []
    seen_dois = set()
    for hit in hits:
        doi = hit.pair.doi
        if doi not in seen_dois:
            seen_dois.add(doi)
            citations.append(Citation(kind="doi", value=doi))
    if table is not None and table.rows:
        matid_cols = [i for i, col in enumerate(table.columns) if col.endswith("matID")]
        if matid_cols:
            seen_ids = set()
            for row in table.rows:
                for i in matid_cols:
                    value = row[i]
                    if isinstance(value, str) and value and value not in seen_ids:
                        seen_ids.add(value)
                        citations.append(
                            Citation(kind="material", value=value,
                                     url=MATERIAL_URL_PREFIX + value)
                        )
        else:
            citations.append(Citation(kind="material", value=MATERIAE_SITE, url=MATERIAE_SITE))
    return citations


def schema_text(g: PropertyGraph) -> str:
    """Graph shape summary fed to the query-writing prompt."""
    lines = ["Node labels (every node has name and cate):"]
    for cate in NodeCategory:
        nodes = g.nodes_in_category(cate)
        keys = sorted({k for node in nodes for k in node.attrs} - {"name", "cate"})
        suffix = f"; extra properties: {', '.join(keys)}" if keys else ""
        lines.append(f"  {cate.value}: {len(nodes)} nodes{suffix}")
    lines.append("Relationship types (all start at Formula):")
    for etype in EdgeType:
        target = EDGE_TARGET_CATEGORY[etype].value
        extra = " {rel_value: 'SOC' or 'NSOC'}" if etype is EdgeType.BELONGS_TO_TOPOCLASS else ""
        lines.append(f"  (:Formula)-[:{etype.value}{extra}]->(:{target})")
    return "\n".join(lines)


class Pipeline:
    """Holds the shared read-only graph, literature index, and LLM
    backend; answer() is reentrant."""

    def __init__(self, graph: PropertyGraph, index: Optional[VectorIndex], llm,
                 schema: Optional[str] = None, explanation: Optional[str] = None):
        self.graph = graph
        self.index = index
        self.llm = llm
        self.schema = schema if schema is not None else schema_text(graph)
        self.explanation = explanation
        self._trace_ids = itertools.count(1)

    def answer(self, req: ChatRequest) -> ChatAnswer:
        trace = PipelineTrace(trace_id=f"t{next(self._trace_ids):06d}", question=req.question)
        flags = {"cypher_failed": False, "kg_empty": False,
                 "literature_empty": False, "doi_missing": False}

        t0 = time.perf_counter()
        table: Optional[ResultTable] = None
        try:
            cypher, candidates, messages = _generate_cypher(req.question, self.schema, self.llm)
            trace.cypher = cypher
            trace.cypher_candidates = candidates
            trace.prompts["cypher"] = messages
        except CypherGenerationFailed as exc:
            flags["cypher_failed"] = True
            trace.cypher_error = exc.parse_error
            trace.cypher_candidates = exc.candidates
        except LlmError as exc:
            flags["cypher_failed"] = True
            trace.cypher_error = f"backend failure: {exc}"
        trace.stage_seconds["cypher"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        if trace.cypher is not None:
            try:
                table = stage2a_kg_query(self.graph, trace.cypher)
            except CypherError as exc:
                flags["cypher_failed"] = True
                trace.cypher_error = str(exc)
        trace.kg_table = table
        flags["kg_empty"] = table is None or not table.rows
        if table is not None and table.rows:
            trace.kg_text = format_results(table, max_rows=req.max_rows)
        trace.stage_seconds["kg_query"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        hits = stage2b_retrieve(self.index, req.question, req.k)
        trace.hits = hits
        flags["literature_empty"] = not hits
        trace.literature_text = literature_context(hits)
        trace.stage_seconds["retrieve"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        messages = render_qa_prompt(
            trace.kg_text, trace.literature_text, req.question, self.explanation
        )
        trace.prompts["synthesis"] = messages
        text = self.llm.complete(messages, temperature=0.2)
        trace.answer_text = text
        trace.stage_seconds["synthesize"] = time.perf_counter() - t0

        if hits and not any(hit.pair.doi in text for hit in hits):
            flags["doi_missing"] = True
        trace.flags = flags
        citations = enrich_citations(table, hits)
        return ChatAnswer(text=text, citations=citations, trace=trace)


def answer(req: ChatRequest, pipeline: Pipeline) -> ChatAnswer:
    return pipeline.answer(req)


def deterministic_view(ans: ChatAnswer) -> dict:
    """Everything in the answer and trace except wall-clock timings;
    two runs over identical inputs must compare equal on this."""
    trace = ans.trace
    table = trace.kg_table
    return {
        "trace_id": trace.trace_id,
        "question": trace.question,
        "cypher": trace.cypher,
        "cypher_candidates": list(trace.cypher_candidates),
        "cypher_error": trace.cypher_error,
        "kg_columns": None if table is None else list(table.columns),
        "kg_rows": None if table is None else [list(r) for r in table.rows],
        "kg_text": trace.kg_text,
        "hits": [
            {"id": h.pair.id, "question": h.pair.question, "answer": h.pair.answer,
             "title": h.pair.title, "doi": h.pair.doi, "distance": h.distance}
            for h in trace.hits
        ],
        "literature_text": trace.literature_text,
        "prompts": {
            name: [(m.role, m.content) for m in msgs]
            for name, msgs in sorted(trace.prompts.items())
        },
        "answer": ans.text,
        "citations": [(c.kind, c.value, c.url) for c in ans.citations],
        "flags": dict(trace.flags),
    }
