"""FastAPI application factory.

POST /api/chat funnels through a bounded WorkQueue so LLM-backed jobs
never overwhelm the backend; all GET endpoints are read-only views of
immutable structures and run on the regular request pool, independent
of the chat lane.
"""

from __future__ import annotations

import asyncio
import time
from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware

from ..analytics import element_heights, periodic_table_data
from ..graph import GraphEdge, GraphNode, PropertyGraph, get_node, neighbors, stats
from ..llm import LlmError
from ..pipeline import ChatRequest, Pipeline
from .models import (
    ChatRequestBody,
    ChatResponse,
    CitationModel,
    EdgeModel,
    HistoryEntryModel,
    HistoryResponse,
    LiteratureRef,
    NeighborModel,
    NodeModel,
    SearchResponse,
)
from .sessions import HistoryEntry, SessionStore
from .workqueue import Full, WorkQueue


def _node_model(node: GraphNode) -> NodeModel:
    return NodeModel(id=node.id, cate=node.cate.value, name=node.name,
                     attrs=dict(node.attrs))


def _edge_model(edge: GraphEdge) -> EdgeModel:
    return EdgeModel(id=edge.id, src=edge.src, dst=edge.dst,
                     etype=edge.etype.value, rel_value=edge.rel_value)


def _chat_response(ans) -> ChatResponse:
    trace = ans.trace
    rows = trace.kg_table.to_dicts() if trace.kg_table is not None else []
    literature = [
        LiteratureRef(doi=h.pair.doi, title=h.pair.title,
                      question=h.pair.question, distance=float(h.distance))
        for h in trace.hits
    ]
    citations = [CitationModel(kind=c.kind, value=c.value, url=c.url)
                 for c in ans.citations]
    return ChatResponse(answer=ans.text, citations=citations,
                        cypher=trace.cypher, kg_rows=rows,
                        literature=literature, trace_id=trace.trace_id)


def create_app(
    graph: PropertyGraph,
    index,
    backend,
    *,
    queue_capacity: int = 64,
    workers: int = 2,
    job_timeout: float = 60.0,
    session_limit: int = 100,
    recommended=None,
) -> FastAPI:
    pipeline = Pipeline(graph, index, backend)
    work_queue = WorkQueue(capacity=queue_capacity, workers=workers)
    sessions = SessionStore(limit=session_limit)
    if recommended is None:
        from ..sampledata import recommended_questions

        recommended = recommended_questions()
    recommended = list(recommended)

    @asynccontextmanager
    async def lifespan(_app):
        try:
            yield
        finally:
            work_queue.stop()

    app = FastAPI(title="topochat", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.graph = graph
    app.state.pipeline = pipeline
    app.state.work_queue = work_queue
    app.state.sessions = sessions

    @app.post("/api/chat", response_model=ChatResponse)
    async def chat(body: ChatRequestBody):
        question = body.question.strip()
        if not question:
            raise HTTPException(status_code=400, detail="question must not be empty")
        session_id = body.session_id.strip()
        req = ChatRequest(question=question, session_id=session_id)
        if session_id:
            sessions.ensure(session_id)

        def job():
            ans = pipeline.answer(req)
            if session_id:
                sessions.append(session_id, HistoryEntry(
                    question=question, answer_text=ans.text,
                    trace_id=ans.trace.trace_id, timestamp=time.time()))
            return ans

        try:
            future = work_queue.submit(job)
        except Full:
            raise HTTPException(status_code=429,
                                detail="chat queue is full, retry shortly")
        try:
            ans = await asyncio.wait_for(asyncio.wrap_future(future),
                                         timeout=job_timeout)
        except asyncio.TimeoutError:
            future.cancel()
            raise HTTPException(status_code=504, detail="chat job timed out")
        except LlmError as exc:
            raise HTTPException(status_code=502,
                                detail=f"language backend failed: {exc}")
        return _chat_response(ans)

    @app.get("/api/graph/search", response_model=SearchResponse)
    def graph_search(cate: str = Query(...), name: str = Query(...)):
        try:
            node = get_node(graph, cate, name)
        except ValueError:
            raise HTTPException(status_code=404,
                                detail=f"unknown node category: {cate}")
        if node is None:
            raise HTTPException(status_code=404,
                                detail=f"no {cate} node named {name!r}")
        found = [NeighborModel(edge=_edge_model(e), node=_node_model(n))
                 for e, n in neighbors(graph, node.id)]
        return SearchResponse(node=_node_model(node), neighbors=found)

    @app.get("/api/graph/stats")
    def graph_stats():
        return stats(graph)

    @app.get("/api/analysis/heights")
    def analysis_heights(coupling: str = "SOC"):
        try:
            heights = element_heights(graph, coupling=coupling)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return periodic_table_data(heights)

    @app.get("/api/questions/recommended")
    def questions_recommended():
        return recommended

    @app.get("/api/history", response_model=HistoryResponse)
    def history(session_id: str = Query(...)):
        entries = sessions.history(session_id)
        if entries is None:
            raise HTTPException(status_code=404,
                                detail=f"unknown session: {session_id}")
        return HistoryResponse(session_id=session_id, entries=[
            HistoryEntryModel(question=e.question, answer=e.answer_text,
                              trace_id=e.trace_id, timestamp=e.timestamp)
            for e in entries
        ])

    return app
