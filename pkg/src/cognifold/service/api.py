"""HTTP service: one isolated memory per session.

Handlers are plain ``def`` functions, so FastAPI runs them on its worker
thread pool. Writes to one session serialize on that session's lock while
other sessions proceed in parallel.
"""

from __future__ import annotations

import json
import logging
import secrets
from typing import Any, Optional

from fastapi import Depends, FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import ValidationError
from fastapi.concurrency import run_in_threadpool

from ..config import Config
from ..errors import (
    CogniFoldError,
    EmbedderUnavailable,
    IllegalTransition,
    JudgeUnavailable,
    KindMismatch,
    MissingNode,
    PlannerUnavailable,
    SchemaViolation,
    UnknownSession,
)
from ..graph import IntentStatus, NodeKind
from ..retrieval import Mode, QueryRequest
from . import operations as ops
from .models import (
    EventBatch,
    EventIn,
    FeedbackIn,
    FeedbackOut,
    IngestResponse,
    IntentList,
    MaintenanceOut,
    QueryOut,
    SessionCreate,
    SessionInfo,
)
from .sessions import ProviderFactory, SessionStore

logger = logging.getLogger(__name__)

STATUS = [
    (UnknownSession, 404),
    (MissingNode, 404),
    (IllegalTransition, 409),
    (KindMismatch, 409),
    (SchemaViolation, 400),
    (PlannerUnavailable, 503),
    (EmbedderUnavailable, 503),
    (JudgeUnavailable, 503),
]


def status_for(exc: Exception) -> int:
    for cls, code in STATUS:
        if isinstance(exc, cls):
            return code
    return 400 if isinstance(exc, (CogniFoldError, ValueError)) else 500


def _error(code: int, exc: Exception) -> JSONResponse:
    return JSONResponse(status_code=code, content={"error": type(exc).__name__, "detail": str(exc)})


def _parse_events(request_body: bytes, content_type: str) -> tuple[list[dict[str, Any]], bool]:
    """Accept a single event object, ``{"events": [...]}`` or NDJSON lines."""
    text = request_body.decode("utf-8")
    if "ndjson" in content_type or "jsonl" in content_type:
        events = []
        for i, line in enumerate(text.splitlines()):
            if line.strip():
                try:
                    events.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise SchemaViolation(f"line {i + 1}", f"not JSON: {exc.msg}") from exc
        items, finish = events, False
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaViolation("body", f"not JSON: {exc.msg}") from exc
        if isinstance(data, dict) and "events" in data:
            try:
                batch = EventBatch.model_validate(data)
            except ValidationError as exc:
                raise SchemaViolation("events", _first_error(exc)) from exc
            return [e.raw() for e in batch.events], batch.finish
        items, finish = (data if isinstance(data, list) else [data]), False
    out = []
    for i, item in enumerate(items):
        try:
            out.append(EventIn.model_validate(item).raw())
        except ValidationError as exc:
            raise SchemaViolation(f"events[{i}]", _first_error(exc)) from exc
    return out, finish


def _first_error(exc: ValidationError) -> str:
    err = exc.errors()[0]
    where = ".".join(str(p) for p in err.get("loc", ()))
    return f"{where}: {err.get('msg', 'invalid')}" if where else str(err.get("msg", "invalid"))


def create_app(
    config: Optional[Config] = None,
    *,
    storage_dir: Optional[str] = None,
    providers: Optional[ProviderFactory] = None,
    store: Optional[SessionStore] = None,
) -> FastAPI:
    cfg = config or Config()
    if store is None:
        store = SessionStore(cfg, storage_dir if storage_dir is not None else cfg.storage_dir, providers)
    app = FastAPI(title="CogniFold memory service", version="0.1.0")
    app.state.store = store
    token = cfg.service_token

    def authorize(request: Request) -> None:
        if not token:
            return
        got = request.headers.get("authorization", "")
        if not secrets.compare_digest(got, f"Bearer {token}"):
            raise HTTPException(status_code=401, detail="missing or wrong bearer token")

    @app.exception_handler(CogniFoldError)
    def _domain_error(request: Request, exc: CogniFoldError) -> JSONResponse:
        return _error(status_for(exc), exc)

    @app.exception_handler(ValueError)
    def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return _error(400, exc)

    @app.exception_handler(RequestValidationError)
    def _validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"error": "SchemaViolation", "detail": str(exc.errors())})

    guard = [Depends(authorize)]

    @app.get("/health")
    def health() -> dict[str, Any]:
        return {"status": "ok", "provider": cfg.provider.mode, "sessions": len(store.list())}

    @app.post("/sessions", response_model=SessionInfo, status_code=201, dependencies=guard)
    def create_session(body: Optional[SessionCreate] = None) -> SessionInfo:
        return ops.session_info(store.create(body.session_id if body else None))

    @app.get("/sessions", dependencies=guard)
    def list_sessions() -> dict[str, list[str]]:
        return {"sessions": store.list()}

    @app.get("/sessions/{session_id}", response_model=SessionInfo, dependencies=guard)
    def get_session(session_id: str) -> SessionInfo:
        return ops.session_info(store.get(session_id))

    @app.delete("/sessions/{session_id}", dependencies=guard)
    def delete_session(session_id: str) -> dict[str, str]:
        store.delete(session_id)
        return {"deleted": session_id}

    @app.post("/sessions/{session_id}/events", response_model=IngestResponse, dependencies=guard)
    async def post_events(session_id: str, request: Request) -> IngestResponse:
        events, finish = _parse_events(await request.body(), request.headers.get("content-type", ""))
        # ingestion blocks on the session lock and the providers; keep it off the event loop
        return await run_in_threadpool(ops.ingest, store, session_id, events, finish)

    @app.get("/sessions/{session_id}/query", response_model=QueryOut, dependencies=guard)
    def get_query(
        session_id: str,
        q: str = Query(..., min_length=1),
        mode: Mode = Mode.AUTO,
        top_n: int = Query(10, ge=1, le=1000),
        kind: Optional[list[NodeKind]] = Query(None),
        refine: bool = False,
        read_only: bool = False,
    ) -> QueryOut:
        req = QueryRequest(q, mode, top_n, frozenset(kind) if kind else None, refine, read_only)
        return ops.query(store, session_id, req)

    @app.post("/sessions/{session_id}/consolidate", response_model=MaintenanceOut, dependencies=guard)
    def post_consolidate(session_id: str, now: Optional[int] = None) -> MaintenanceOut:
        return ops.consolidate(store, session_id, now)

    @app.get("/sessions/{session_id}/intents", response_model=IntentList, dependencies=guard)
    def get_intents(session_id: str, status: Optional[IntentStatus] = None) -> IntentList:
        return ops.intents(store, session_id, None if status is None else status.value)

    @app.post(
        "/sessions/{session_id}/intents/{intent_id}/feedback", response_model=FeedbackOut, dependencies=guard
    )
    def post_feedback(session_id: str, intent_id: str, body: FeedbackIn) -> FeedbackOut:
        return ops.feedback(store, session_id, intent_id, body.action, body.note, body.now)

    @app.get("/sessions/{session_id}/graph", dependencies=guard)
    def get_graph(session_id: str, bundle: bool = False) -> dict[str, Any]:
        return ops.export(store, session_id, bundle)

    @app.put("/sessions/{session_id}/graph", response_model=SessionInfo, dependencies=guard)
    async def put_graph(session_id: str, request: Request) -> SessionInfo:
        try:
            data = json.loads(await request.body())
        except json.JSONDecodeError as exc:
            raise SchemaViolation("body", f"not JSON: {exc.msg}") from exc
        return ops.session_info(await run_in_threadpool(store.import_bundle, session_id, data))

    return app


__all__ = ["create_app", "status_for"]
