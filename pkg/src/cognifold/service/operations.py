"""Session operations returning wire models.

The HTTP routes and the in-process CLI backend both go through these, so a
command prints the same payload whether or not a server is involved.
"""

from __future__ import annotations

from typing import Any, Mapping, Optional, Sequence

from ..retrieval import QueryRequest
from .models import (
    FeedbackOut,
    IngestResponse,
    IngestResult,
    IntentList,
    MaintenanceOut,
    QueryOut,
    SessionInfo,
)
from .sessions import Session, SessionStore


def session_info(s: Session) -> SessionInfo:
    with s.lock:
        return SessionInfo(
            session_id=s.session_id,
            nodes=len(s.engine.graph.nodes),
            edges=len(s.engine.graph.edges),
            events_ingested=s.engine.events_ingested,
            log_entries=s.log_entries,
        )


def ingest(store: SessionStore, session_id: str, events: Sequence[Mapping[str, Any]], finish: bool = False) -> IngestResponse:
    outcomes = store.get(session_id).ingest(events, finish=finish)
    results = [
        IngestResult(
            event_id=o.report.event_id,
            degraded=o.degraded,
            flags=list(o.report.flags) + (list(o.maintenance.flags) if o.maintenance else []),
            ops_applied=o.report.execution.applied,
            rolled_back=o.report.execution.rolled_back,
            maintenance=None if o.maintenance is None else o.maintenance.to_dict(),
        )
        for o in outcomes
    ]
    return IngestResponse(
        session_id=session_id,
        results=results,
        degraded=any(r.degraded for r in results),
        flags=sorted({f for r in results for f in r.flags}),
    )


def query(store: SessionStore, session_id: str, request: QueryRequest) -> QueryOut:
    session = store.get(session_id)
    resp = session.query(request)
    with session.lock:
        rows = resp.to_rows(session.engine.graph)
    return QueryOut(session_id=session_id, query=resp.query, results=rows, degraded=resp.degraded, flags=resp.flags)


def consolidate(store: SessionStore, session_id: str, now: Optional[int] = None) -> MaintenanceOut:
    report = store.get(session_id).consolidate(now)
    return MaintenanceOut(
        session_id=session_id,
        consolidation=report.consolidation.to_dict(),
        intents=report.intents,
        flags=report.flags,
        degraded=bool(report.flags),
    )


def intents(store: SessionStore, session_id: str, status: Optional[str] = None) -> IntentList:
    session = store.get(session_id)
    with session.lock:
        rows = session.engine.intents(status)
    return IntentList(session_id=session_id, intents=rows)


def feedback(
    store: SessionStore, session_id: str, intent_id: str, action: str,
    note: Optional[str] = None, now: Optional[int] = None,
) -> FeedbackOut:
    result = store.get(session_id).feedback(intent_id, action, note, now)
    return FeedbackOut(
        session_id=session_id,
        intent_id=intent_id,
        status=result.status,
        category=result.category,
        weight=result.weight,
        feedback_event=result.feedback_event,
    )


def export(store: SessionStore, session_id: str, bundle: bool = True) -> dict[str, Any]:
    session = store.get(session_id)
    with session.lock:
        return session.bundle() if bundle else session.engine.graph.snapshot().to_dict()
