"""Request and response bodies for the HTTP service."""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class EventIn(BaseModel):
    model_config = ConfigDict(extra="allow")

    title: str = ""
    body: Optional[str] = None
    description: Optional[str] = None
    timestamp: int
    event_type: Optional[str] = None
    gold_concept: Optional[str] = None
    metadata: dict[str, Any] = Field(default_factory=dict)

    def raw(self) -> dict[str, Any]:
        return self.model_dump(exclude_none=True)


class EventBatch(BaseModel):
    events: list[EventIn]
    finish: bool = False


class SessionCreate(BaseModel):
    session_id: Optional[str] = None


class SessionInfo(BaseModel):
    session_id: str
    nodes: int
    edges: int
    events_ingested: int
    log_entries: int


class IngestResult(BaseModel):
    event_id: str
    degraded: bool
    flags: list[str]
    ops_applied: int
    rolled_back: bool
    maintenance: Optional[dict[str, Any]] = None


class IngestResponse(BaseModel):
    session_id: str
    results: list[IngestResult]
    degraded: bool
    flags: list[str]


class QueryHit(BaseModel):
    node_id: str
    title: str
    kind: str
    score: float
    backend: str
    rank: int


class QueryOut(BaseModel):
    session_id: str
    query: str
    results: list[QueryHit]
    degraded: bool
    flags: list[str]


class MaintenanceOut(BaseModel):
    session_id: str
    consolidation: dict[str, Any]
    intents: list[str]
    flags: list[str]
    degraded: bool


class IntentRow(BaseModel):
    id: str
    title: str
    body: str
    status: str
    category: str
    created_at: int
    support: dict[str, int]


class IntentList(BaseModel):
    session_id: str
    intents: list[IntentRow]


class FeedbackIn(BaseModel):
    action: Literal["accept", "modify", "defer", "reject"]
    note: Optional[str] = None
    now: Optional[int] = None


class FeedbackOut(BaseModel):
    session_id: str
    intent_id: str
    status: str
    category: str
    weight: float
    feedback_event: Optional[str] = None


class ErrorOut(BaseModel):
    error: str
    detail: str
