"""One memory instance: graph, providers and calibration state behind a single API.

The engine owns the maintenance cadence: a consolidation pass followed by
intent emission every ``consolidation_interval_events`` ingested events,
plus one more when a stream is finished.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .config import Config
from .consolidation import ConsolidationReport, consolidate
from .errors import EmbedderUnavailable, MissingNode, PlannerUnavailable
from .graph import IntentStatus, MemoryGraph, NodeKind
from .intents import CategoryThresholds, FeedbackResult, intent_support, maybe_emit_intents, record_feedback
from .retrieval import QueryRequest, QueryResponse, query
from .writepath import IngestReport, RawEvent, ingest_event

logger = logging.getLogger(__name__)


@dataclass
class MaintenanceReport:
    consolidation: ConsolidationReport
    intents: list[str] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "consolidation": self.consolidation.to_dict(),
            "intents": list(self.intents),
            "flags": list(self.flags),
        }


@dataclass
class IngestOutcome:
    report: IngestReport
    maintenance: MaintenanceReport | None = None

    @property
    def degraded(self) -> bool:
        return self.report.degraded or bool(self.maintenance and self.maintenance.flags)

    def to_dict(self) -> dict[str, Any]:
        out = self.report.to_dict()
        out["degraded"] = self.degraded
        out["maintenance"] = None if self.maintenance is None else self.maintenance.to_dict()
        return out


class Engine:
    def __init__(
        self,
        config: Config,
        embedder: Any,
        planner: Any,
        *,
        graph: MemoryGraph | None = None,
        thresholds: CategoryThresholds | None = None,
    ):
        self.config = config
        self.embedder = embedder
        self.planner = planner
        self.graph = graph if graph is not None else MemoryGraph()
        self.thresholds = thresholds if thresholds is not None else config.intents.thresholds()
        self.events_ingested = 0
        self.since_maintenance = 0
        self.clock = self.graph.last_consolidated_at

    # -- write side

    def ingest(self, raw: RawEvent | Mapping[str, Any]) -> IngestOutcome:
        event = raw if isinstance(raw, RawEvent) else RawEvent.from_dict(raw)
        report = ingest_event(self.graph, event, self.planner, self.embedder, self.config.write_path)
        self.clock = max(self.clock, event.timestamp)
        self.events_ingested += 1
        self.since_maintenance += 1
        outcome = IngestOutcome(report)
        interval = self.config.consolidation_interval_events
        if interval > 0 and self.since_maintenance >= interval:
            outcome.maintenance = self.maintain()
        return outcome

    def ingest_many(self, events: Iterable[RawEvent | Mapping[str, Any]]) -> list[IngestOutcome]:
        return [self.ingest(e) for e in events]

    def finish(self) -> MaintenanceReport | None:
        """End-of-stream maintenance; skipped when nothing arrived since the last pass."""
        if self.since_maintenance == 0:
            return None
        return self.maintain()

    def now(self) -> int:
        return max(self.clock, self.graph.last_consolidated_at)

    def maintain(self, now: int | None = None) -> MaintenanceReport:
        when = self.now() if now is None else max(int(now), self.graph.last_consolidated_at)
        self.clock = max(self.clock, when)
        report = MaintenanceReport(consolidate(self.graph, self.embedder, self.config.consolidation, when))
        if report.consolidation.degraded:
            report.flags.append("consolidation_degraded")
        try:
            report.intents = maybe_emit_intents(
                self.graph, self.thresholds, self.planner, self.embedder, when,
                self.config.intents.cluster_link_theta,
            )
        except (PlannerUnavailable, EmbedderUnavailable) as exc:
            logger.warning("intent emission skipped: %s", exc)
            report.flags.append("intents_skipped")
        self.since_maintenance = 0
        return report

    def feedback(self, intent_id: str, action: str, note: str | None = None, now: int | None = None) -> FeedbackResult:
        when = self.now() if now is None else int(now)
        self.clock = max(self.clock, when)
        return record_feedback(self.graph, self.thresholds, intent_id, action, when, note, self.embedder)

    # -- read side

    def query(self, request: QueryRequest, now: int | None = None) -> QueryResponse:
        return query(
            self.graph, request, self.embedder, planner=self.planner,
            config=self.config.read_path, now=now,
        )

    def intents(self, status: str | None = None) -> list[dict[str, Any]]:
        rows = []
        for n in self.graph.nodes_of_kind(NodeKind.INTENT):
            if status is not None and n.intent_status is not IntentStatus(status):
                continue
            rows.append({
                "id": n.id,
                "title": n.title,
                "body": n.body,
                "status": n.intent_status.value,
                "category": n.metadata.get("category", ""),
                "created_at": n.created_at,
                "support": intent_support(self.graph, n.id),
            })
        return rows

    def node_row(self, node_id: str) -> dict[str, Any]:
        if node_id not in self.graph.nodes:
            raise MissingNode(f"no node {node_id!r}")
        n = self.graph.nodes[node_id]
        return {"id": n.id, "kind": n.kind.value, "title": n.title, "body": n.body}

    # -- persistence of everything that is not the graph

    def state_dict(self) -> dict[str, Any]:
        planner_state = getattr(self.planner, "state_dict", None)
        return {
            "events_ingested": self.events_ingested,
            "since_maintenance": self.since_maintenance,
            "clock": self.clock,
            "thresholds": self.thresholds.to_dict(),
            "planner": planner_state() if planner_state else None,
        }

    def load_state_dict(self, state: Mapping[str, Any]) -> None:
        self.events_ingested = int(state.get("events_ingested", 0))
        self.since_maintenance = int(state.get("since_maintenance", 0))
        self.clock = int(state.get("clock", self.graph.last_consolidated_at))
        if state.get("thresholds"):
            self.thresholds = CategoryThresholds.from_dict(state["thresholds"])
        loader = getattr(self.planner, "load_state_dict", None)
        if loader is not None and state.get("planner") is not None:
            loader(state["planner"])
