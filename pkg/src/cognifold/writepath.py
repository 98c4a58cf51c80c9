"""Write path: per-node priority, tiered context assembly and event ingestion."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .algorithms import pagerank
from .errors import EmbedderUnavailable, NegativeAge, PlannerUnavailable
from .graph import IntentStatus, MemoryGraph, Node, NodeKind, TypedEdge
from .plans import ExecutionReport, UpdatePlan, execute_plan, rewrite_duplicates

logger = logging.getLogger(__name__)

SECONDS_PER_HOUR = 3600.0
URGENCY_WINDOW_S = 24 * 3600

TYPE_PRIORITY = {
    NodeKind.INTENT: 1.0,
    NodeKind.CONCEPT: 0.75,
    NodeKind.EVENT: 0.5,
    NodeKind.TIME: 0.25,
}


@dataclass
class PriorityWeights:
    alpha: float = 0.4  # PageRank
    beta: float = 0.4  # recency
    gamma: float = 0.2  # access
    lambda_node: float = 0.01  # per hour, half-life ~69 h

    def __post_init__(self) -> None:
        if min(self.alpha, self.beta, self.gamma, self.lambda_node) < 0:
            raise ValueError("priority weights must be non-negative")


@dataclass
class TierWeights:
    immediate_recency: float = 0.7
    immediate_urgency: float = 0.3
    working_pagerank: float = 0.5
    working_recency: float = 0.3
    working_type: float = 0.2
    background_pagerank: float = 0.8
    background_diversity: float = 0.2


@dataclass
class WritePathConfig:
    weights: PriorityWeights = field(default_factory=PriorityWeights)
    tiers: TierWeights = field(default_factory=TierWeights)
    context_k: int = 50
    tier_proportions: tuple[float, float, float] = (0.1, 0.3, 0.5)
    dedup_theta: float = 0.85


@dataclass
class ContextWindow:
    immediate: list[Node] = field(default_factory=list)
    working: list[Node] = field(default_factory=list)
    background: list[Node] = field(default_factory=list)
    edges: list[TypedEdge] = field(default_factory=list)
    capacity: int = 50
    scores: dict[str, float] = field(default_factory=dict)

    @property
    def selected(self) -> list[Node]:
        return self.immediate + self.working + self.background

    def ids(self) -> set[str]:
        return {n.id for n in self.selected}

    def to_dict(self) -> dict[str, Any]:
        def brief(n: Node) -> dict[str, Any]:
            out = {"id": n.id, "kind": n.kind.value, "title": n.title, "body": n.body}
            if n.intent_status is not None:
                out["intent_status"] = n.intent_status.value
            return out

        return {
            "immediate": [brief(n) for n in self.immediate],
            "working": [brief(n) for n in self.working],
            "background": [brief(n) for n in self.background],
            "edges": [
                {"kind": e.kind.value, "src": e.src, "dst": e.dst, "weight": round(e.weight, 4)}
                for e in self.edges
            ],
        }


@dataclass
class IngestReport:
    event_id: str
    plan: UpdatePlan
    execution: ExecutionReport
    dedup_conversions: int = 0
    degraded: bool = False
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "event_id": self.event_id,
            "plan": self.plan.to_dict(),
            "execution": self.execution.to_dict(),
            "dedup_conversions": self.dedup_conversions,
            "degraded": self.degraded,
            "flags": list(self.flags),
        }


# ------------------------------------------------------------------ scoring


def recency(age_seconds: float, lambda_node: float) -> float:
    return math.exp(-lambda_node * age_seconds / SECONDS_PER_HOUR)


def ramp(deadline: int, now: int) -> float:
    """1.0 outside the final 24 h, rising linearly to 2.0 at the deadline."""
    remaining = deadline - now
    if remaining < 0 or remaining > URGENCY_WINDOW_S:
        return 1.0
    return 1.0 + (URGENCY_WINDOW_S - remaining) / URGENCY_WINDOW_S


def urgency(graph: MemoryGraph, node_id: str, now: int) -> float:
    """Largest deadline ramp among Time nodes adjacent to (or equal to) the node."""
    node = graph.node(node_id)
    best = 1.0
    candidates = graph.neighbors(node_id)
    if node.kind is NodeKind.TIME:
        candidates = candidates | {node_id}
    for other in candidates:
        n = graph.nodes[other]
        if n.kind is NodeKind.TIME and n.deadline_at is not None:
            best = max(best, ramp(n.deadline_at, now))
    return best


def normalized_access(access_count: int, max_access: int) -> float:
    return access_count / (1.0 + max_access)


def score_node(
    node: Node,
    now: int,
    pr: float,
    weights: PriorityWeights,
    urgency: float,
    max_access: int = 0,
) -> float:
    """Weighted PageRank + recency + access, times the urgency multiplier."""
    age = now - node.last_accessed_at
    if age < 0:
        raise NegativeAge(f"now={now} precedes last access {node.last_accessed_at} of {node.id}")
    acc = normalized_access(node.access_count, max(max_access, node.access_count))
    base = weights.alpha * pr + weights.beta * recency(age, weights.lambda_node) + weights.gamma * acc
    return base * urgency


def priority_scores(
    graph: MemoryGraph, now: int, weights: PriorityWeights, pr: Mapping[str, float] | None = None
) -> dict[str, float]:
    """Priority score for every node. Future-dated accesses count as age zero."""
    if pr is None:
        pr = pagerank(graph).scores
    max_access = max((n.access_count for n in graph.nodes.values()), default=0)
    out = {}
    for node_id, n in graph.nodes.items():
        age = max(0, now - n.last_accessed_at)
        acc = normalized_access(n.access_count, max_access)
        base = (
            weights.alpha * pr[node_id]
            + weights.beta * recency(age, weights.lambda_node)
            + weights.gamma * acc
        )
        out[node_id] = base * urgency(graph, node_id, now)
    return out


def _minmax(values: Mapping[str, float]) -> dict[str, float]:
    if not values:
        return {}
    lo, hi = min(values.values()), max(values.values())
    if hi - lo <= 0:
        return {k: 1.0 for k in values}
    return {k: (v - lo) / (hi - lo) for k, v in values.items()}


def tier_sizes(k: int, proportions: tuple[float, float, float] = (0.1, 0.3, 0.5)) -> tuple[int, int, int]:
    imm = int(math.floor(proportions[0] * k))
    work = int(math.floor(proportions[1] * k))
    return imm, work, k - imm - work


def assemble_context(
    graph: MemoryGraph,
    now: int,
    weights: PriorityWeights | None = None,
    k: int = 50,
    *,
    tiers: TierWeights | None = None,
    proportions: tuple[float, float, float] = (0.1, 0.3, 0.5),
) -> ContextWindow:
    """Select the top-k nodes by priority and partition them into tiers."""
    if k < 1:
        raise ValueError("k must be >= 1")
    weights = weights or PriorityWeights()
    tiers = tiers or TierWeights()
    window = ContextWindow(capacity=k)
    if not graph.nodes:
        return window
    pr = pagerank(graph).scores
    scores = priority_scores(graph, now, weights, pr)
    ranked = sorted(scores, key=lambda nid: (-scores[nid], nid))
    selected = ranked[:k]
    window.scores = {nid: scores[nid] for nid in selected}

    rec = _minmax({
        nid: recency(max(0, now - graph.nodes[nid].last_accessed_at), weights.lambda_node)
        for nid in selected
    })
    urg = _minmax({nid: urgency(graph, nid, now) for nid in selected})
    prn = _minmax({nid: pr[nid] for nid in selected})
    typ = _minmax({nid: TYPE_PRIORITY[graph.nodes[nid].kind] for nid in selected})

    n_imm, n_work, _ = tier_sizes(k, proportions)
    remaining = list(selected)

    def take(score: Mapping[str, float], count: int) -> list[str]:
        chosen = sorted(remaining, key=lambda nid: (-score[nid], nid))[:count]
        for nid in chosen:
            remaining.remove(nid)
        return chosen

    imm = take({n: tiers.immediate_recency * rec[n] + tiers.immediate_urgency * urg[n] for n in remaining}, n_imm)
    work = take(
        {
            n: tiers.working_pagerank * prn[n] + tiers.working_recency * rec[n] + tiers.working_type * typ[n]
            for n in remaining
        },
        n_work,
    )
    background = _diverse_order(graph, remaining, prn, tiers)

    window.immediate = [graph.nodes[n].copy() for n in imm]
    window.working = [graph.nodes[n].copy() for n in work]
    window.background = [graph.nodes[n].copy() for n in background]
    chosen = set(selected)
    window.edges = [
        e.copy() for e in graph.iter_edges() if e.src in chosen and e.dst in chosen
    ]
    return window


def _diverse_order(
    graph: MemoryGraph, candidates: list[str], prn: Mapping[str, float], tiers: TierWeights
) -> list[str]:
    """Greedy max-min diversification: each pick maximises
    w_pr * pagerank + w_div * (distance to the closest node already picked)."""
    order: list[str] = []
    pool = sorted(candidates)
    picked_vecs: list[np.ndarray] = []
    while pool:
        best, best_score = None, -math.inf
        for nid in pool:
            emb = graph.nodes[nid].embedding
            if emb is None:
                div = 0.5
            elif not picked_vecs:
                div = 1.0
            else:
                closest = max(float(np.dot(emb, v)) for v in picked_vecs)
                div = (1.0 - closest) / 2.0
            s = tiers.background_pagerank * prn[nid] + tiers.background_diversity * div
            if s > best_score:
                best, best_score = nid, s
        pool.remove(best)
        order.append(best)
        emb = graph.nodes[best].embedding
        if emb is not None:
            picked_vecs.append(emb)
    return order


# ---------------------------------------------------------------- ingestion


@dataclass
class RawEvent:
    title: str
    body: str
    timestamp: int
    event_type: str | None = None
    gold_concept: str | None = None
    metadata: dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> RawEvent:
        body = data.get("body", data.get("description"))
        if body is None or not str(body).strip():
            raise ValueError("event needs a nonempty body")
        if "timestamp" not in data:
            raise ValueError("event needs a timestamp")
        meta = {str(k): str(v) for k, v in (data.get("metadata") or {}).items()}
        return cls(
            title=str(data.get("title") or "").strip() or str(body)[:60],
            body=str(body),
            timestamp=int(data["timestamp"]),
            event_type=None if data.get("event_type") is None else str(data["event_type"]),
            gold_concept=None if data.get("gold_concept") is None else str(data["gold_concept"]),
            metadata=meta,
        )

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"title": self.title, "body": self.body, "timestamp": self.timestamp}
        if self.event_type is not None:
            out["event_type"] = self.event_type
        if self.gold_concept is not None:
            out["gold_concept"] = self.gold_concept
        if self.metadata:
            out["metadata"] = dict(self.metadata)
        return out


def pending_intents(graph: MemoryGraph) -> list[Node]:
    return [
        n.copy() for n in graph.nodes_of_kind(NodeKind.INTENT)
        if n.intent_status is IntentStatus.PENDING
    ]


def commit_event(graph: MemoryGraph, event: RawEvent, embedder: Any) -> tuple[str, bool]:
    """Store the event verbatim; returns ``(node id, embedding failed)``."""
    meta = dict(event.metadata)
    if event.event_type is not None:
        meta["event_type"] = event.event_type
    if event.gold_concept is not None:
        meta["gold_concept"] = event.gold_concept
    emb, failed = None, False
    if embedder is not None:
        try:
            emb = embedder.embed(f"{event.title}\n{event.body}")
        except EmbedderUnavailable:
            failed = True
    node_id = graph.add_node(
        NodeKind.EVENT, event.title, event.body, event.timestamp, embedding=emb, metadata=meta
    )
    return node_id, failed


def ingest_event(
    graph: MemoryGraph,
    raw_event: RawEvent | Mapping[str, Any],
    planner: Any,
    embedder: Any,
    config: WritePathConfig | None = None,
    now: int | None = None,
) -> IngestReport:
    """Commit one event, then plan, dedup and atomically apply graph updates.

    The event node survives whatever the planner or executor does.
    """
    cfg = config or WritePathConfig()
    event = raw_event if isinstance(raw_event, RawEvent) else RawEvent.from_dict(raw_event)
    now = event.timestamp if now is None else int(now)
    event_id, emb_failed = commit_event(graph, event, embedder)
    flags: list[str] = []
    if emb_failed:
        flags.append("embedder_unavailable")

    context = assemble_context(
        graph, now, cfg.weights, cfg.context_k, tiers=cfg.tiers, proportions=cfg.tier_proportions
    )
    event_view = graph.nodes[event_id].copy()
    try:
        plan = planner.propose(event_view, context, pending_intents(graph))
    except PlannerUnavailable as exc:
        logger.warning("planner unavailable: %s", exc)
        plan = UpdatePlan(flags=["planner_unavailable"])
    except Exception as exc:  # a crashing planner must not lose the event
        logger.exception("planner crashed")
        plan = UpdatePlan(flags=[f"planner_error:{type(exc).__name__}"])
    if not plan.created_at:
        plan.created_at = now
    flags.extend(plan.flags)

    conversions = 0
    if plan.ops and embedder is not None:
        plan, conversions = rewrite_duplicates(graph, plan, embedder, cfg.dedup_theta)
        if "dedup_skipped" in plan.flags and "dedup_skipped" not in flags:
            flags.append("dedup_skipped")
    execution = execute_plan(graph, plan, now, embedder=None if emb_failed else embedder)
    if execution.rolled_back:
        flags.append("rolled_back")
    degraded = any(
        f.startswith(("planner_", "embedder_", "malformed", "dedup_skipped")) for f in flags
    )
    return IngestReport(event_id, plan, execution, conversions, degraded, flags)
