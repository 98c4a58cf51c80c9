"""Intent crystallisation over concept clusters, lifecycle, and threshold calibration."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Sequence

import numpy as np

from .errors import EmbedderUnavailable, IllegalTransition, KindMismatch
from .graph import EdgeKind, IntentStatus, MemoryGraph, NodeKind, check_transition
from .plans import OpKind, PlanOp, UpdatePlan, execute_plan
from .providers.base import ClusterSummary

logger = logging.getLogger(__name__)

DEFAULT_CATEGORY = "general"


class FeedbackKind(str, Enum):
    ACCEPT = "accept"
    MODIFY = "modify"
    DEFER = "defer"
    REJECT = "reject"


FEEDBACK_SCORES = {
    FeedbackKind.ACCEPT: 1.5,
    FeedbackKind.MODIFY: 1.1,
    FeedbackKind.DEFER: 0.8,
    FeedbackKind.REJECT: 0.3,
}

# lifecycle state each feedback kind moves a pending intent to; modify leaves it pending
FEEDBACK_STATUS = {
    FeedbackKind.ACCEPT: IntentStatus.RESOLVED,
    FeedbackKind.REJECT: IntentStatus.REJECTED,
    FeedbackKind.DEFER: IntentStatus.DEFERRED,
    FeedbackKind.MODIFY: None,
}
STATUS_FEEDBACK = {v: k for k, v in FEEDBACK_STATUS.items() if v is not None}


def default_scores() -> dict[str, float]:
    return {k.value: v for k, v in FEEDBACK_SCORES.items()}


def normalize_category(category: str | None) -> str:
    c = (category or "").strip().lower()
    return c or DEFAULT_CATEGORY


@dataclass
class CategoryThresholds:
    weights: dict[str, float] = field(default_factory=dict)
    alpha_ema: float = 0.3
    base_density_threshold: float = 1.5
    scores: dict[str, float] = field(default_factory=lambda: default_scores())

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha_ema <= 1.0:
            raise ValueError("alpha_ema must lie in (0, 1]")
        if self.base_density_threshold <= 0:
            raise ValueError("base_density_threshold must be positive")

    def weight(self, category: str | None) -> float:
        return self.weights.get(normalize_category(category), 1.0)

    def effective(self, category: str | None) -> float:
        return self.base_density_threshold / self.weight(category)

    def loosest(self) -> float:
        """Lowest threshold any category (seen or unseen) can have right now."""
        return self.base_density_threshold / max([1.0, *self.weights.values()])

    def to_dict(self) -> dict[str, Any]:
        return {
            "weights": dict(sorted(self.weights.items())),
            "alpha_ema": self.alpha_ema,
            "base_density_threshold": self.base_density_threshold,
            "scores": dict(self.scores),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> CategoryThresholds:
        return cls(
            weights={str(k): float(v) for k, v in (data.get("weights") or {}).items()},
            alpha_ema=float(data.get("alpha_ema", 0.3)),
            base_density_threshold=float(data.get("base_density_threshold", 1.5)),
            scores={str(k): float(v) for k, v in (data.get("scores") or {}).items()}
            or default_scores(),
        )


def apply_feedback(thresholds: CategoryThresholds, category: str | None, kind: FeedbackKind | str) -> float:
    """EMA update of the category weight toward the feedback score."""
    kind = FeedbackKind(kind)
    cat = normalize_category(category)
    a = thresholds.alpha_ema
    s = thresholds.scores.get(kind.value, FEEDBACK_SCORES[kind])
    w = (1.0 - a) * thresholds.weights.get(cat, 1.0) + a * s
    thresholds.weights[cat] = w
    return w


# ------------------------------------------------------------ clustering


def _concept_vector(graph: MemoryGraph, node_id: str, embedder: Any) -> np.ndarray:
    n = graph.nodes[node_id]
    if n.embedding is not None:
        return n.embedding
    return embedder.embed(n.text)


def grounding_events(graph: MemoryGraph, concept_ids: Sequence[str]) -> list[str]:
    """Distinct events with a GROUNDS or REINFORCE edge into any of the concepts."""
    found: set[str] = set()
    for c in concept_ids:
        for e in graph.in_edges(c):
            if e.kind in (EdgeKind.GROUNDS, EdgeKind.REINFORCE) and graph.nodes[e.src].kind is NodeKind.EVENT:
                found.add(e.src)
    return sorted(found)


def concept_clusters(graph: MemoryGraph, embedder: Any, link_theta: float = 0.5) -> list[list[str]]:
    """Single-linkage clusters of concepts at cosine >= ``link_theta``, sorted by first id."""
    concepts = [n.id for n in graph.nodes_of_kind(NodeKind.CONCEPT)]
    if not concepts:
        return []
    mat = np.vstack([_concept_vector(graph, c, embedder) for c in concepts])
    sims = mat @ mat.T
    parent = list(range(len(concepts)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(concepts)):
        for j in range(i + 1, len(concepts)):
            if sims[i, j] >= link_theta:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[str]] = {}
    for i, c in enumerate(concepts):
        groups.setdefault(find(i), []).append(c)
    return sorted(groups.values(), key=lambda g: g[0])


def cluster_density(graph: MemoryGraph, embedder: Any, concept_ids: Sequence[str]) -> float:
    """Mean pairwise cosine of the concepts times grounding events per concept."""
    ids = list(concept_ids)
    if not ids:
        raise ValueError("cluster_density needs at least one concept")
    for c in ids:
        if graph.node(c).kind is not NodeKind.CONCEPT:
            raise KindMismatch(f"{c} is not a concept")
    if len(ids) == 1:
        mean_sim = 1.0
    else:
        mat = np.vstack([_concept_vector(graph, c, embedder) for c in ids])
        sims = mat @ mat.T
        iu = np.triu_indices(len(ids), k=1)
        mean_sim = float(sims[iu].mean())
    return mean_sim * len(grounding_events(graph, ids)) / len(ids)


def _already_covered(graph: MemoryGraph, cluster: Sequence[str]) -> bool:
    members = set(cluster)
    for intent in graph.nodes_of_kind(NodeKind.INTENT):
        if intent.intent_status is not IntentStatus.PENDING:
            continue
        linked = {e.src for e in graph.in_edges(intent.id) if e.kind is EdgeKind.TRIGGERS} & members
        if 2 * len(linked) >= len(members):
            return True
    return False


@dataclass
class _Candidate:
    concepts: list[str]
    events: list[str]
    density: float


def maybe_emit_intents(
    graph: MemoryGraph,
    thresholds: CategoryThresholds,
    planner: Any,
    embedder: Any,
    now: int,
    link_theta: float = 0.5,
) -> list[str]:
    """Crystallise a pending Intent for every dense enough, uncovered cluster.

    All phrasing happens before the graph is touched, so a planner outage
    raises ``PlannerUnavailable`` with nothing emitted.
    """
    candidates: list[_Candidate] = []
    floor = thresholds.loosest()
    for cluster in concept_clusters(graph, embedder, link_theta):
        if len(cluster) < 2 or _already_covered(graph, cluster):
            continue
        density = cluster_density(graph, embedder, cluster)
        if density >= floor:
            candidates.append(_Candidate(cluster, grounding_events(graph, cluster), density))
    phrased = []
    for cand in candidates:
        summary = ClusterSummary(
            concept_ids=list(cand.concepts),
            concept_titles=[graph.nodes[c].title for c in cand.concepts],
            event_titles=[graph.nodes[e].title for e in cand.events],
            density=cand.density,
        )
        phrased.append(planner.phrase_intent(summary))

    emitted: list[str] = []
    for cand, (title, body, category) in zip(candidates, phrased):
        category = normalize_category(category)
        if cand.density < thresholds.effective(category):
            continue
        evidence = list(cand.events) or list(cand.concepts)
        ops = [
            PlanOp(
                OpKind.ADD_NODE.value,
                {
                    "kind": NodeKind.INTENT.value,
                    "title": title,
                    "body": body,
                    "category": category,
                    "metadata": {"density": f"{cand.density:.6f}"},
                },
                reasoning=f"cluster of {len(cand.concepts)} concepts reached density {cand.density:.3f}",
                grounded_in=evidence,
            )
        ]
        for c in cand.concepts:
            ops.append(PlanOp(
                OpKind.ADD_EDGE.value,
                {"edge_kind": EdgeKind.TRIGGERS.value, "src": c, "dst": "$0"},
                reasoning="concept supports the intent",
                grounded_in=evidence,
            ))
        for e in cand.events:
            ops.append(PlanOp(
                OpKind.ADD_EDGE.value,
                {"edge_kind": EdgeKind.GROUNDS.value, "src": e, "dst": "$0"},
                reasoning="event grounds a supporting concept",
                grounded_in=[e],
            ))
        report = execute_plan(graph, UpdatePlan(ops, "intent-engine", now), now, embedder=embedder)
        if report.rolled_back:
            logger.warning("intent emission rolled back: %s", report.failure)
            continue
        emitted.append(report.created_ids["$0"])
    return emitted


# ------------------------------------------------------------ lifecycle


def transition_intent(
    graph: MemoryGraph,
    intent_id: str,
    new_status: IntentStatus | str,
    feedback_event: str | None = None,
    thresholds: CategoryThresholds | None = None,
    now: int | None = None,
) -> None:
    """Move an intent through its lifecycle.

    With ``feedback_event`` (an existing Event id) a USER_FEEDBACK edge is
    added and, when ``thresholds`` is given, the category weight is updated
    with the feedback kind matching the new status.
    """
    intent = graph.node(intent_id)
    if intent.kind is not NodeKind.INTENT:
        raise KindMismatch(f"{intent_id} is not an intent")
    new_status = IntentStatus(new_status)
    check_transition(intent.intent_status, new_status)
    if feedback_event is not None and graph.node(feedback_event).kind is not NodeKind.EVENT:
        raise KindMismatch(f"{feedback_event} is not an event")
    when = intent.created_at if now is None else int(now)
    graph.update_node(intent_id, {"intent_status": new_status}, now=when)
    if feedback_event is not None:
        graph.add_edge(EdgeKind.USER_FEEDBACK, feedback_event, intent_id, now=when, provenance=[feedback_event])
        kind = STATUS_FEEDBACK.get(new_status)
        if thresholds is not None and kind is not None:
            apply_feedback(thresholds, intent.metadata.get("category"), kind)


@dataclass
class FeedbackResult:
    intent_id: str
    action: str
    status: str
    category: str
    weight: float
    feedback_event: str

    def to_dict(self) -> dict[str, Any]:
        return dict(self.__dict__)


def record_feedback(
    graph: MemoryGraph,
    thresholds: CategoryThresholds,
    intent_id: str,
    action: FeedbackKind | str,
    now: int,
    note: str | None = None,
    embedder: Any = None,
) -> FeedbackResult:
    """Store user feedback as an Event, link it to the intent, move the
    lifecycle and recalibrate the category threshold."""
    kind = FeedbackKind(action)
    intent = graph.node(intent_id)
    if intent.kind is not NodeKind.INTENT:
        raise KindMismatch(f"{intent_id} is not an intent")
    target = FEEDBACK_STATUS[kind]
    if intent.intent_status is not IntentStatus.PENDING:
        raise IllegalTransition(
            f"feedback needs a pending intent; {intent_id} is {intent.intent_status.value}"
        )
    if target is not None:
        check_transition(intent.intent_status, target)
    body = note or f"user chose {kind.value} for intent {intent_id}"
    emb = None
    if embedder is not None:
        try:
            emb = embedder.embed(f"feedback: {kind.value}\n{body}")
        except EmbedderUnavailable:
            logger.warning("embedder unavailable; feedback event stored without embedding")
    event_id = graph.add_node(
        NodeKind.EVENT, f"feedback: {kind.value}", body, now, embedding=emb,
        metadata={"event_type": "feedback", "intent_id": intent_id},
    )
    category = normalize_category(intent.metadata.get("category"))
    if target is not None:
        transition_intent(graph, intent_id, target, event_id, thresholds, now)
    else:
        graph.add_edge(EdgeKind.USER_FEEDBACK, event_id, intent_id, now=now, provenance=[event_id])
        graph.touch(intent_id, now)
        apply_feedback(thresholds, category, kind)
    return FeedbackResult(
        intent_id, kind.value, graph.nodes[intent_id].intent_status.value,
        category, thresholds.weight(category), event_id,
    )


def intent_support(graph: MemoryGraph, intent_id: str) -> dict[str, int]:
    counts = {"triggers": 0, "grounds": 0, "feedback": 0}
    for e in graph.in_edges(intent_id):
        if e.kind is EdgeKind.TRIGGERS:
            counts["triggers"] += 1
        elif e.kind is EdgeKind.GROUNDS:
            counts["grounds"] += 1
        elif e.kind is EdgeKind.USER_FEEDBACK:
            counts["feedback"] += 1
    return counts
