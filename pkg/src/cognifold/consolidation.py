"""Structural-debt maintenance: reinforcement, merging, decay and kNN completion."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .errors import ClockRegression, EmbedderUnavailable, KindMismatch
from .graph import DEFAULT_EDGE_WEIGHTS, EdgeKind, MemoryGraph, NodeKind

logger = logging.getLogger(__name__)

SECONDS_PER_HOUR = 3600.0


@dataclass
class ConsolidationConfig:
    merge_theta: float = 0.85
    lambda_edge: float = 0.005  # per hour, half-life ~139 h
    knn_k: int = 5
    knn_theta: float = 0.3
    prune_floor: float = 0.05
    reinforce_bump: float = 0.1

    def __post_init__(self) -> None:
        for name in ("merge_theta", "knn_theta"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1]")
        if self.knn_k < 1:
            raise ValueError("knn_k must be >= 1")


@dataclass
class ConsolidationReport:
    reinforced: int = 0
    merges: list[tuple[str, str]] = field(default_factory=list)
    decayed_edges: int = 0
    pruned_edges: int = 0
    inferred_edges: list[str] = field(default_factory=list)
    orphans: list[str] = field(default_factory=list)
    degraded: bool = False
    wall_time_ms: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["merges"] = [list(m) for m in self.merges]
        return out


def reinforce(
    graph: MemoryGraph, event_id: str, concept_id: str, now: int, bump: float = 0.1
) -> str:
    """Create or strengthen the REINFORCE edge ``event -> concept``."""
    ev, concept = graph.node(event_id), graph.node(concept_id)
    if ev.kind is not NodeKind.EVENT or concept.kind is not NodeKind.CONCEPT:
        raise KindMismatch(
            f"REINFORCE needs event -> concept, got {ev.kind.value} -> {concept.kind.value}"
        )
    existing = graph.find_edges(EdgeKind.REINFORCE, event_id, concept_id)
    if existing:
        e = existing[0]
        e.weight = min(1.0, e.weight + bump)
        e.last_reinforced_at = max(e.last_reinforced_at, int(now))
        edge_id = e.id
    else:
        edge_id = graph.add_edge(
            EdgeKind.REINFORCE, event_id, concept_id,
            DEFAULT_EDGE_WEIGHTS[EdgeKind.REINFORCE], now=now, provenance=[event_id],
        )
    concept.access_count += 1
    graph.touch(concept_id, now)
    return edge_id


def _keep_order(graph: MemoryGraph, node_id: str) -> tuple:
    # highest access wins; ties go to the older node, then the smaller id
    n = graph.nodes[node_id]
    return (-n.access_count, n.created_at, n.id)


def merge_pass(
    graph: MemoryGraph, embedder: Any, merge_theta: float = 0.85, now: int | None = None
) -> list[tuple[str, str]]:
    """Merge every group of concepts linked by body-embedding cosine >= theta.

    Groups are the connected components of the similarity graph, so chains of
    near-duplicates collapse together; the highest-access member survives.
    Repeats until no concept pair is above threshold.
    """
    if not 0.0 < merge_theta <= 1.0:
        raise ValueError("merge_theta must lie in (0, 1]")
    merges: list[tuple[str, str]] = []
    cache: dict[str, np.ndarray] = {}
    while True:
        concepts = [n.id for n in graph.nodes_of_kind(NodeKind.CONCEPT)]
        if len(concepts) < 2:
            return merges
        for c in concepts:
            if c not in cache:
                cache[c] = embedder.embed(graph.nodes[c].body or graph.nodes[c].title)
        mat = np.vstack([cache[c] for c in concepts])
        sims = mat @ mat.T
        parent = list(range(len(concepts)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        linked = False
        for i in range(len(concepts)):
            for j in range(i + 1, len(concepts)):
                if sims[i, j] >= merge_theta:
                    linked = True
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)
        if not linked:
            return merges
        groups: dict[int, list[str]] = {}
        for i, c in enumerate(concepts):
            groups.setdefault(find(i), []).append(c)
        for members in groups.values():
            if len(members) < 2:
                continue
            members.sort(key=lambda m: _keep_order(graph, m))
            keep = members[0]
            for absorb in members[1:]:
                graph.merge_nodes(keep, absorb, now=now)
                cache.pop(absorb, None)
                merges.append((keep, absorb))


def decay_pass(
    graph: MemoryGraph, now: int, lambda_edge: float = 0.005, prune_floor: float = 0.05
) -> tuple[int, int]:
    """Exponentially decay every edge by the time elapsed since it was last
    reinforced or decayed; prune edges that fall below ``prune_floor``."""
    now = int(now)
    if now < graph.last_consolidated_at:
        raise ClockRegression(
            f"decay at t={now} precedes last consolidation t={graph.last_consolidated_at}"
        )
    decayed = 0
    doomed = []
    for e in graph.iter_edges():
        since = max(e.last_reinforced_at, graph.last_consolidated_at)
        dt = now - since
        if dt <= 0:
            continue
        e.weight *= math.exp(-lambda_edge * dt / SECONDS_PER_HOUR)
        decayed += 1
        if e.weight < prune_floor:
            doomed.append(e.id)
    for edge_id in doomed:
        graph.remove_edge(edge_id)
    graph.last_consolidated_at = now
    return decayed, len(doomed)


def completion_pass(
    graph: MemoryGraph, embedder: Any, knn_k: int = 5, knn_theta: float = 0.3, now: int | None = None
) -> tuple[list[str], list[str]]:
    """Ground zero-edge concepts to their nearest events.

    Returns ``(inferred edge ids, concepts left orphaned)``.
    """
    if knn_k < 1:
        raise ValueError("knn_k must be >= 1")
    orphans = [n for n in graph.nodes_of_kind(NodeKind.CONCEPT) if graph.degree(n.id) == 0]
    if not orphans:
        return [], []
    events = graph.nodes_of_kind(NodeKind.EVENT)
    inferred: list[str] = []
    still: list[str] = []
    if not events:
        return [], [o.id for o in orphans]
    ev_mat = np.vstack([_node_vector(graph, e.id, embedder) for e in events])
    for concept in orphans:
        sims = ev_mat @ _node_vector(graph, concept.id, embedder)
        # stable descending order; ties by event id (events already sorted)
        order = np.argsort(-sims, kind="stable")[:knn_k]
        added = 0
        for idx in order:
            s = float(sims[idx])
            if s < knn_theta:
                break
            when = now if now is not None else max(concept.created_at, events[idx].created_at)
            inferred.append(
                graph.add_edge(
                    EdgeKind.GROUNDS, events[idx].id, concept.id, min(1.0, s),
                    now=when, provenance=[events[idx].id],
                )
            )
            added += 1
        if not added:
            still.append(concept.id)
    return inferred, still


def _node_vector(graph: MemoryGraph, node_id: str, embedder: Any) -> np.ndarray:
    n = graph.nodes[node_id]
    if n.embedding is not None:
        return n.embedding
    return embedder.embed(n.text)


def consolidate(
    graph: MemoryGraph, embedder: Any, config: ConsolidationConfig | None = None, now: int = 0
) -> ConsolidationReport:
    """Run merge -> decay -> completion and aggregate the outcome.

    Embedder failures degrade the pass to decay only.
    """
    cfg = config or ConsolidationConfig()
    start = time.perf_counter()
    report = ConsolidationReport()
    if now < graph.last_consolidated_at:
        raise ClockRegression(
            f"consolidation at t={now} precedes last pass t={graph.last_consolidated_at}"
        )
    report.reinforced = sum(
        1 for e in graph.edges.values()
        if e.kind is EdgeKind.REINFORCE and e.last_reinforced_at > graph.last_consolidated_at
    )
    if embedder is not None:
        try:
            report.merges = merge_pass(graph, embedder, cfg.merge_theta, now)
        except EmbedderUnavailable:
            logger.warning("embedder unavailable; skipping merge")
            report.degraded = True
    else:
        report.degraded = True
    report.decayed_edges, report.pruned_edges = decay_pass(
        graph, now, cfg.lambda_edge, cfg.prune_floor
    )
    if embedder is not None and not report.degraded:
        try:
            report.inferred_edges, report.orphans = completion_pass(
                graph, embedder, cfg.knn_k, cfg.knn_theta, now
            )
        except EmbedderUnavailable:
            logger.warning("embedder unavailable; skipping completion")
            report.degraded = True
    report.wall_time_ms = (time.perf_counter() - start) * 1000.0
    return report
