"""Track A/B/C structural metrics over a memory graph."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Any, Mapping, Sequence

import numpy as np

from ..algorithms import hop_distances, pagerank
from ..errors import MissingProvenance
from ..graph import EdgeKind, MemoryGraph, NodeKind
from ..providers.base import JUDGE_KEYS
from .schema import EventFixture, GoldGraph

GROUNDING_KINDS = (EdgeKind.GROUNDS, EdgeKind.REINFORCE)

# ------------------------------------------------------------ assignment


def hungarian(weights: np.ndarray) -> list[tuple[int, int]]:
    """Maximum-weight one-to-one assignment (Kuhn-Munkres with potentials).

    Works on rectangular matrices; returns ``(row, col)`` pairs covering
    ``min(rows, cols)`` assignments, sorted by row.
    """
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 2:
        raise ValueError("weights must be a matrix")
    rows, cols = w.shape
    if rows == 0 or cols == 0:
        return []
    transposed = rows > cols
    if transposed:
        w = w.T
        rows, cols = cols, rows
    cost = w.max() - w  # minimise cost <=> maximise weight
    inf = math.inf
    u = [0.0] * (rows + 1)
    v = [0.0] * (cols + 1)
    match = [0] * (cols + 1)  # match[j] = row (1-based) assigned to column j
    way = [0] * (cols + 1)
    for i in range(1, rows + 1):
        match[0] = i
        j0 = 0
        minv = [inf] * (cols + 1)
        used = [False] * (cols + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta, j1 = inf, 0
            for j in range(1, cols + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta, j1 = minv[j], j
            for j in range(cols + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    pairs = [(match[j] - 1, j - 1) for j in range(1, cols + 1) if match[j]]
    if transposed:
        pairs = [(c, r) for r, c in pairs]
    return sorted(pairs)


def similarity_matrix(system_texts: Sequence[str], gold_texts: Sequence[str], embedder: Any) -> np.ndarray:
    if not system_texts or not gold_texts:
        return np.zeros((len(system_texts), len(gold_texts)))
    a = np.vstack([embedder.embed(t) for t in system_texts])
    b = np.vstack([embedder.embed(t) for t in gold_texts])
    return a @ b.T


@dataclass
class GoldMatch:
    precision: float
    recall: float
    f1: float
    matching: list[tuple[int, int, float]] = field(default_factory=list)

    @property
    def weight(self) -> float:
        return float(sum(s for _, _, s in self.matching))


def match_thresholded(sims: np.ndarray, theta: float) -> GoldMatch:
    """Hungarian matching after zeroing similarities below ``theta``."""
    if not 0.0 < theta <= 1.0:
        raise ValueError("theta must lie in (0, 1]")
    n_sys, n_gold = sims.shape
    gated = np.where(sims >= theta, sims, 0.0)
    pairs = [(i, j, float(gated[i, j])) for i, j in hungarian(gated) if gated[i, j] > 0.0]
    m = len(pairs)
    p = m / n_sys if n_sys else 0.0
    r = m / n_gold if n_gold else 0.0
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return GoldMatch(p, r, f1, pairs)


def system_concept_texts(graph: MemoryGraph) -> list[str]:
    return [n.text for n in graph.nodes_of_kind(NodeKind.CONCEPT)]


def gold_f1(system_concepts: Sequence[str], gold: GoldGraph, embedder: Any, theta: float = 0.75) -> GoldMatch:
    sims = similarity_matrix(list(system_concepts), [c.text for c in gold.concepts], embedder)
    return match_thresholded(sims, theta)


def harmony(gold_f1_value: float, llm_quality: float) -> float:
    s = gold_f1_value + llm_quality
    return 2.0 * gold_f1_value * llm_quality / s if s > 0 else 0.0


# ------------------------------------------------------------ Track A extras


def grounding_events_of(graph: MemoryGraph, concept_id: str) -> list[str]:
    return sorted({
        e.src for e in graph.in_edges(concept_id)
        if e.kind in GROUNDING_KINDS and graph.nodes[e.src].kind is NodeKind.EVENT
    })


def purity(graph: MemoryGraph, embedder: Any) -> float:
    """Mean over concepts (with >= 2 grounding events) of the mean pairwise
    cosine between those events' texts."""
    per_concept = []
    for c in graph.nodes_of_kind(NodeKind.CONCEPT):
        events = grounding_events_of(graph, c.id)
        if len(events) < 2:
            continue
        mat = np.vstack([embedder.embed(graph.nodes[e].text) for e in events])
        sims = mat @ mat.T
        iu = np.triu_indices(len(events), k=1)
        per_concept.append(float(sims[iu].mean()))
    return float(np.mean(per_concept)) if per_concept else 0.0


def llm_quality(graph: MemoryGraph, judge: Any, scenario_context: str = "") -> float:
    ratings = []
    for c in graph.nodes_of_kind(NodeKind.CONCEPT):
        summaries = [graph.nodes[e].title for e in grounding_events_of(graph, c.id)]
        r = judge.rate(c.title, summaries, scenario_context)
        ratings.append(sum(r[k] for k in JUDGE_KEYS) / len(JUDGE_KEYS))
    return float(np.mean(ratings)) if ratings else 0.0


# ------------------------------------------------------------ Track B


def fixture_nodes(graph: MemoryGraph) -> dict[int, str]:
    out = {}
    for n in graph.nodes_of_kind(NodeKind.EVENT):
        idx = n.metadata.get("fixture_index")
        if idx is not None:
            out[int(idx)] = n.id
    return out


def chain_discovery(graph: MemoryGraph, gold: GoldGraph, fixture: EventFixture | None = None) -> float:
    """Share of planted chains whose first and last events are connected."""
    if not gold.chains:
        return 0.0
    index = fixture_nodes(graph)
    found = 0
    for chain in gold.chains:
        ends = (chain[0], chain[-1])
        missing = [i for i in ends if i not in index]
        if missing:
            raise MissingProvenance(f"no event node carries fixture_index {missing[0]}")
        if index[ends[1]] in hop_distances(graph, [index[ends[0]]]):
            found += 1
    return found / len(gold.chains)


def undirected_weights(graph: MemoryGraph) -> dict[str, dict[str, float]]:
    """Undirected weighted projection; parallel edges sum, self-loops dropped."""
    adj: dict[str, dict[str, float]] = {k: {} for k in sorted(graph.nodes)}
    for e in graph.edges.values():
        if e.src == e.dst:
            continue
        adj[e.src][e.dst] = adj[e.src].get(e.dst, 0.0) + e.weight
        adj[e.dst][e.src] = adj[e.dst].get(e.src, 0.0) + e.weight
    return adj


def average_clustering(adj: Mapping[str, Mapping[str, float]]) -> float:
    """Average local clustering coefficient of the unweighted simple graph."""
    if not adj:
        return 0.0
    total = 0.0
    for node, nbrs in adj.items():
        k = len(nbrs)
        if k < 2:
            continue
        nb = list(nbrs)
        links = sum(1 for a, b in combinations(nb, 2) if b in adj[a])
        total += 2.0 * links / (k * (k - 1))
    return total / len(adj)


def modularity_of(adj: Mapping[str, Mapping[str, float]], communities: Sequence[Sequence[str]]) -> float:
    """Newman Q of a partition of a weighted undirected graph."""
    two_m = sum(sum(n.values()) for n in adj.values())
    if two_m == 0:
        return 0.0
    q = 0.0
    for comm in communities:
        # walk members in sorted order: float sums must not depend on set hashing
        ordered = sorted(set(comm))
        members = set(ordered)
        internal = sum(w for a in ordered for b, w in adj[a].items() if b in members)
        degree = sum(sum(adj[a].values()) for a in ordered)
        q += internal / two_m - (degree / two_m) ** 2
    return q


def greedy_modularity(adj: Mapping[str, Mapping[str, float]]) -> tuple[float, list[list[str]]]:
    """Agglomerative modularity maximisation.

    Starting from singletons, repeatedly merges the connected pair of
    communities with the largest modularity gain while the gain is positive.
    Ties go to the pair whose smallest member ids sort first.
    """
    nodes = sorted(adj)
    two_m = sum(sum(n.values()) for n in adj.values())
    if two_m == 0:
        return 0.0, [[n] for n in nodes]
    comm_of = {n: i for i, n in enumerate(nodes)}
    members: dict[int, list[str]] = {i: [n] for i, n in enumerate(nodes)}
    degree = {i: sum(adj[n].values()) for i, n in enumerate(nodes)}
    while True:
        between: dict[tuple[int, int], float] = {}
        for a in nodes:
            ca = comm_of[a]
            for b, w in adj[a].items():
                cb = comm_of[b]
                if ca < cb:
                    between[(ca, cb)] = between.get((ca, cb), 0.0) + w
        best, best_key, best_pair = 0.0, None, None
        for (ci, cj), w in between.items():
            # w counts each crossing edge once (only the a->b direction with ca < cb)
            gain = 2.0 * (w / two_m - degree[ci] * degree[cj] / two_m**2)
            key = tuple(sorted((members[ci][0], members[cj][0])))
            if gain > best + 1e-15 or (best_pair is not None and abs(gain - best) <= 1e-15 and key < best_key):
                best, best_key, best_pair = gain, key, (ci, cj)
        if best_pair is None or best <= 0.0:
            break
        ci, cj = best_pair
        members[ci] = sorted(members[ci] + members.pop(cj))
        degree[ci] += degree.pop(cj)
        for n in members[ci]:
            comm_of[n] = ci
    partition = sorted(members.values(), key=lambda m: m[0])
    return modularity_of(adj, partition), partition


def edge_entropy(graph: MemoryGraph) -> float:
    """Shannon entropy of the edge-kind distribution divided by ln 9."""
    counts: dict[EdgeKind, int] = {}
    for e in graph.edges.values():
        counts[e.kind] = counts.get(e.kind, 0) + 1
    total = sum(counts.values())
    if total == 0:
        return 0.0
    h = -sum((c / total) * math.log(c / total) for c in counts.values())
    return max(0.0, h / math.log(len(EdgeKind)))


def topology_metrics(graph: MemoryGraph) -> dict[str, float]:
    adj = undirected_weights(graph)
    q, _ = greedy_modularity(adj)
    return {
        "clustering": average_clustering(adj),
        "modularity": q,
        "edge_entropy": edge_entropy(graph),
    }


# ------------------------------------------------------------ Track C


def gini(values: Sequence[float]) -> float:
    x = np.sort(np.asarray(values, dtype=np.float64))
    n = x.size
    if n == 0 or x.sum() <= 0:
        return 0.0
    ranks = np.arange(1, n + 1)
    return float(np.sum((2 * ranks - n - 1) * x) / (n * x.sum()))


def compression_and_proactivity(graph: MemoryGraph, fixture: EventFixture | int) -> dict[str, float]:
    n_events = fixture if isinstance(fixture, int) else len(fixture)
    n_concepts = len(graph.nodes_of_kind(NodeKind.CONCEPT))
    intents = graph.nodes_of_kind(NodeKind.INTENT)
    supported = sum(
        1 for i in intents
        if sum(1 for e in graph.in_edges(i.id) if e.kind in (EdgeKind.TRIGGERS, EdgeKind.GROUNDS)) >= 2
    )
    pr = pagerank(graph).scores
    return {
        "compression_ratio": n_events / n_concepts if n_concepts else math.inf,
        "pagerank_gini": gini(list(pr.values())),
        "proactivity": supported / len(intents) if intents else 0.0,
    }


# ------------------------------------------------------------ aggregate


@dataclass
class TrackScores:
    gold_f1: float = 0.0
    llm_quality: float = 0.0
    harmony: float = 0.0
    purity: float = 0.0
    chain_discovery: float = 0.0
    clustering: float = 0.0
    modularity: float = 0.0
    edge_entropy: float = 0.0
    compression_ratio: float = math.inf
    pagerank_gini: float = 0.0
    proactivity: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        if math.isinf(self.compression_ratio):
            out["compression_ratio"] = None  # no concepts
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> TrackScores:
        values = dict(data)
        if values.get("compression_ratio") is None:
            values["compression_ratio"] = math.inf
        return cls(**{k: float(v) for k, v in values.items()})


def evaluate_scenario(
    graph: MemoryGraph,
    gold: GoldGraph,
    fixture: EventFixture,
    embedder: Any,
    judge: Any,
    theta: float = 0.75,
) -> TrackScores:
    match = gold_f1(system_concept_texts(graph), gold, embedder, theta)
    quality = llm_quality(graph, judge, gold.domain)
    topo = topology_metrics(graph)
    track_c = compression_and_proactivity(graph, fixture)
    return TrackScores(
        gold_f1=match.f1,
        llm_quality=quality,
        harmony=harmony(match.f1, quality),
        purity=purity(graph, embedder),
        chain_discovery=chain_discovery(graph, gold, fixture),
        **topo,
        **track_c,
    )


def sensitivity_sweep(
    graph: MemoryGraph,
    gold: GoldGraph,
    embedder: Any,
    judge: Any,
    thetas: Sequence[float] = (0.65, 0.70, 0.75, 0.80, 0.85),
) -> list[dict[str, float]]:
    """Gold F1 and Harmony per matching threshold; judge scores are computed once."""
    quality = llm_quality(graph, judge, gold.domain)
    sims = similarity_matrix(system_concept_texts(graph), [c.text for c in gold.concepts], embedder)
    rows = []
    for theta in thetas:
        m = match_thresholded(sims, theta)
        rows.append({"theta": float(theta), "gold_f1": m.f1, "llm_quality": quality, "harmony": harmony(m.f1, quality)})
    return rows
