"""Query-time retrieval: BM25, vector search, reciprocal rank fusion and graph traversal."""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .algorithms import bfs_scores, pagerank
from .errors import DimensionMismatch, EmbedderUnavailable, MissingNode
from .graph import MemoryGraph, NodeKind
from .text import tokenize

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    BM25 = "bm25"
    SEMANTIC = "semantic"
    HYBRID = "hybrid"
    TRAVERSAL = "traversal"
    AUTO = "auto"


@dataclass
class ReadPathConfig:
    k1: float = 1.2
    b: float = 0.75
    rrf_k: int = 60
    bfs_weight: float = 0.6  # remainder goes to personalised PageRank
    hop_decay: float = 0.85
    ppr_damping: float = 0.85
    seed_count: int = 3


@dataclass
class QueryRequest:
    text: str
    mode: Mode = Mode.AUTO
    top_n: int = 10
    node_kinds: frozenset[NodeKind] | None = None
    refine: bool = False
    read_only: bool = False

    def __post_init__(self) -> None:
        self.mode = Mode(self.mode)
        if self.top_n < 1:
            raise ValueError("top_n must be >= 1")
        if self.node_kinds is not None:
            self.node_kinds = frozenset(NodeKind.parse(k) for k in self.node_kinds)


@dataclass
class RankedResult:
    node_id: str
    score: float
    backend: str
    rank: int


@dataclass
class QueryResponse:
    results: list[RankedResult] = field(default_factory=list)
    degraded: bool = False
    flags: list[str] = field(default_factory=list)
    query: str = ""

    def to_rows(self, graph: MemoryGraph) -> list[dict[str, Any]]:
        return [
            {
                "node_id": r.node_id,
                "title": graph.nodes[r.node_id].title,
                "kind": graph.nodes[r.node_id].kind.value,
                "score": r.score,
                "backend": r.backend,
                "rank": r.rank,
            }
            for r in self.results
        ]


def _rank(scores: Mapping[str, float], backend: str, top_n: int | None) -> list[RankedResult]:
    ordered = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    if top_n is not None:
        ordered = ordered[:top_n]
    return [RankedResult(nid, float(s), backend, i + 1) for i, (nid, s) in enumerate(ordered)]


def _candidates(graph: MemoryGraph, kinds: Iterable[NodeKind] | None) -> list[str]:
    allowed = None if kinds is None else set(kinds)
    return [k for k in sorted(graph.nodes) if allowed is None or graph.nodes[k].kind in allowed]


# ------------------------------------------------------------------ BM25


def bm25_scores(
    graph: MemoryGraph,
    query: str,
    *,
    node_kinds: Iterable[NodeKind] | None = None,
    k1: float = 1.2,
    b: float = 0.75,
) -> dict[str, float]:
    """Okapi BM25 over node title + body, positive scores only.

    idf(t) = ln(1 + (N - df + 0.5) / (df + 0.5)), which stays positive for
    terms present in most documents.
    """
    q_terms = tokenize(query)
    if not q_terms:
        return {}
    docs = {k: tokenize(graph.nodes[k].text) for k in _candidates(graph, node_kinds)}
    n = len(docs)
    if n == 0:
        return {}
    avgdl = sum(len(t) for t in docs.values()) / n
    df: Counter = Counter()
    for toks in docs.values():
        df.update(set(toks))
    q_counts = Counter(q_terms)
    out: dict[str, float] = {}
    for doc_id, toks in docs.items():
        tf = Counter(toks)
        dl = len(toks)
        s = 0.0
        for term, qf in q_counts.items():
            f = tf.get(term, 0)
            if not f:
                continue
            idf = math.log(1.0 + (n - df[term] + 0.5) / (df[term] + 0.5))
            norm = 1.0 - b + b * (dl / avgdl if avgdl else 0.0)
            s += qf * idf * f * (k1 + 1.0) / (f + k1 * norm)
        if s > 0:
            out[doc_id] = s
    return out


def bm25_search(
    graph: MemoryGraph, query: str, top_n: int = 10, *, node_kinds: Iterable[NodeKind] | None = None,
    k1: float = 1.2, b: float = 0.75,
) -> list[RankedResult]:
    return _rank(bm25_scores(graph, query, node_kinds=node_kinds, k1=k1, b=b), "bm25", top_n)


# ---------------------------------------------------------------- vectors


def vector_search(
    graph: MemoryGraph, query_embedding: Any, top_n: int = 10, *, node_kinds: Iterable[NodeKind] | None = None
) -> list[RankedResult]:
    """Exact cosine top-n over nodes that carry an embedding."""
    q = np.asarray(query_embedding, dtype=np.float64).ravel()
    dim = graph.embedding_dim
    if dim is None:
        return []
    if q.size != dim:
        raise DimensionMismatch(f"query has dimension {q.size}, graph uses {dim}")
    norm = float(np.linalg.norm(q))
    if norm == 0.0:
        return []
    q = q / norm
    ids = [k for k in _candidates(graph, node_kinds) if graph.nodes[k].embedding is not None]
    if not ids:
        return []
    sims = np.vstack([graph.nodes[k].embedding for k in ids]) @ q
    return _rank(dict(zip(ids, sims.tolist())), "semantic", top_n)


# -------------------------------------------------------------------- RRF


def rrf_fuse(
    rankings: Sequence[Sequence[RankedResult | str]], k: int = 60, top_n: int | None = None,
    backend: str = "rrf",
) -> list[RankedResult]:
    """Score each item by the sum over lists of ``1 / (k + rank)``."""
    if not rankings:
        raise ValueError("rrf_fuse needs at least one ranking")
    scores: dict[str, float] = {}
    for ranking in rankings:
        for pos, item in enumerate(ranking, start=1):
            node_id, rank = (item, pos) if isinstance(item, str) else (item.node_id, item.rank)
            scores[node_id] = scores.get(node_id, 0.0) + 1.0 / (k + rank)
    return _rank(scores, backend, top_n)


# -------------------------------------------------------------- traversal


def _minmax(values: Mapping[str, float]) -> dict[str, float]:
    if not values:
        return {}
    lo, hi = min(values.values()), max(values.values())
    if hi - lo <= 0:
        return {k: 1.0 for k in values}
    return {k: (v - lo) / (hi - lo) for k, v in values.items()}


def traversal_scores(
    graph: MemoryGraph,
    seed_ids: Sequence[str],
    *,
    bfs_weight: float = 0.6,
    hop_decay: float = 0.85,
    damping: float = 0.85,
) -> dict[str, float]:
    """Blend of min-max normalised BFS hop decay and seeded PageRank over
    the nodes reachable from the seeds (edges taken as undirected)."""
    seeds = list(dict.fromkeys(seed_ids))
    if not seeds:
        return {}
    for s in seeds:
        if s not in graph.nodes:
            raise MissingNode(f"no node {s!r}")
    bfs = bfs_scores(graph, seeds, hop_decay)
    ppr = pagerank(
        graph, damping=damping, personalization={s: 1.0 for s in seeds}, undirected=True
    ).scores
    reach = sorted(bfs)
    bfs_n = _minmax({k: bfs[k] for k in reach})
    ppr_n = _minmax({k: ppr[k] for k in reach})
    return {k: bfs_weight * bfs_n[k] + (1.0 - bfs_weight) * ppr_n[k] for k in reach}


def traverse(
    graph: MemoryGraph, seed_ids: Sequence[str], top_n: int | None = 10, *,
    node_kinds: Iterable[NodeKind] | None = None, config: ReadPathConfig | None = None,
) -> list[RankedResult]:
    cfg = config or ReadPathConfig()
    scores = traversal_scores(
        graph, seed_ids, bfs_weight=cfg.bfs_weight, hop_decay=cfg.hop_decay, damping=cfg.ppr_damping
    )
    if node_kinds is not None:
        allowed = set(node_kinds)
        scores = {k: v for k, v in scores.items() if graph.nodes[k].kind in allowed}
    return _rank(scores, "traversal", top_n)


# ------------------------------------------------------------------ query


def bump_access(graph: MemoryGraph, node_ids: Iterable[str], now: int | None = None) -> None:
    for nid in node_ids:
        node = graph.nodes[nid]
        graph.touch(nid, node.last_accessed_at if now is None else now, count=True)


def query(
    graph: MemoryGraph,
    request: QueryRequest,
    embedder: Any = None,
    *,
    planner: Any = None,
    config: ReadPathConfig | None = None,
    now: int | None = None,
) -> QueryResponse:
    """Run one retrieval request; backend failures degrade to BM25 rather than raise."""
    cfg = config or ReadPathConfig()
    resp = QueryResponse(query=request.text)
    text = request.text
    if request.refine:
        rewrite = getattr(planner, "rewrite_query", None)
        if rewrite is None:
            resp.flags.append("refine_unavailable")
        else:
            try:
                text = str(rewrite(text)) or text
                resp.query = text
            except Exception as exc:  # refinement is best effort
                logger.warning("query refinement failed: %s", exc)
                resp.flags.append("refine_failed")

    kinds = request.node_kinds
    mode = request.mode
    bm25 = lambda n: bm25_search(graph, text, n, node_kinds=kinds, k1=cfg.k1, b=cfg.b)  # noqa: E731

    if mode is Mode.BM25:
        results = bm25(request.top_n)
    else:
        vec: list[RankedResult] | None = None
        if embedder is None:
            resp.flags.append("embedder_unavailable")
        else:
            try:
                vec = vector_search(graph, embedder.embed(text), None, node_kinds=kinds)
            except (EmbedderUnavailable, DimensionMismatch) as exc:
                logger.warning("vector backend unavailable: %s", exc)
                resp.flags.append("embedder_unavailable")
        resp.degraded = vec is None
        if vec is None and mode is not Mode.TRAVERSAL:
            results = bm25(request.top_n)
        elif mode is Mode.SEMANTIC:
            results = vec[: request.top_n]
        else:
            lexical = bm25(None)
            hybrid = rrf_fuse([lexical, vec], cfg.rrf_k, None, "hybrid") if vec is not None else lexical
            if mode is Mode.HYBRID:
                results = hybrid[: request.top_n]
            else:
                seeds = [r.node_id for r in hybrid[: cfg.seed_count]]
                trav = traverse(graph, seeds, None, node_kinds=kinds, config=cfg) if seeds else []
                if mode is Mode.TRAVERSAL:
                    results = trav[: request.top_n]
                else:
                    results = rrf_fuse([hybrid, trav], cfg.rrf_k, request.top_n, "auto")
    resp.results = results
    if not request.read_only:
        bump_access(graph, (r.node_id for r in results), now)
    return resp
