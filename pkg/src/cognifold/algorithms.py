"""Graph algorithms over :class:`MemoryGraph`: weighted PageRank and BFS."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np
from scipy import sparse

from .errors import MissingNode
from .graph import MemoryGraph, TypedEdge

DAMPING = 0.85
TOL = 1e-9
MAX_ITER = 200


@dataclass
class PageRankResult:
    scores: dict[str, float]
    converged: bool
    iterations: int


def transition_matrix(
    graph: MemoryGraph, order: list[str], *, undirected: bool = False
) -> sparse.csr_matrix:
    """Weighted adjacency (rows = source) over ``order``; parallel edges add up."""
    index = {node_id: i for i, node_id in enumerate(order)}
    rows, cols, vals = [], [], []
    for e in graph.edges.values():
        i, j = index[e.src], index[e.dst]
        rows.append(i)
        cols.append(j)
        vals.append(e.weight)
        if undirected:
            rows.append(j)
            cols.append(i)
            vals.append(e.weight)
    n = len(order)
    return sparse.csr_matrix((vals, (rows, cols)), shape=(n, n), dtype=np.float64)


def pagerank(
    graph: MemoryGraph,
    damping: float = DAMPING,
    tol: float = TOL,
    max_iter: int = MAX_ITER,
    personalization: Mapping[str, float] | None = None,
    *,
    undirected: bool = False,
) -> PageRankResult:
    """Power-iteration PageRank with edge weights as transition weights.

    Dangling nodes spread their mass uniformly. ``personalization`` sets the
    teleport distribution (uniform when absent). On non-convergence the last
    iterate is returned with ``converged=False``.
    """
    if not 0.0 < damping < 1.0:
        raise ValueError("damping must lie in (0, 1)")
    order = sorted(graph.nodes)
    n = len(order)
    if n == 0:
        return PageRankResult({}, True, 0)
    adj = transition_matrix(graph, order, undirected=undirected)
    out_weight = np.asarray(adj.sum(axis=1)).ravel()
    dangling = out_weight == 0
    inv = np.zeros(n)
    inv[~dangling] = 1.0 / out_weight[~dangling]
    walk = sparse.diags(inv) @ adj  # row-stochastic except dangling rows

    if personalization:
        tele = np.array([max(0.0, float(personalization.get(k, 0.0))) for k in order])
        if tele.sum() <= 0:
            raise ValueError("personalization vector has no positive mass")
        tele /= tele.sum()
    else:
        tele = np.full(n, 1.0 / n)
    uniform = np.full(n, 1.0 / n)

    x = tele.copy()
    converged = False
    it = 0
    walk_t = walk.T.tocsr()
    for it in range(1, max_iter + 1):
        nxt = damping * (walk_t @ x + x[dangling].sum() * uniform) + (1.0 - damping) * tele
        nxt /= nxt.sum()
        delta = float(np.abs(nxt - x).sum())
        x = nxt
        if delta < tol:
            converged = True
            break
    return PageRankResult(dict(zip(order, x.tolist())), converged, it)


EdgeFilter = Callable[[TypedEdge], bool]


def _undirected_neighbors(graph: MemoryGraph, node_id: str, edge_filter: EdgeFilter | None):
    for edge_id in sorted(graph.out_adj[node_id] | graph.in_adj[node_id]):
        e = graph.edges[edge_id]
        if edge_filter is not None and not edge_filter(e):
            continue
        yield e.dst if e.src == node_id else e.src


def _directed_neighbors(graph: MemoryGraph, node_id: str, edge_filter: EdgeFilter | None):
    for edge_id in sorted(graph.out_adj[node_id]):
        e = graph.edges[edge_id]
        if edge_filter is None or edge_filter(e):
            yield e.dst


def hop_distances(
    graph: MemoryGraph,
    seeds: Iterable[str],
    *,
    edge_filter: EdgeFilter | None = None,
    directed: bool = False,
) -> dict[str, int]:
    """Multi-source BFS hop counts from the nearest seed."""
    seeds = list(dict.fromkeys(seeds))
    for s in seeds:
        if s not in graph.nodes:
            raise MissingNode(f"no node {s!r}")
    step = _directed_neighbors if directed else _undirected_neighbors
    dist = {s: 0 for s in seeds}
    queue = deque(seeds)
    while queue:
        cur = queue.popleft()
        for nb in step(graph, cur, edge_filter):
            if nb not in dist:
                dist[nb] = dist[cur] + 1
                queue.append(nb)
    return dist


def bfs_reachable(
    graph: MemoryGraph,
    src: str,
    dst: str,
    edge_filter: EdgeFilter | None = None,
    *,
    directed: bool = False,
) -> bool:
    if dst not in graph.nodes:
        raise MissingNode(f"no node {dst!r}")
    return dst in hop_distances(graph, [src], edge_filter=edge_filter, directed=directed)


def bfs_scores(graph: MemoryGraph, seeds: Iterable[str], hop_decay: float = 0.85) -> dict[str, float]:
    """Score every node reachable (undirected) from the seeds as ``hop_decay ** hops``."""
    if not 0.0 < hop_decay <= 1.0:
        raise ValueError("hop_decay must lie in (0, 1]")
    return {k: hop_decay**h for k, h in hop_distances(graph, seeds).items()}
