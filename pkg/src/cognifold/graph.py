"""Typed directed multigraph holding the memory substrate.

Nodes are Events, Concepts, Intents and Time anchors; edges carry one of nine
ontology kinds with a weight in (0, 1].  Every mutation goes through
:class:`MemoryGraph` so the adjacency indexes always mirror the edge store.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Iterator, Mapping

import numpy as np

from .errors import (
    CorruptSnapshot,
    DimensionMismatch,
    IllegalTransition,
    ImmutableField,
    IncompatibleEndpoints,
    InvalidExtras,
    InvalidWeight,
    KindMismatch,
    MissingEdge,
    MissingEndpoint,
    MissingNode,
    SelfMerge,
)

SNAPSHOT_VERSION = 1
UNIT_NORM_TOL = 1e-6


class NodeKind(str, Enum):
    EVENT = "event"
    CONCEPT = "concept"
    INTENT = "intent"
    TIME = "time"

    @classmethod
    def parse(cls, value: str | NodeKind) -> NodeKind:
        if isinstance(value, NodeKind):
            return value
        return cls(str(value).strip().lower())


class EdgeKind(str, Enum):
    GROUNDS = "GROUNDS"
    CAUSES = "CAUSES"
    TRIGGERS = "TRIGGERS"
    REINFORCE = "REINFORCE"
    PART_OF = "PART_OF"
    DERIVED_FROM = "DERIVED_FROM"
    DEADLINE_FOR = "DEADLINE_FOR"
    RELATE_TO = "RELATE_TO"
    USER_FEEDBACK = "USER_FEEDBACK"

    @classmethod
    def parse(cls, value: str | EdgeKind) -> EdgeKind:
        if isinstance(value, EdgeKind):
            return value
        return cls(str(value).strip().upper())


class IntentStatus(str, Enum):
    PENDING = "pending"
    RESOLVED = "resolved"
    REJECTED = "rejected"
    DEFERRED = "deferred"


_E, _C, _I, _T = NodeKind.EVENT, NodeKind.CONCEPT, NodeKind.INTENT, NodeKind.TIME

# (allowed source kinds, allowed target kinds) per edge kind
ONTOLOGY: dict[EdgeKind, tuple[frozenset[NodeKind], frozenset[NodeKind]]] = {
    EdgeKind.GROUNDS: (frozenset({_E}), frozenset({_C, _I})),
    EdgeKind.CAUSES: (frozenset({_E}), frozenset({_E})),
    EdgeKind.TRIGGERS: (frozenset({_C}), frozenset({_I})),
    EdgeKind.REINFORCE: (frozenset({_E}), frozenset({_C})),
    EdgeKind.PART_OF: (frozenset({_C}), frozenset({_C})),
    EdgeKind.DERIVED_FROM: (frozenset({_C}), frozenset({_C})),
    EdgeKind.DEADLINE_FOR: (frozenset({_T}), frozenset({_I})),
    EdgeKind.RELATE_TO: (frozenset({_C, _E}), frozenset({_C, _E})),
    EdgeKind.USER_FEEDBACK: (frozenset({_E}), frozenset({_I})),
}

DEFAULT_EDGE_WEIGHTS: dict[EdgeKind, float] = {
    EdgeKind.GROUNDS: 0.9,
    EdgeKind.CAUSES: 0.9,
    EdgeKind.TRIGGERS: 0.8,
    EdgeKind.USER_FEEDBACK: 0.8,
    EdgeKind.REINFORCE: 0.7,
    EdgeKind.PART_OF: 0.7,
    EdgeKind.DERIVED_FROM: 0.6,
    EdgeKind.DEADLINE_FOR: 0.6,
    EdgeKind.RELATE_TO: 0.5,
}

LEGAL_TRANSITIONS: dict[IntentStatus, frozenset[IntentStatus]] = {
    IntentStatus.PENDING: frozenset(
        {IntentStatus.RESOLVED, IntentStatus.REJECTED, IntentStatus.DEFERRED}
    ),
    IntentStatus.DEFERRED: frozenset({IntentStatus.PENDING}),
    IntentStatus.RESOLVED: frozenset(),
    IntentStatus.REJECTED: frozenset(),
}


def endpoints_compatible(kind: EdgeKind, src_kind: NodeKind, dst_kind: NodeKind) -> bool:
    sources, targets = ONTOLOGY[kind]
    return src_kind in sources and dst_kind in targets


def check_transition(old: IntentStatus, new: IntentStatus) -> None:
    if new not in LEGAL_TRANSITIONS[old]:
        raise IllegalTransition(f"intent status {old.value} -> {new.value} is not allowed")


def as_unit_vector(values: Iterable[float] | np.ndarray) -> np.ndarray:
    """Return a read-only float64 copy, rejecting vectors that are not unit length."""
    arr = np.array(values, dtype=np.float64).reshape(-1)
    norm = float(np.linalg.norm(arr))
    if arr.size == 0 or abs(norm - 1.0) > UNIT_NORM_TOL:
        raise InvalidExtras(f"embedding must have unit L2 norm (got {norm:.8f})")
    arr.flags.writeable = False
    return arr


@dataclass
class Node:
    id: str
    kind: NodeKind
    title: str
    body: str
    created_at: int
    last_accessed_at: int
    access_count: int = 0
    embedding: np.ndarray | None = None
    intent_status: IntentStatus | None = None
    deadline_at: int | None = None
    metadata: dict[str, str] = field(default_factory=dict)

    @property
    def text(self) -> str:
        return f"{self.title}\n{self.body}".strip()

    def copy(self) -> Node:
        # embeddings are read-only arrays, so sharing them is safe
        return Node(
            id=self.id,
            kind=self.kind,
            title=self.title,
            body=self.body,
            created_at=self.created_at,
            last_accessed_at=self.last_accessed_at,
            access_count=self.access_count,
            embedding=self.embedding,
            intent_status=self.intent_status,
            deadline_at=self.deadline_at,
            metadata=dict(self.metadata),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "kind": self.kind.value,
            "title": self.title,
            "body": self.body,
            "created_at": self.created_at,
            "last_accessed_at": self.last_accessed_at,
            "access_count": self.access_count,
            "embedding": None if self.embedding is None else [float(x) for x in self.embedding],
            "intent_status": None if self.intent_status is None else self.intent_status.value,
            "deadline_at": self.deadline_at,
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Node:
        emb = data.get("embedding")
        status = data.get("intent_status")
        return cls(
            id=str(data["id"]),
            kind=NodeKind.parse(data["kind"]),
            title=str(data["title"]),
            body=str(data["body"]),
            created_at=int(data["created_at"]),
            last_accessed_at=int(data["last_accessed_at"]),
            access_count=int(data["access_count"]),
            embedding=None if emb is None else _frozen(emb),
            intent_status=None if status is None else IntentStatus(status),
            deadline_at=None if data.get("deadline_at") is None else int(data["deadline_at"]),
            metadata={str(k): str(v) for k, v in (data.get("metadata") or {}).items()},
        )


def _frozen(values: Iterable[float]) -> np.ndarray:
    arr = np.array(list(values), dtype=np.float64)
    arr.flags.writeable = False
    return arr


@dataclass
class TypedEdge:
    id: str
    kind: EdgeKind
    src: str
    dst: str
    weight: float
    created_at: int
    last_reinforced_at: int
    provenance: list[str] = field(default_factory=list)

    def copy(self) -> TypedEdge:
        return TypedEdge(
            self.id, self.kind, self.src, self.dst, self.weight,
            self.created_at, self.last_reinforced_at, list(self.provenance),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "kind": self.kind.value,
            "src": self.src,
            "dst": self.dst,
            "weight": self.weight,
            "created_at": self.created_at,
            "last_reinforced_at": self.last_reinforced_at,
            "provenance": list(self.provenance),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> TypedEdge:
        return cls(
            id=str(data["id"]),
            kind=EdgeKind.parse(data["kind"]),
            src=str(data["src"]),
            dst=str(data["dst"]),
            weight=float(data["weight"]),
            created_at=int(data["created_at"]),
            last_reinforced_at=int(data["last_reinforced_at"]),
            provenance=[str(p) for p in data.get("provenance") or []],
        )


@dataclass
class MergeReport:
    keep: str
    absorbed: str
    rewired: list[str] = field(default_factory=list)
    collapsed: list[str] = field(default_factory=list)
    dropped: list[str] = field(default_factory=list)


class Snapshot:
    """Self-contained copy of a graph's state.

    Holds deep copies of nodes and edges; ``to_json`` produces the canonical
    byte-stable form used for persistence and equality checks.
    """

    __slots__ = ("nodes", "edges", "last_consolidated_at", "next_node", "next_edge")

    def __init__(
        self,
        nodes: dict[str, Node],
        edges: dict[str, TypedEdge],
        last_consolidated_at: int,
        next_node: int,
        next_edge: int,
    ):
        self.nodes = nodes
        self.edges = edges
        self.last_consolidated_at = last_consolidated_at
        self.next_node = next_node
        self.next_edge = next_edge

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": SNAPSHOT_VERSION,
            "nodes": [self.nodes[k].to_dict() for k in sorted(self.nodes)],
            "edges": [self.edges[k].to_dict() for k in sorted(self.edges)],
            "last_consolidated_at": self.last_consolidated_at,
            "counters": {"node": self.next_node, "edge": self.next_edge},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), allow_nan=False)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Snapshot:
        try:
            if data.get("version") != SNAPSHOT_VERSION:
                raise CorruptSnapshot(f"unsupported snapshot version {data.get('version')!r}")
            nodes = {n.id: n for n in (Node.from_dict(d) for d in data["nodes"])}
            edges = {e.id: e for e in (TypedEdge.from_dict(d) for d in data["edges"])}
            counters = data.get("counters") or {}
            next_node = int(counters.get("node", _max_seq(nodes) + 1))
            next_edge = int(counters.get("edge", _max_seq(edges) + 1))
            last = int(data.get("last_consolidated_at", 0))
        except CorruptSnapshot:
            raise
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise CorruptSnapshot(f"cannot decode snapshot: {exc!r}") from exc
        for e in edges.values():
            if e.src not in nodes or e.dst not in nodes:
                raise CorruptSnapshot(f"edge {e.id} has a dangling endpoint")
        return cls(nodes, edges, last, next_node, next_edge)

    @classmethod
    def from_json(cls, text: str | bytes) -> Snapshot:
        try:
            data = json.loads(text)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise CorruptSnapshot(f"snapshot is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise CorruptSnapshot("snapshot root must be an object")
        return cls.from_dict(data)


def _max_seq(items: Mapping[str, Any]) -> int:
    best = 0
    for key in items:
        digits = "".join(ch for ch in key if ch.isdigit())
        if digits:
            best = max(best, int(digits))
    return best


_NODE_PATCHABLE = {"title", "body", "metadata", "embedding", "intent_status", "deadline_at"}


class MemoryGraph:
    """Node store, edge store and adjacency indexes.

    Single-writer: callers serialize mutations. Node and edge ids are
    monotone counters and are never reused after removal.
    """

    def __init__(self) -> None:
        self.nodes: dict[str, Node] = {}
        self.edges: dict[str, TypedEdge] = {}
        self.out_adj: dict[str, set[str]] = {}
        self.in_adj: dict[str, set[str]] = {}
        self.last_consolidated_at: int = 0
        self._next_node = 1
        self._next_edge = 1
        self._dim: int | None = None

    # ------------------------------------------------------------------ nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node_id: object) -> bool:
        return node_id in self.nodes

    def node(self, node_id: str) -> Node:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise MissingNode(f"no node {node_id!r}") from None

    def edge(self, edge_id: str) -> TypedEdge:
        try:
            return self.edges[edge_id]
        except KeyError:
            raise MissingEdge(f"no edge {edge_id!r}") from None

    def nodes_of_kind(self, kind: NodeKind) -> list[Node]:
        return [self.nodes[k] for k in sorted(self.nodes) if self.nodes[k].kind is kind]

    @property
    def embedding_dim(self) -> int | None:
        return self._dim

    def _check_embedding(self, embedding: Any) -> np.ndarray:
        arr = as_unit_vector(embedding)
        if self._dim is None:
            self._dim = arr.size
        elif arr.size != self._dim:
            raise DimensionMismatch(f"embedding has dimension {arr.size}, graph uses {self._dim}")
        return arr

    def add_node(
        self,
        kind: NodeKind | str,
        title: str,
        body: str,
        created_at: int,
        *,
        embedding: Any = None,
        intent_status: IntentStatus | str | None = None,
        deadline_at: int | None = None,
        metadata: Mapping[str, str] | None = None,
    ) -> str:
        kind = NodeKind.parse(kind)
        if kind is NodeKind.INTENT:
            if intent_status is None:
                raise InvalidExtras("intent nodes need an intent_status")
            intent_status = IntentStatus(intent_status)
        elif intent_status is not None:
            raise InvalidExtras("intent_status is only valid on intent nodes")
        if kind is NodeKind.TIME:
            if deadline_at is None:
                raise InvalidExtras("time nodes need a deadline_at")
            deadline_at = int(deadline_at)
        elif deadline_at is not None:
            raise InvalidExtras("deadline_at is only valid on time nodes")
        emb = None if embedding is None else self._check_embedding(embedding)
        node_id = f"n{self._next_node:06d}"
        self._next_node += 1
        created_at = int(created_at)
        self.nodes[node_id] = Node(
            id=node_id,
            kind=kind,
            title=str(title),
            body=str(body),
            created_at=created_at,
            last_accessed_at=created_at,
            access_count=0,
            embedding=emb,
            intent_status=intent_status,
            deadline_at=deadline_at,
            metadata={str(k): str(v) for k, v in (metadata or {}).items()},
        )
        self.out_adj[node_id] = set()
        self.in_adj[node_id] = set()
        return node_id

    def update_node(self, node_id: str, patch: Mapping[str, Any], now: int | None = None) -> None:
        node = self.node(node_id)
        unknown = set(patch) - _NODE_PATCHABLE
        if node.kind is NodeKind.EVENT and ({"body", "created_at"} & set(patch)):
            raise ImmutableField("event body and created_at are immutable")
        if unknown:
            raise InvalidExtras(f"cannot patch fields {sorted(unknown)}")
        # validate everything before touching the node so a failed patch leaves no trace
        new_status = node.intent_status
        if "intent_status" in patch:
            if node.kind is not NodeKind.INTENT:
                raise InvalidExtras("intent_status is only valid on intent nodes")
            new_status = IntentStatus(patch["intent_status"])
            if new_status is not node.intent_status:
                check_transition(node.intent_status, new_status)
        if "deadline_at" in patch and node.kind is not NodeKind.TIME:
            raise InvalidExtras("deadline_at is only valid on time nodes")
        emb = node.embedding
        if "embedding" in patch:
            emb = None if patch["embedding"] is None else self._check_embedding(patch["embedding"])
        if "title" in patch:
            node.title = str(patch["title"])
        if "body" in patch:
            node.body = str(patch["body"])
        if "metadata" in patch:
            node.metadata.update({str(k): str(v) for k, v in patch["metadata"].items()})
        if "deadline_at" in patch:
            node.deadline_at = int(patch["deadline_at"])
        node.intent_status = new_status
        node.embedding = emb
        if now is not None:
            self.touch(node_id, now)

    def touch(self, node_id: str, now: int, *, count: bool = False) -> None:
        node = self.node(node_id)
        node.last_accessed_at = max(node.last_accessed_at, int(now))
        if count:
            node.access_count += 1

    def remove_node(self, node_id: str) -> list[str]:
        self.node(node_id)
        incident = sorted(self.out_adj[node_id] | self.in_adj[node_id])
        for edge_id in incident:
            self._drop_edge(edge_id)
        del self.nodes[node_id]
        del self.out_adj[node_id]
        del self.in_adj[node_id]
        return incident

    # ------------------------------------------------------------------ edges

    def add_edge(
        self,
        kind: EdgeKind | str,
        src: str,
        dst: str,
        weight: float | None = None,
        *,
        now: int | None = None,
        provenance: Iterable[str] = (),
    ) -> str:
        kind = EdgeKind.parse(kind)
        if src not in self.nodes or dst not in self.nodes:
            missing = src if src not in self.nodes else dst
            raise MissingEndpoint(f"edge endpoint {missing!r} does not exist")
        s, d = self.nodes[src], self.nodes[dst]
        if not endpoints_compatible(kind, s.kind, d.kind):
            raise IncompatibleEndpoints(
                f"{kind.value} cannot connect {s.kind.value} -> {d.kind.value}"
            )
        if weight is None:
            weight = DEFAULT_EDGE_WEIGHTS[kind]
        weight = float(weight)
        if not (0.0 < weight <= 1.0) or math.isnan(weight):
            raise InvalidWeight(f"edge weight must be in (0, 1], got {weight}")
        if now is None:
            now = max(s.created_at, d.created_at)
        edge_id = f"e{self._next_edge:06d}"
        self._next_edge += 1
        self.edges[edge_id] = TypedEdge(
            edge_id, kind, src, dst, weight, int(now), int(now), _unique(provenance)
        )
        self.out_adj[src].add(edge_id)
        self.in_adj[dst].add(edge_id)
        return edge_id

    def remove_edge(self, edge_id: str) -> None:
        self.edge(edge_id)
        self._drop_edge(edge_id)

    def _drop_edge(self, edge_id: str) -> None:
        e = self.edges.pop(edge_id)
        self.out_adj[e.src].discard(edge_id)
        self.in_adj[e.dst].discard(edge_id)

    def set_edge_weight(self, edge_id: str, weight: float) -> None:
        if not (0.0 < weight <= 1.0):
            raise InvalidWeight(f"edge weight must be in (0, 1], got {weight}")
        self.edge(edge_id).weight = float(weight)

    def out_edges(self, node_id: str) -> list[TypedEdge]:
        return [self.edges[e] for e in sorted(self.out_adj[node_id])]

    def in_edges(self, node_id: str) -> list[TypedEdge]:
        return [self.edges[e] for e in sorted(self.in_adj[node_id])]

    def incident_edges(self, node_id: str) -> list[TypedEdge]:
        ids = self.out_adj[node_id] | self.in_adj[node_id]
        return [self.edges[e] for e in sorted(ids)]

    def degree(self, node_id: str) -> int:
        return len(self.out_adj[node_id] | self.in_adj[node_id])

    def find_edges(self, kind: EdgeKind, src: str, dst: str) -> list[TypedEdge]:
        return [
            self.edges[e] for e in sorted(self.out_adj.get(src, ()))
            if self.edges[e].dst == dst and self.edges[e].kind is kind
        ]

    def neighbors(self, node_id: str) -> set[str]:
        """Undirected neighbourhood (self excluded)."""
        out = {self.edges[e].dst for e in self.out_adj[node_id]}
        inc = {self.edges[e].src for e in self.in_adj[node_id]}
        return (out | inc) - {node_id}

    def iter_edges(self) -> Iterator[TypedEdge]:
        for key in sorted(self.edges):
            yield self.edges[key]

    # ------------------------------------------------------------------ merge

    def merge_nodes(self, keep_id: str, absorb_id: str, now: int | None = None) -> MergeReport:
        if keep_id == absorb_id:
            raise SelfMerge(f"cannot merge {keep_id!r} into itself")
        keep, absorb = self.node(keep_id), self.node(absorb_id)
        if keep.kind is not absorb.kind:
            raise KindMismatch(f"cannot merge {absorb.kind.value} into {keep.kind.value}")
        report = MergeReport(keep=keep_id, absorbed=absorb_id)
        for edge_id in sorted(self.out_adj[absorb_id] | self.in_adj[absorb_id]):
            e = self.edges[edge_id]
            src = keep_id if e.src == absorb_id else e.src
            dst = keep_id if e.dst == absorb_id else e.dst
            self._drop_edge(edge_id)
            if src == dst:
                report.dropped.append(edge_id)
                continue
            e.src, e.dst = src, dst
            self.edges[edge_id] = e
            self.out_adj[src].add(edge_id)
            self.in_adj[dst].add(edge_id)
            report.rewired.append(edge_id)
        # collapse parallel (kind, src, dst) groups touching keep
        groups: dict[tuple[EdgeKind, str, str], list[str]] = {}
        for edge_id in sorted(self.out_adj[keep_id] | self.in_adj[keep_id]):
            e = self.edges[edge_id]
            groups.setdefault((e.kind, e.src, e.dst), []).append(edge_id)
        for members in groups.values():
            if len(members) < 2:
                continue
            survivor = self.edges[members[0]]
            for other_id in members[1:]:
                other = self.edges[other_id]
                survivor.weight = max(survivor.weight, other.weight)
                survivor.provenance = _unique(survivor.provenance + other.provenance)
                survivor.created_at = min(survivor.created_at, other.created_at)
                survivor.last_reinforced_at = max(
                    survivor.last_reinforced_at, other.last_reinforced_at
                )
                self._drop_edge(other_id)
                report.collapsed.append(other_id)
        keep.access_count += absorb.access_count
        keep.last_accessed_at = max(keep.last_accessed_at, absorb.last_accessed_at)
        del self.nodes[absorb_id]
        del self.out_adj[absorb_id]
        del self.in_adj[absorb_id]
        if now is not None:
            self.touch(keep_id, now)
        return report

    # --------------------------------------------------------------- snapshot

    def snapshot(self) -> Snapshot:
        return Snapshot(
            {k: n.copy() for k, n in self.nodes.items()},
            {k: e.copy() for k, e in self.edges.items()},
            self.last_consolidated_at,
            self._next_node,
            self._next_edge,
        )

    def restore_from(self, snap: Snapshot) -> None:
        """Replace this graph's state in place with a copy of ``snap``."""
        self.nodes = {k: n.copy() for k, n in snap.nodes.items()}
        self.edges = {k: e.copy() for k, e in snap.edges.items()}
        self.last_consolidated_at = snap.last_consolidated_at
        self._next_node = snap.next_node
        self._next_edge = snap.next_edge
        self.out_adj = {k: set() for k in self.nodes}
        self.in_adj = {k: set() for k in self.nodes}
        for e in self.edges.values():
            self.out_adj[e.src].add(e.id)
            self.in_adj[e.dst].add(e.id)
        self._dim = None
        for n in self.nodes.values():
            if n.embedding is not None:
                self._dim = n.embedding.size
                break

    def to_json(self) -> str:
        return self.snapshot().to_json()

    @classmethod
    def from_json(cls, text: str | bytes) -> MemoryGraph:
        return restore(Snapshot.from_json(text))

    # ------------------------------------------------------------------ audit

    def audit(self) -> list[str]:
        """Return every structural inconsistency found (empty when healthy)."""
        problems: list[str] = []
        if set(self.out_adj) != set(self.nodes) or set(self.in_adj) != set(self.nodes):
            problems.append("adjacency keys differ from node store")
        seen_out: set[str] = set()
        seen_in: set[str] = set()
        for node_id, ids in self.out_adj.items():
            for edge_id in ids:
                e = self.edges.get(edge_id)
                if e is None or e.src != node_id:
                    problems.append(f"out_adj[{node_id}] lists bad edge {edge_id}")
                seen_out.add(edge_id)
        for node_id, ids in self.in_adj.items():
            for edge_id in ids:
                e = self.edges.get(edge_id)
                if e is None or e.dst != node_id:
                    problems.append(f"in_adj[{node_id}] lists bad edge {edge_id}")
                seen_in.add(edge_id)
        for e in self.edges.values():
            if e.id not in seen_out or e.id not in seen_in:
                problems.append(f"edge {e.id} missing from adjacency")
            if e.src not in self.nodes or e.dst not in self.nodes:
                problems.append(f"edge {e.id} dangles")
                continue
            if not endpoints_compatible(e.kind, self.nodes[e.src].kind, self.nodes[e.dst].kind):
                problems.append(f"edge {e.id} violates the ontology")
            if not (0.0 < e.weight <= 1.0):
                problems.append(f"edge {e.id} weight {e.weight} out of range")
        for n in self.nodes.values():
            if (n.kind is NodeKind.INTENT) != (n.intent_status is not None):
                problems.append(f"node {n.id} intent_status mismatch")
            if (n.kind is NodeKind.TIME) != (n.deadline_at is not None):
                problems.append(f"node {n.id} deadline_at mismatch")
            if n.embedding is not None and abs(float(np.linalg.norm(n.embedding)) - 1) > UNIT_NORM_TOL:
                problems.append(f"node {n.id} embedding not unit norm")
        return problems


def restore(snap: Snapshot) -> MemoryGraph:
    g = MemoryGraph()
    g.restore_from(snap)
    return g


def _unique(items: Iterable[str]) -> list[str]:
    return list(dict.fromkeys(str(i) for i in items))
