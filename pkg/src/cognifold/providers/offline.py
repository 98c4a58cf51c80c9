"""Deterministic offline providers: hash embedder, rule planner, stub judge."""

from __future__ import annotations

import hashlib
import threading
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

import numpy as np

from ..graph import EdgeKind, Node, NodeKind
from ..plans import OpKind, PlanOp, UpdatePlan
from ..text import tokenize
from .base import ClusterSummary, clamp_rating


class HashEmbedder:
    """Signed feature hashing of a bag of tokens, L2-normalised.

    Text with no content tokens maps to a fixed canonical unit vector.
    """

    def __init__(self, d: int = 256):
        if d < 16:
            raise ValueError("hash embedder dimension must be >= 16")
        self.d = d
        self._cache: dict[str, np.ndarray] = {}
        self._lock = threading.Lock()
        canonical = np.zeros(d)
        canonical[0] = 1.0
        canonical.flags.writeable = False
        self._empty = canonical

    def dimension(self) -> int:
        return self.d

    def _bucket(self, token: str) -> tuple[int, float]:
        h = int.from_bytes(hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest(), "big")
        return h % self.d, (1.0 if (h >> 63) & 1 else -1.0)

    def embed(self, text: str) -> np.ndarray:
        cached = self._cache.get(text)
        if cached is not None:
            return cached
        vec = np.zeros(self.d)
        for token, count in Counter(tokenize(text)).items():
            idx, sign = self._bucket(token)
            vec[idx] += sign * count
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            out = self._empty
        else:
            out = vec / norm
            out.flags.writeable = False
        with self._lock:
            self._cache[text] = out
        return out


def hash_embedder(d: int = 256) -> HashEmbedder:
    return HashEmbedder(d)


@dataclass
class RulePlannerConfig:
    cluster_size: int = 3  # events needed before a concept forms
    min_shared: int = 2  # tokens an event must share with a cluster to join it
    reinforce_theta: float = 0.85
    title_tokens: int = 3
    body_tokens: int = 8
    link_min_shared: int = 3  # shared tokens for an event-event RELATE_TO link
    relate_min_shared: int = 1  # shared title tokens for a concept-concept RELATE_TO link


@dataclass
class _Cluster:
    cid: int
    members: list[str] = field(default_factory=list)
    titles: list[str] = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)


class RulePlanner:
    """Heuristic planner that needs no LLM.

    Ungrounded events gather into token-overlap clusters; a cluster reaching
    ``cluster_size`` events becomes a Concept grounded in all of them. An
    event whose title matches a visible concept title reinforces it instead.
    """

    planner_id = "rule"

    def __init__(self, embedder: Any, config: RulePlannerConfig | None = None):
        self.embedder = embedder
        self.config = config or RulePlannerConfig()
        self._clusters: list[_Cluster] = []
        self._next_cluster = 0
        self._event_tokens: dict[str, list[str]] = {}

    # -- persistence

    def state_dict(self) -> dict[str, Any]:
        return {
            "next_cluster": self._next_cluster,
            "clusters": [
                {"cid": c.cid, "members": c.members, "titles": c.titles, "counts": dict(c.counts)}
                for c in self._clusters
            ],
            "event_tokens": self._event_tokens,
        }

    def load_state_dict(self, state: dict[str, Any]) -> None:
        self._next_cluster = int(state.get("next_cluster", 0))
        self._clusters = [
            _Cluster(int(c["cid"]), list(c["members"]), list(c["titles"]), Counter(c["counts"]))
            for c in state.get("clusters", [])
        ]
        self._event_tokens = {k: list(v) for k, v in state.get("event_tokens", {}).items()}

    # -- planning

    def _match_concept(self, event: Node, context) -> str | None:
        concepts = [n for n in context.selected if n.kind is NodeKind.CONCEPT]
        if not concepts or self.embedder is None:
            return None
        ev = self.embedder.embed(event.title)
        best, best_id = -1.0, None
        for c in sorted(concepts, key=lambda n: n.id):
            s = float(np.dot(ev, self.embedder.embed(c.title)))
            if s >= self.config.reinforce_theta and s > best:
                best, best_id = s, c.id
        return best_id

    def _best_cluster(self, tokens: set[str]) -> _Cluster | None:
        best, best_score = None, 0
        for c in self._clusters:
            score = len(tokens & set(c.counts))
            if score >= self.config.min_shared and score > best_score:
                best, best_score = c, score
        return best

    def _link_event(self, event: Node, tokens: set[str], context, exclude: set[str]) -> PlanOp | None:
        best, best_score = None, self.config.link_min_shared - 1
        for n in sorted(context.selected, key=lambda n: n.id):
            if n.kind is not NodeKind.EVENT or n.id == event.id or n.id in exclude:
                continue
            other = set(self._event_tokens.get(n.id) or tokenize(n.text))
            score = len(tokens & other)
            if score > best_score:
                best, best_score = n, score
        if best is None:
            return None
        return PlanOp(
            OpKind.ADD_EDGE.value,
            {"edge_kind": EdgeKind.RELATE_TO.value, "src": event.id, "dst": best.id},
            reasoning=f"shares {best_score} content tokens with an earlier event",
            grounded_in=[event.id],
        )

    def propose(self, event: Node, context, pending_intents: Sequence[Node] = ()) -> UpdatePlan:
        cfg = self.config
        tokens_list = tokenize(event.text)
        tokens = set(tokens_list)
        self._event_tokens[event.id] = sorted(tokens)
        plan = UpdatePlan(planner_id=self.planner_id, created_at=event.created_at)

        concept_id = self._match_concept(event, context)
        if concept_id is not None:
            plan.ops.append(
                PlanOp(
                    OpKind.ADD_EDGE.value,
                    {"edge_kind": EdgeKind.REINFORCE.value, "src": event.id, "dst": concept_id},
                    reasoning="event title matches an existing concept",
                    grounded_in=[event.id],
                )
            )
            return plan

        cluster = self._best_cluster(tokens)
        if cluster is None:
            cluster = _Cluster(self._next_cluster)
            self._next_cluster += 1
            self._clusters.append(cluster)
        cluster.members.append(event.id)
        cluster.titles.append(event.title)
        cluster.counts.update(tokens)

        link = self._link_event(event, tokens, context, set(cluster.members))
        if len(cluster.members) < cfg.cluster_size:
            if link is not None:
                plan.ops.append(link)
            return plan

        self._clusters.remove(cluster)
        shared = [t for t, c in cluster.counts.items() if c >= 2]
        pool = shared if shared else list(cluster.counts)
        ranked = sorted(pool, key=lambda t: (-cluster.counts[t], t))
        title = " ".join(ranked[: cfg.title_tokens])
        body = "recurring: " + ", ".join(ranked[: cfg.body_tokens])
        plan.ops.append(
            PlanOp(
                OpKind.ADD_NODE.value,
                {"kind": NodeKind.CONCEPT.value, "title": title, "body": body},
                reasoning=f"{len(cluster.members)} events share the tokens {', '.join(ranked[:3])}",
                grounded_in=list(cluster.members),
            )
        )
        for member in cluster.members:
            plan.ops.append(
                PlanOp(
                    OpKind.ADD_EDGE.value,
                    {"edge_kind": EdgeKind.GROUNDS.value, "src": member, "dst": "$0"},
                    reasoning="event evidences the new concept",
                    grounded_in=[member],
                )
            )
        title_tokens = set(title.split())
        for n in sorted(context.selected, key=lambda n: n.id):
            if n.kind is not NodeKind.CONCEPT:
                continue
            if len(title_tokens & set(tokenize(n.title))) >= cfg.relate_min_shared:
                plan.ops.append(
                    PlanOp(
                        OpKind.ADD_EDGE.value,
                        {"edge_kind": EdgeKind.RELATE_TO.value, "src": "$0", "dst": n.id},
                        reasoning="concepts share title tokens",
                        grounded_in=list(cluster.members),
                    )
                )
        if link is not None:
            plan.ops.append(link)
        return plan

    def phrase_intent(self, summary: ClusterSummary) -> tuple[str, str, str]:
        counts: Counter = Counter()
        for t in summary.concept_titles:
            counts.update(tokenize(t))
        ranked = sorted(counts, key=lambda t: (-counts[t], t))
        head = ranked[:3] or ["pattern"]
        title = "Follow up on " + " ".join(head)
        body = (
            f"Converging evidence across {len(summary.concept_ids)} concepts: "
            + "; ".join(summary.concept_titles)
        )
        return title, body, head[0]


def rule_planner(embedder: Any, config: RulePlannerConfig | None = None) -> RulePlanner:
    return RulePlanner(embedder, config)


class StubJudge:
    """Heuristic concept rater for offline evaluation."""

    target_len = 3

    def rate(
        self, concept: str, grounding_event_summaries: Sequence[str], scenario_context: str = ""
    ) -> dict[str, float]:
        toks = tokenize(concept)
        n = len(toks)
        return clamp_rating(
            {
                "meaningfulness": min(1.0, len(set(toks)) / 5.0),
                "groundedness": min(1.0, len(grounding_event_summaries) / 3.0),
                "abstraction": 1.0 - abs(self.target_len - n) / self.target_len,
            }
        )


def stub_judge() -> StubJudge:
    return StubJudge()


def config_dict(cfg: RulePlannerConfig) -> dict[str, Any]:
    return asdict(cfg)
