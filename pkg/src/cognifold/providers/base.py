"""Provider contracts. Pipeline code depends only on these protocols."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Protocol, Sequence, runtime_checkable

import numpy as np

if TYPE_CHECKING:
    from ..graph import Node
    from ..plans import UpdatePlan
    from ..writepath import ContextWindow


@runtime_checkable
class Embedder(Protocol):
    def dimension(self) -> int: ...

    def embed(self, text: str) -> np.ndarray: ...


@dataclass
class ClusterSummary:
    """What a planner sees when asked to phrase an intent for a concept cluster."""

    concept_ids: list[str]
    concept_titles: list[str]
    event_titles: list[str] = field(default_factory=list)
    density: float = 0.0


@runtime_checkable
class Planner(Protocol):
    def propose(
        self, event: Node, context: ContextWindow, pending_intents: Sequence[Node]
    ) -> UpdatePlan: ...

    def phrase_intent(self, summary: ClusterSummary) -> tuple[str, str, str]: ...


@runtime_checkable
class Judge(Protocol):
    def rate(
        self, concept: str, grounding_event_summaries: Sequence[str], scenario_context: str
    ) -> dict[str, float]: ...


JUDGE_KEYS = ("meaningfulness", "groundedness", "abstraction")


def clamp_rating(raw: dict) -> dict[str, float]:
    out = {}
    for key in JUDGE_KEYS:
        try:
            v = float(raw.get(key, 0.0))
        except (TypeError, ValueError):
            v = 0.0
        if v != v:  # NaN
            v = 0.0
        out[key] = min(1.0, max(0.0, v))
    return out


def embed_many(embedder: Embedder, texts: Sequence[str]) -> np.ndarray:
    batch = getattr(embedder, "embed_batch", None)
    if batch is not None:
        return batch(list(texts))
    return np.vstack([embedder.embed(t) for t in texts]) if texts else np.zeros((0, embedder.dimension()))
