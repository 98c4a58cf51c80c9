"""Scenario files: a gold concept graph plus the event stream generated from it.

A scenario directory holds ``gold.json`` and ``events.jsonl``. Chains in the
gold graph refer to events by their zero-based line index in ``events.jsonl``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from ..errors import SchemaViolation

RELATION_KINDS = ("PART_OF", "TRIGGERS", "REINFORCE", "CAUSES")

# structural bounds of a benchmark scenario
CONCEPT_RANGE = (8, 9)
RELATION_RANGE = (9, 14)
PARENT_RANGE = (1, 3)
INTENT_COUNT = 2
CHAIN_COUNT = 2
CHAIN_HOPS = (3, 4)
DISTRACTOR_RANGE = (0.10, 0.15)


@dataclass
class GoldConcept:
    label: str
    description: str
    keywords: list[str] = field(default_factory=list)
    expected_event_count: int = 0

    @property
    def text(self) -> str:
        return f"{self.label}\n{self.description}"


@dataclass
class GoldRelation:
    src: str
    dst: str
    kind: str


@dataclass
class GoldParent:
    label: str
    children: list[str]


@dataclass
class GoldIntent:
    label: str
    supporting_concepts: list[str]
    trigger_pattern: str


@dataclass
class GoldGraph:
    name: str
    domain: str
    window_days: int
    concepts: list[GoldConcept]
    relations: list[GoldRelation]
    hierarchy: list[GoldParent]
    intents: list[GoldIntent]
    chains: list[list[int]]

    def labels(self) -> list[str]:
        return [c.label for c in self.concepts]


@dataclass
class FixtureEvent:
    title: str
    description: str
    timestamp: int
    event_type: str
    gold_concept: str | None

    def to_raw(self, index: int) -> dict[str, Any]:
        out: dict[str, Any] = {
            "title": self.title,
            "description": self.description,
            "timestamp": self.timestamp,
            "event_type": self.event_type,
            "metadata": {"fixture_index": str(index)},
        }
        if self.gold_concept is not None:
            out["gold_concept"] = self.gold_concept
        return out


@dataclass
class EventFixture:
    events: list[FixtureEvent]

    def __len__(self) -> int:
        return len(self.events)

    def distractor_share(self) -> float:
        if not self.events:
            return 0.0
        return sum(e.gold_concept is None for e in self.events) / len(self.events)

    def raw_events(self) -> list[dict[str, Any]]:
        return [e.to_raw(i) for i, e in enumerate(self.events)]


# ------------------------------------------------------------ validation


def _req(data: Mapping[str, Any], key: str, path: str, kind: type | tuple[type, ...]) -> Any:
    if not isinstance(data, Mapping):
        raise SchemaViolation(path, "expected an object")
    if key not in data:
        raise SchemaViolation(f"{path}.{key}", "missing")
    value = data[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise SchemaViolation(f"{path}.{key}", f"expected {names}, got {type(value).__name__}")
    return value


def _count(path: str, n: int, bounds: tuple[int, int]) -> None:
    lo, hi = bounds
    if not lo <= n <= hi:
        raise SchemaViolation(path, f"expected {lo}..{hi} entries, found {n}" if lo != hi else f"expected {lo} entries, found {n}")


def parse_gold(data: Mapping[str, Any], path: str = "gold") -> GoldGraph:
    concepts = []
    for i, c in enumerate(_req(data, "concepts", path, list)):
        p = f"{path}.concepts[{i}]"
        kws = _req(c, "keywords", p, list)
        concepts.append(GoldConcept(
            label=_req(c, "label", p, str),
            description=_req(c, "description", p, str),
            keywords=[str(k) for k in kws],
            expected_event_count=_req(c, "expected_event_count", p, int),
        ))
    _count(f"{path}.concepts", len(concepts), CONCEPT_RANGE)
    labels = {c.label for c in concepts}
    if len(labels) != len(concepts):
        raise SchemaViolation(f"{path}.concepts", "labels must be unique")

    relations = []
    for i, r in enumerate(_req(data, "relations", path, list)):
        p = f"{path}.relations[{i}]"
        rel = GoldRelation(_req(r, "src", p, str), _req(r, "dst", p, str), _req(r, "kind", p, str))
        if rel.kind not in RELATION_KINDS:
            raise SchemaViolation(f"{p}.kind", f"must be one of {', '.join(RELATION_KINDS)}")
        for end in ("src", "dst"):
            if getattr(rel, end) not in labels:
                raise SchemaViolation(f"{p}.{end}", f"unknown concept {getattr(rel, end)!r}")
        relations.append(rel)
    _count(f"{path}.relations", len(relations), RELATION_RANGE)

    hierarchy = []
    for i, h in enumerate(_req(data, "hierarchy", path, list)):
        p = f"{path}.hierarchy[{i}]"
        children = [str(x) for x in _req(h, "children", p, list)]
        for j, child in enumerate(children):
            if child not in labels:
                raise SchemaViolation(f"{p}.children[{j}]", f"unknown concept {child!r}")
        hierarchy.append(GoldParent(_req(h, "label", p, str), children))
    _count(f"{path}.hierarchy", len(hierarchy), PARENT_RANGE)

    intents = []
    for i, it in enumerate(_req(data, "intents", path, list)):
        p = f"{path}.intents[{i}]"
        support = [str(x) for x in _req(it, "supporting_concepts", p, list)]
        _count(f"{p}.supporting_concepts", len(support), (2, 3))
        for j, s in enumerate(support):
            if s not in labels:
                raise SchemaViolation(f"{p}.supporting_concepts[{j}]", f"unknown concept {s!r}")
        intents.append(GoldIntent(_req(it, "label", p, str), support, _req(it, "trigger_pattern", p, str)))
    _count(f"{path}.intents", len(intents), (INTENT_COUNT, INTENT_COUNT))

    chains = []
    for i, ch in enumerate(_req(data, "chains", path, list)):
        p = f"{path}.chains[{i}]"
        if not isinstance(ch, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in ch):
            raise SchemaViolation(p, "expected a list of event indexes")
        _count(f"{p} hops", len(ch) - 1, CHAIN_HOPS)
        chains.append(list(ch))
    _count(f"{path}.chains", len(chains), (CHAIN_COUNT, CHAIN_COUNT))

    window = _req(data, "window_days", path, int)
    if not 1 <= window <= 60:
        raise SchemaViolation(f"{path}.window_days", "must lie in 1..60")
    return GoldGraph(
        name=_req(data, "name", path, str),
        domain=_req(data, "domain", path, str),
        window_days=window,
        concepts=concepts,
        relations=relations,
        hierarchy=hierarchy,
        intents=intents,
        chains=chains,
    )


def parse_events(lines: list[Any], path: str = "events") -> EventFixture:
    events = []
    for i, e in enumerate(lines):
        p = f"{path}[{i}]"
        gold = e.get("gold_concept") if isinstance(e, Mapping) else None
        if gold is not None and not isinstance(gold, str):
            raise SchemaViolation(f"{p}.gold_concept", "expected a label or null")
        events.append(FixtureEvent(
            title=_req(e, "title", p, str),
            description=_req(e, "description", p, str),
            timestamp=_req(e, "timestamp", p, int),
            event_type=_req(e, "event_type", p, str),
            gold_concept=gold,
        ))
        if not events[-1].description.strip():
            raise SchemaViolation(f"{p}.description", "must not be empty")
    for i in range(1, len(events)):
        if events[i].timestamp < events[i - 1].timestamp:
            raise SchemaViolation(f"{path}[{i}].timestamp", "events must be sorted by timestamp")
    fixture = EventFixture(events)
    lo, hi = DISTRACTOR_RANGE
    share = fixture.distractor_share()
    if not lo <= share <= hi:
        raise SchemaViolation(
            f"{path}.gold_concept", f"distractor share {share:.3f} outside {lo:.2f}..{hi:.2f}"
        )
    return fixture


def cross_check(gold: GoldGraph, fixture: EventFixture) -> None:
    labels = set(gold.labels())
    for i, e in enumerate(fixture.events):
        if e.gold_concept is not None and e.gold_concept not in labels:
            raise SchemaViolation(f"events[{i}].gold_concept", f"unknown concept {e.gold_concept!r}")
    n = len(fixture)
    for i, chain in enumerate(gold.chains):
        for j, idx in enumerate(chain):
            if not 0 <= idx < n:
                raise SchemaViolation(f"gold.chains[{i}][{j}]", f"event index {idx} out of range")
            if fixture.events[idx].gold_concept is None:
                raise SchemaViolation(f"gold.chains[{i}][{j}]", "chain steps cannot be distractors")
        if len(set(chain)) != len(chain):
            raise SchemaViolation(f"gold.chains[{i}]", "chain repeats an event")


def read_jsonl(path: Path) -> list[Any]:
    rows = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise SchemaViolation(f"{path.name}:{lineno}", f"invalid JSON ({exc.msg})") from exc
    return rows


def load_scenario(path: str | Path) -> tuple[GoldGraph, EventFixture]:
    root = Path(path)
    gold_path, events_path = root / "gold.json", root / "events.jsonl"
    for p in (gold_path, events_path):
        if not p.is_file():
            raise SchemaViolation(str(p), "file not found")
    try:
        gold_data = json.loads(gold_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaViolation("gold.json", f"invalid JSON ({exc.msg})") from exc
    gold = parse_gold(gold_data)
    fixture = parse_events(read_jsonl(events_path))
    cross_check(gold, fixture)
    return gold, fixture


DATA_DIR = Path(__file__).parent / "data"
SCENARIOS = ("softeng", "health", "team", "news", "academic", "support")


def bundled_scenarios() -> list[Path]:
    return [DATA_DIR / name for name in SCENARIOS]
