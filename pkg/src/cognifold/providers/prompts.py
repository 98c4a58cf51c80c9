"""Prompt templates for the remote planner and judge."""

from __future__ import annotations

import json
from typing import Any, Sequence

PLANNER_SYSTEM = """\
You maintain a typed memory graph for an assistant. For every new event you
receive, decide which graph updates it justifies and reply with one JSON object.

Node kinds: event, concept, intent, time.
Edge kinds (src -> dst):
  GROUNDS       event -> concept | intent
  CAUSES        event -> event
  TRIGGERS      concept -> intent
  REINFORCE     event -> concept
  PART_OF       concept -> concept
  DERIVED_FROM  concept -> concept
  DEADLINE_FOR  time -> intent
  RELATE_TO     concept|event -> concept|event
  USER_FEEDBACK event -> intent

Rules:
- Only introduce a concept once a pattern recurs across 3 or more events.
- Every new concept must be linked to the events that ground it.
- Prefer REINFORCE on an existing concept over creating a near-duplicate.
- Never modify or delete event nodes.
- Every op needs a short "reasoning" and a "grounded_in" list of event ids.
- Refer to a node created earlier in the same plan as "$k", k being its op index.

Reply format:
{"ops": [
  {"op": "ADD_NODE", "kind": "concept", "title": "...", "body": "...",
   "reasoning": "...", "grounded_in": ["n000001", "n000004", "n000007"]},
  {"op": "ADD_EDGE", "edge_kind": "GROUNDS", "src": "n000001", "dst": "$0",
   "reasoning": "...", "grounded_in": ["n000001"]}
]}
Other ops: UPDATE_NODE {id, title?, body?, metadata?}, MERGE_NODES {keep, absorb},
REMOVE_NODE {id}. An empty "ops" list is a valid answer.
"""

INTENT_SYSTEM = """\
Several related concepts in a memory graph point at a goal the user has not
stated. Name that goal. Reply with one JSON object:
{"title": "...", "body": "...", "category": "one lowercase word"}
"""

JUDGE_SYSTEM = """\
You grade one concept extracted by a memory system. Score each criterion
between 0 and 1:
  meaningfulness: is this a coherent, useful idea a person would recognise?
  groundedness: do the listed events actually support it?
  abstraction: is it at a sensible level, neither a restated event nor a vague category?
Reply with one JSON object:
{"meaningfulness": 0.0, "groundedness": 0.0, "abstraction": 0.0}
"""


def _brief(node: Any) -> dict[str, Any]:
    return {"id": node.id, "kind": node.kind.value, "title": node.title, "body": node.body[:280]}


def planner_messages(event: Any, context: Any, pending: Sequence[Any]) -> list[dict[str, str]]:
    user = {
        "event": {**_brief(event), "created_at": event.created_at},
        "context": {
            "immediate": [_brief(n) for n in context.immediate],
            "working": [_brief(n) for n in context.working],
            "background": [_brief(n) for n in context.background],
            "edges": [
                {"kind": e.kind.value, "src": e.src, "dst": e.dst, "weight": round(e.weight, 3)}
                for e in context.edges
            ],
        },
        "pending_intents": [_brief(n) for n in pending],
    }
    return [
        {"role": "system", "content": PLANNER_SYSTEM},
        {"role": "user", "content": json.dumps(user, sort_keys=True)},
    ]


def intent_messages(summary: Any) -> list[dict[str, str]]:
    user = {
        "concepts": list(summary.concept_titles),
        "supporting_events": list(summary.event_titles)[:20],
        "density": round(float(summary.density), 4),
    }
    return [
        {"role": "system", "content": INTENT_SYSTEM},
        {"role": "user", "content": json.dumps(user, sort_keys=True)},
    ]


def judge_messages(concept: str, events: Sequence[str], scenario: str) -> list[dict[str, str]]:
    user = {"scenario": scenario, "concept": concept, "grounding_events": list(events)[:20]}
    return [
        {"role": "system", "content": JUDGE_SYSTEM},
        {"role": "user", "content": json.dumps(user, sort_keys=True)},
    ]
