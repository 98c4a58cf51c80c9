"""UpdatePlan schema, static validation, duplicate rewriting and atomic execution.

Plans reference nodes either by id or by symbolic handle ``"$k"``, meaning
the node created by op ``k`` of the same plan.  Execution is all-or-nothing:
any failing op restores the pre-plan snapshot.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping

import numpy as np

from .consolidation import reinforce
from .errors import CogniFoldError, EmbedderUnavailable, MalformedResponse
from .graph import (
    EdgeKind,
    IntentStatus,
    MemoryGraph,
    NodeKind,
    check_transition,
    endpoints_compatible,
)

logger = logging.getLogger(__name__)

HANDLE_RE = re.compile(r"^\$(\d+)$")


class OpKind(str, Enum):
    ADD_NODE = "ADD_NODE"
    ADD_EDGE = "ADD_EDGE"
    UPDATE_NODE = "UPDATE_NODE"
    MERGE_NODES = "MERGE_NODES"
    REMOVE_NODE = "REMOVE_NODE"


# payload keys that hold node references, per op kind
_REF_KEYS = {
    OpKind.ADD_EDGE.value: ("src", "dst"),
    OpKind.UPDATE_NODE.value: ("id",),
    OpKind.MERGE_NODES.value: ("keep", "absorb"),
    OpKind.REMOVE_NODE.value: ("id",),
}


@dataclass
class PlanOp:
    op: str
    payload: dict[str, Any] = field(default_factory=dict)
    reasoning: str = ""
    grounded_in: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        out = {"op": self.op, **self.payload, "reasoning": self.reasoning}
        if self.grounded_in:
            out["grounded_in"] = list(self.grounded_in)
        return out


@dataclass
class UpdatePlan:
    ops: list[PlanOp] = field(default_factory=list)
    planner_id: str = ""
    created_at: int = 0
    flags: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.ops)

    def to_dict(self) -> dict[str, Any]:
        return {
            "ops": [op.to_dict() for op in self.ops],
            "planner_id": self.planner_id,
            "created_at": self.created_at,
            "flags": list(self.flags),
        }


@dataclass
class ValidationIssue:
    op_index: int
    code: str
    message: str


@dataclass
class ExecutionReport:
    applied: int = 0
    rolled_back: bool = False
    failure: tuple[int, str] | None = None
    created_ids: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "applied": self.applied,
            "rolled_back": self.rolled_back,
            "failure": None if self.failure is None else list(self.failure),
            "created_ids": dict(self.created_ids),
        }


# ---------------------------------------------------------------- wire format


def _as_list(value: Any) -> list[str]:
    if value is None:
        return []
    if isinstance(value, (str, int)):
        return [str(value)]
    return [str(v) for v in value]


def parse_op(data: Mapping[str, Any]) -> PlanOp:
    raw = {str(k): v for k, v in data.items()}
    op = str(raw.pop("op", raw.pop("type", ""))).strip().upper()
    reasoning = str(raw.pop("reasoning", "") or "")
    grounded = _as_list(raw.pop("grounded_in", None))
    if op == OpKind.ADD_NODE.value and "kind" in raw:
        raw["kind"] = str(raw["kind"]).strip().lower()
    if op == OpKind.ADD_EDGE.value:
        if "edge_kind" not in raw:
            for alt in ("kind", "edge_type", "relation"):
                if alt in raw:
                    raw["edge_kind"] = raw.pop(alt)
                    break
        if "edge_kind" in raw:
            raw["edge_kind"] = str(raw["edge_kind"]).strip().upper()
    for key in _REF_KEYS.get(op, ()):
        if key in raw and raw[key] is not None:
            raw[key] = str(raw[key])
    return PlanOp(op=op, payload=raw, reasoning=reasoning, grounded_in=grounded)


def parse_plan(data: Mapping[str, Any] | list, *, planner_id: str = "", created_at: int = 0) -> UpdatePlan:
    """Build a plan from decoded JSON; unknown fields are carried along and ignored."""
    if isinstance(data, list):
        ops_raw = data
    else:
        ops_raw = data.get("ops", data.get("operations", []))
    if not isinstance(ops_raw, list):
        raise MalformedResponse("plan 'ops' must be a list")
    ops = []
    for item in ops_raw:
        if not isinstance(item, Mapping):
            raise MalformedResponse(f"plan op must be an object, got {type(item).__name__}")
        ops.append(parse_op(item))
    return UpdatePlan(ops=ops, planner_id=planner_id, created_at=created_at)


_FENCE_RE = re.compile(r"```(?:json|JSON)?\s*(.*?)```", re.DOTALL)


def extract_json(text: str) -> Any:
    """Decode the first JSON object in an LLM reply.

    Markdown fences are stripped and anything after the object is ignored.
    """
    candidates = [m.group(1) for m in _FENCE_RE.finditer(text)] + [text]
    decoder = json.JSONDecoder()
    for chunk in candidates:
        start = chunk.find("{")
        while start != -1:
            try:
                obj, _ = decoder.raw_decode(chunk, start)
                return obj
            except json.JSONDecodeError:
                start = chunk.find("{", start + 1)
    raise MalformedResponse("no JSON object found in response")


def plan_from_text(text: str, *, planner_id: str = "", created_at: int = 0) -> UpdatePlan:
    obj = extract_json(text)
    if not isinstance(obj, (Mapping, list)):
        raise MalformedResponse("plan JSON must be an object")
    return parse_plan(obj, planner_id=planner_id, created_at=created_at)


# ---------------------------------------------------------------- validation


def _handle_index(ref: str) -> int | None:
    m = HANDLE_RE.match(ref)
    return int(m.group(1)) if m else None


def validate_plan(graph: MemoryGraph, plan: UpdatePlan) -> list[ValidationIssue]:
    """Return every static problem in ``plan``; an empty list means it can run."""
    issues: list[ValidationIssue] = []
    kinds: dict[str, NodeKind] = {k: n.kind for k, n in graph.nodes.items()}
    status: dict[str, IntentStatus | None] = {
        k: n.intent_status for k, n in graph.nodes.items() if n.kind is NodeKind.INTENT
    }
    removed: set[str] = set()

    def issue(i: int, code: str, msg: str) -> None:
        issues.append(ValidationIssue(i, code, msg))

    def resolve(i: int, ref: Any, what: str) -> str | None:
        if ref is None or ref == "":
            issue(i, "MissingField", f"{what} is required")
            return None
        ref = str(ref)
        idx = _handle_index(ref)
        if idx is not None:
            if idx >= i:
                issue(i, "UnresolvedHandle", f"{what} {ref} refers to a later op")
                return None
            if ref not in kinds:
                issue(i, "UnresolvedHandle", f"{what} {ref} does not name a created node")
                return None
        if ref in removed:
            issue(i, "UnknownReference", f"{what} {ref} was removed earlier in the plan")
            return None
        if ref not in kinds:
            issue(i, "UnknownReference", f"{what} {ref} does not exist")
            return None
        return ref

    for i, op in enumerate(plan.ops):
        p = op.payload
        if not op.reasoning.strip():
            issue(i, "MissingReasoning", "every op needs natural-language reasoning")
        for g in op.grounded_in:
            resolve(i, g, "grounded_in")
        if op.op == OpKind.ADD_NODE.value:
            try:
                kind = NodeKind.parse(p.get("kind", ""))
            except ValueError:
                issue(i, "InvalidNodeKind", f"unknown node kind {p.get('kind')!r}")
                continue
            if not str(p.get("title", "")).strip():
                issue(i, "MissingField", "ADD_NODE needs a title")
            if kind in (NodeKind.CONCEPT, NodeKind.INTENT) and not op.grounded_in:
                issue(i, "MissingGrounding", f"{kind.value} nodes need grounded_in provenance")
            if kind is NodeKind.TIME and p.get("deadline_at") is None:
                issue(i, "InvalidExtras", "time nodes need deadline_at")
            if kind is not NodeKind.TIME and p.get("deadline_at") is not None:
                issue(i, "InvalidExtras", "deadline_at only valid on time nodes")
            st = None
            if kind is NodeKind.INTENT:
                try:
                    st = IntentStatus(p.get("intent_status") or "pending")
                except ValueError:
                    issue(i, "InvalidExtras", f"unknown intent status {p.get('intent_status')!r}")
            elif p.get("intent_status") is not None:
                issue(i, "InvalidExtras", "intent_status only valid on intent nodes")
            kinds[f"${i}"] = kind
            if kind is NodeKind.INTENT:
                status[f"${i}"] = st
        elif op.op == OpKind.ADD_EDGE.value:
            try:
                ek = EdgeKind.parse(p.get("edge_kind", ""))
            except ValueError:
                issue(i, "UnknownEdgeKind", f"unknown edge kind {p.get('edge_kind')!r}")
                ek = None
            src = resolve(i, p.get("src"), "src")
            dst = resolve(i, p.get("dst"), "dst")
            w = p.get("weight")
            if w is not None:
                try:
                    ok = 0.0 < float(w) <= 1.0
                except (TypeError, ValueError):
                    ok = False
                if not ok:
                    issue(i, "InvalidWeight", f"weight {w!r} outside (0, 1]")
            if ek is not None and src and dst and not endpoints_compatible(ek, kinds[src], kinds[dst]):
                issue(
                    i,
                    "IncompatibleEndpoints",
                    f"{ek.value} cannot connect {kinds[src].value} -> {kinds[dst].value}",
                )
        elif op.op == OpKind.UPDATE_NODE.value:
            target = resolve(i, p.get("id"), "id")
            patch = update_patch(op)
            if target is None:
                continue
            if kinds[target] is NodeKind.EVENT and {"body", "created_at"} & set(patch):
                issue(i, "EventMutation", "event body and created_at are immutable")
            if "intent_status" in patch:
                if kinds[target] is not NodeKind.INTENT:
                    issue(i, "InvalidExtras", "intent_status only valid on intent nodes")
                else:
                    try:
                        new = IntentStatus(patch["intent_status"])
                        old = status.get(target)
                        if old is not None and new is not old:
                            check_transition(old, new)
                        status[target] = new
                    except ValueError:
                        issue(i, "InvalidExtras", f"unknown status {patch['intent_status']!r}")
                    except CogniFoldError as exc:
                        issue(i, "IllegalTransition", str(exc))
        elif op.op == OpKind.MERGE_NODES.value:
            keep, absorb = p.get("keep"), p.get("absorb")
            if keep is not None and keep == absorb:
                issue(i, "SelfMerge", f"cannot merge {keep} into itself")
                continue
            keep_r = resolve(i, keep, "keep")
            absorb_r = resolve(i, absorb, "absorb")
            if keep_r and absorb_r:
                if kinds[keep_r] is not kinds[absorb_r]:
                    issue(i, "KindMismatch", "merged nodes must share a kind")
                elif kinds[keep_r] is NodeKind.EVENT:
                    issue(i, "EventMutation", "events are immutable traces and cannot be merged")
                else:
                    removed.add(absorb_r)
        elif op.op == OpKind.REMOVE_NODE.value:
            target = resolve(i, p.get("id"), "id")
            if target is None:
                continue
            if kinds[target] is NodeKind.EVENT:
                issue(i, "EventMutation", "events are immutable traces and cannot be removed")
            removed.add(target)
        else:
            issue(i, "UnknownOp", f"unknown op kind {op.op!r}")
    return issues


_UPDATE_FIELDS = ("title", "body", "metadata", "intent_status", "deadline_at", "created_at")


def update_patch(op: PlanOp) -> dict[str, Any]:
    patch = dict(op.payload.get("patch") or {})
    for key in _UPDATE_FIELDS + ("status",):
        if key in op.payload and key not in patch:
            patch[key] = op.payload[key]
    if "status" in patch and "intent_status" not in patch:
        patch["intent_status"] = patch.pop("status")
    return patch


# ---------------------------------------------------------- duplicate rewrite


def _cos(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.dot(a, b))


def rewrite_duplicates(
    graph: MemoryGraph, plan: UpdatePlan, embedder: Any, theta: float = 0.85
) -> tuple[UpdatePlan, int]:
    """Replace near-duplicate concept additions with REINFORCE edges.

    Similarity is title-to-title cosine under ``embedder``. References to the
    dropped op's handle are redirected to the concept it duplicates.
    """
    if not 0.0 < theta <= 1.0:
        raise ValueError("theta must lie in (0, 1]")
    if not any(
        op.op == OpKind.ADD_NODE.value and str(op.payload.get("kind")) == NodeKind.CONCEPT.value
        for op in plan.ops
    ):
        return plan, 0
    try:
        existing = [
            (n.id, embedder.embed(n.title)) for n in graph.nodes_of_kind(NodeKind.CONCEPT)
        ]
    except EmbedderUnavailable:
        logger.warning("embedder unavailable; duplicate rewrite skipped")
        flagged = UpdatePlan(list(plan.ops), plan.planner_id, plan.created_at, plan.flags + ["dedup_skipped"])
        return flagged, 0

    event_refs = {k for k, n in graph.nodes.items() if n.kind is NodeKind.EVENT}
    new_ops: list[PlanOp] = []
    # old handle -> replacement reference (new handle or existing id)
    remap: dict[str, str] = {}
    plan_concepts: list[tuple[str, np.ndarray]] = []  # (old handle, title embedding)
    conversions = 0

    def ref(r: str) -> str:
        return remap.get(r, r)

    for i, op in enumerate(plan.ops):
        p = op.payload
        is_concept = op.op == OpKind.ADD_NODE.value and str(p.get("kind")) == NodeKind.CONCEPT.value
        if is_concept:
            try:
                vec = embedder.embed(str(p.get("title", "")))
            except EmbedderUnavailable:
                vec = None
            target = None
            if vec is not None:
                best = -2.0
                for node_id, emb in existing:
                    s = _cos(vec, emb)
                    if s >= theta and s > best:
                        best, target = s, node_id
                for handle, emb in plan_concepts:
                    s = _cos(vec, emb)
                    if s >= theta and s > best:
                        best, target = s, remap[handle]
            if target is not None:
                conversions += 1
                remap[f"${i}"] = target
                for g in op.grounded_in:
                    src = ref(g)
                    if src in event_refs:
                        new_ops.append(
                            PlanOp(
                                OpKind.ADD_EDGE.value,
                                {"edge_kind": EdgeKind.REINFORCE.value, "src": src, "dst": target},
                                reasoning=f"near-duplicate of existing concept; reinforce instead ({op.reasoning})",
                                grounded_in=[src],
                            )
                        )
                continue
            remap[f"${i}"] = f"${len(new_ops)}"
            if vec is not None:
                plan_concepts.append((f"${i}", vec))
        elif op.op == OpKind.ADD_NODE.value:
            remap[f"${i}"] = f"${len(new_ops)}"
            if str(p.get("kind")) == NodeKind.EVENT.value:
                event_refs.add(remap[f"${i}"])
        payload = dict(p)
        for key in _REF_KEYS.get(op.op, ()):
            if key in payload and payload[key] is not None:
                payload[key] = ref(str(payload[key]))
        new_ops.append(PlanOp(op.op, payload, op.reasoning, [ref(g) for g in op.grounded_in]))

    flags = list(plan.flags)
    return UpdatePlan(new_ops, plan.planner_id, plan.created_at, flags), conversions


# ---------------------------------------------------------------- execution


def _resolve(ref: str, created: Mapping[str, str]) -> str:
    return created.get(ref, ref)


def _apply_op(
    graph: MemoryGraph,
    op: PlanOp,
    index: int,
    now: int,
    created: dict[str, str],
    embedder: Any,
) -> None:
    p = op.payload
    grounded = [_resolve(g, created) for g in op.grounded_in]
    if op.op == OpKind.ADD_NODE.value:
        kind = NodeKind.parse(p["kind"])
        title, body = str(p.get("title", "")), str(p.get("body", ""))
        meta = {str(k): str(v) for k, v in (p.get("metadata") or {}).items()}
        if grounded:
            meta.setdefault("grounded_in", ",".join(grounded))
        if p.get("category"):
            meta.setdefault("category", str(p["category"]).strip().lower())
        emb = None
        if embedder is not None:
            try:
                emb = embedder.embed(f"{title}\n{body}".strip())
            except EmbedderUnavailable:
                emb = None
        node_id = graph.add_node(
            kind,
            title,
            body,
            now,
            embedding=emb,
            intent_status=(p.get("intent_status") or "pending") if kind is NodeKind.INTENT else None,
            deadline_at=p.get("deadline_at") if kind is NodeKind.TIME else None,
            metadata=meta,
        )
        created[f"${index}"] = node_id
        for g in grounded:
            graph.touch(g, now)
    elif op.op == OpKind.ADD_EDGE.value:
        kind = EdgeKind.parse(p["edge_kind"])
        src, dst = _resolve(p["src"], created), _resolve(p["dst"], created)
        if kind is EdgeKind.REINFORCE:
            reinforce(graph, src, dst, now)
        else:
            w = p.get("weight")
            graph.add_edge(
                kind, src, dst, None if w is None else float(w),
                now=now, provenance=grounded or ([src] if graph.node(src).kind is NodeKind.EVENT else []),
            )
        graph.touch(src, now)
        graph.touch(dst, now)
    elif op.op == OpKind.UPDATE_NODE.value:
        target = _resolve(p["id"], created)
        graph.update_node(target, update_patch(op), now=now)
    elif op.op == OpKind.MERGE_NODES.value:
        graph.merge_nodes(_resolve(p["keep"], created), _resolve(p["absorb"], created), now=now)
    elif op.op == OpKind.REMOVE_NODE.value:
        graph.remove_node(_resolve(p["id"], created))
    else:
        raise CogniFoldError(f"unknown op kind {op.op!r}")


def execute_plan(
    graph: MemoryGraph, plan: UpdatePlan, now: int, *, embedder: Any = None
) -> ExecutionReport:
    """Apply ``plan`` in order, or not at all.

    The plan is re-validated first; a failing op restores the pre-plan
    snapshot and is reported, never raised.
    """
    report = ExecutionReport()
    issues = validate_plan(graph, plan)
    if issues:
        first = issues[0]
        report.rolled_back = True
        report.failure = (first.op_index, f"{first.code}: {first.message}")
        return report
    snap = graph.snapshot()
    created: dict[str, str] = {}
    for i, op in enumerate(plan.ops):
        try:
            _apply_op(graph, op, i, now, created, embedder)
        except Exception as exc:  # any failure rolls the whole plan back
            graph.restore_from(snap)
            report.rolled_back = True
            report.failure = (i, f"{type(exc).__name__}: {exc}")
            report.created_ids = {}
            logger.info("plan rolled back at op %d: %s", i, exc)
            return report
        report.applied += 1
    report.created_ids = created
    return report


def handles_in(ops: Iterable[PlanOp]) -> set[str]:
    """All symbolic handles referenced anywhere in ``ops``."""
    found: set[str] = set()
    for op in ops:
        refs = [op.payload.get(k) for k in _REF_KEYS.get(op.op, ())] + list(op.grounded_in)
        found.update(r for r in refs if isinstance(r, str) and HANDLE_RE.match(r))
    return found
