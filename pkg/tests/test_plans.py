import json
import random

import pytest

from cognifold import plans
from cognifold.errors import MalformedResponse
from cognifold.graph import EdgeKind, MemoryGraph, NodeKind
from cognifold.plans import (
    OpKind,
    execute_plan,
    extract_json,
    handles_in,
    parse_plan,
    plan_from_text,
    rewrite_duplicates,
    validate_plan,
)
from cognifold.providers import hash_embedder
from helpers import random_graph, random_plan

T0 = 1_700_000_000
GOOD = {"ops": [{"op": "ADD_NODE", "kind": "concept", "title": "Deploys", "reasoning": "r", "grounded_in": ["n000001"]}]}


# ----------------------------------------------------------------- leniency

LENIENT = [
    ("bare object", json.dumps(GOOD)),
    ("json fence", "```json\n" + json.dumps(GOOD) + "\n```"),
    ("bare fence", "```\n" + json.dumps(GOOD) + "\n```"),
    ("leading prose", "Sure! Here is the plan:\n" + json.dumps(GOOD)),
    ("trailing prose", json.dumps(GOOD) + "\nLet me know if you need more."),
    ("braces in prose first", "Note {not json} then " + json.dumps(GOOD)),
    ("operations key", json.dumps({"operations": GOOD["ops"]})),
    ("type alias and lowercase", json.dumps({"ops": [{"type": "add_node", "kind": "CONCEPT", "title": "Deploys",
                                                      "reasoning": "r", "grounded_in": "n000001"}]})),
]


@pytest.mark.parametrize("name,text", LENIENT, ids=[n for n, _ in LENIENT])
def test_plan_parse_leniency(name, text):
    plan = plan_from_text(text)
    assert len(plan) == 1
    op = plan.ops[0]
    assert op.op == OpKind.ADD_NODE.value
    assert op.payload["kind"] == "concept"
    assert op.grounded_in == ["n000001"]


def test_edge_kind_aliases_and_id_coercion():
    plan = parse_plan([{"op": "add_edge", "relation": "grounds", "src": 1, "dst": "$0", "reasoning": "r"}])
    op = plan.ops[0]
    assert op.payload["edge_kind"] == "GROUNDS"
    assert op.payload["src"] == "1"


@pytest.mark.parametrize(
    "text",
    ["no json here", '{"ops": [', '{"ops": {"op": "ADD_NODE"}}', '{"ops": [1, 2]}', "[]]"],
)
def test_malformed_plans_raise(text):
    with pytest.raises(MalformedResponse):
        plan_from_text(text)


def test_extract_json_prefers_fenced_block():
    assert extract_json('{"a": 1}\n```json\n{"b": 2}\n```') == {"b": 2}


# --------------------------------------------------------------- validation


def base_graph():
    g = MemoryGraph()
    e1 = g.add_node("event", "a", "a", T0)
    e2 = g.add_node("event", "b", "b", T0)
    c = g.add_node("concept", "c", "c", T0)
    i = g.add_node("intent", "i", "", T0, intent_status="resolved")
    return g, e1, e2, c, i


def codes(g, ops):
    return [x.code for x in validate_plan(g, parse_plan({"ops": ops}))]


def test_validation_codes():
    g, e1, e2, c, i = base_graph()
    r = {"reasoning": "r"}
    assert codes(g, [{"op": "ADD_NODE", "kind": "concept", "title": "x"}]) == ["MissingReasoning", "MissingGrounding"]
    assert codes(g, [{"op": "ADD_NODE", "kind": "blob", "title": "x", **r}]) == ["InvalidNodeKind"]
    assert codes(g, [{"op": "ADD_EDGE", "edge_kind": "CAUSES", "src": e1, "dst": c, **r}]) == ["IncompatibleEndpoints"]
    assert codes(g, [{"op": "ADD_EDGE", "edge_kind": "NOPE", "src": e1, "dst": c, **r}]) == ["UnknownEdgeKind"]
    assert codes(g, [{"op": "ADD_EDGE", "edge_kind": "GROUNDS", "src": e1, "dst": "$3", **r}]) == ["UnresolvedHandle"]
    assert codes(g, [{"op": "ADD_EDGE", "edge_kind": "GROUNDS", "src": e1, "dst": c, "weight": 2, **r}]) == ["InvalidWeight"]
    assert codes(g, [{"op": "UPDATE_NODE", "id": e1, "body": "new", **r}]) == ["EventMutation"]
    assert codes(g, [{"op": "UPDATE_NODE", "id": i, "status": "pending", **r}]) == ["IllegalTransition"]
    assert codes(g, [{"op": "MERGE_NODES", "keep": e1, "absorb": e2, **r}]) == ["EventMutation"]
    assert codes(g, [{"op": "MERGE_NODES", "keep": c, "absorb": c, **r}]) == ["SelfMerge"]
    assert codes(g, [{"op": "MERGE_NODES", "keep": c, "absorb": i, **r}]) == ["KindMismatch"]
    assert codes(g, [{"op": "REMOVE_NODE", "id": e1, **r}]) == ["EventMutation"]
    assert codes(g, [{"op": "REMOVE_NODE", "id": c, **r}, {"op": "UPDATE_NODE", "id": c, "title": "t", **r}]) == [
        "UnknownReference"
    ]
    assert codes(g, [{"op": "DROP_TABLE", **r}]) == ["UnknownOp"]


def test_handles_resolve_to_created_ids():
    g, e1, e2, c, i = base_graph()
    plan = parse_plan({"ops": [
        {"op": "ADD_NODE", "kind": "concept", "title": "new", "reasoning": "r", "grounded_in": [e1]},
        {"op": "ADD_EDGE", "edge_kind": "GROUNDS", "src": e1, "dst": "$0", "reasoning": "r"},
        {"op": "ADD_EDGE", "edge_kind": "PART_OF", "src": "$0", "dst": c, "reasoning": "r"},
    ]})
    assert handles_in(plan.ops) == {"$0"}
    rep = execute_plan(g, plan, T0 + 5)
    assert not rep.rolled_back and rep.applied == 3
    new = rep.created_ids["$0"]
    assert g.find_edges(EdgeKind.PART_OF, new, c)
    assert g.nodes[new].metadata["grounded_in"] == e1


def test_reinforce_op_strengthens_instead_of_duplicating():
    g, e1, e2, c, i = base_graph()
    ops = [{"op": "ADD_EDGE", "edge_kind": "REINFORCE", "src": e1, "dst": c, "reasoning": "r"}] * 2
    rep = execute_plan(g, parse_plan({"ops": ops}), T0 + 10)
    assert rep.applied == 2
    edges = g.find_edges(EdgeKind.REINFORCE, e1, c)
    assert len(edges) == 1 and edges[0].weight == pytest.approx(0.8)


# ------------------------------------------------------------------ rollback


@pytest.mark.parametrize("seed", range(25))
def test_injected_fault_restores_exact_bytes(seed, monkeypatch):
    rng = random.Random(seed)
    g = random_graph(rng, 25)
    ops = random_plan(rng, g, rng.randint(2, 8), T0 + 10**6)
    plan = parse_plan({"ops": ops})
    assert validate_plan(g, plan) == []
    before = g.to_json()
    fail_at = rng.randrange(len(ops))
    real = plans._apply_op

    def flaky(graph, op, index, *a, **kw):
        if index == fail_at:
            raise RuntimeError("injected")
        return real(graph, op, index, *a, **kw)

    monkeypatch.setattr(plans, "_apply_op", flaky)
    rep = execute_plan(g, plan, T0 + 10**6)
    assert rep.rolled_back and rep.failure[0] == fail_at and rep.created_ids == {}
    assert g.to_json() == before
    assert g.audit() == []


@pytest.mark.parametrize("seed", range(10))
def test_random_valid_plans_apply_cleanly(seed):
    rng = random.Random(1000 + seed)
    g = random_graph(rng, 25)
    plan = parse_plan({"ops": random_plan(rng, g, 8, T0 + 10**6)})
    rep = execute_plan(g, plan, T0 + 10**6)
    assert not rep.rolled_back, rep.failure
    assert g.audit() == []


# ---------------------------------------------------------------- dedup rewrite


def test_near_duplicate_concepts_become_reinforce_edges():
    emb = hash_embedder(64)
    g = MemoryGraph()
    e1 = g.add_node("event", "deploy", "deploy", T0, embedding=emb.embed("deploy"))
    c = g.add_node("concept", "Release pipeline", "", T0, embedding=emb.embed("Release pipeline"))
    plan = parse_plan({"ops": [
        {"op": "ADD_NODE", "kind": "concept", "title": "release pipeline", "reasoning": "r", "grounded_in": [e1]},
        {"op": "ADD_EDGE", "edge_kind": "GROUNDS", "src": e1, "dst": "$0", "reasoning": "r"},
        {"op": "ADD_NODE", "kind": "concept", "title": "Coffee breaks", "reasoning": "r", "grounded_in": [e1]},
        {"op": "ADD_EDGE", "edge_kind": "RELATE_TO", "src": "$2", "dst": "$0", "reasoning": "r"},
    ]})
    out, n = rewrite_duplicates(g, plan, emb, 0.85)
    assert n == 1
    assert [o.op for o in out.ops] == ["ADD_EDGE", "ADD_EDGE", "ADD_NODE", "ADD_EDGE"]
    assert out.ops[0].payload == {"edge_kind": "REINFORCE", "src": e1, "dst": c}
    assert out.ops[1].payload["dst"] == c
    assert out.ops[3].payload == {"edge_kind": "RELATE_TO", "src": "$2", "dst": c}
    rep = execute_plan(g, out, T0 + 1)
    assert not rep.rolled_back
    assert len(g.nodes_of_kind(NodeKind.CONCEPT)) == 2
