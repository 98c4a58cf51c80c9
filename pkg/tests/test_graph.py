import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cognifold.errors import (
    CorruptSnapshot,
    DimensionMismatch,
    IllegalTransition,
    ImmutableField,
    IncompatibleEndpoints,
    InvalidExtras,
    InvalidWeight,
    KindMismatch,
    MissingEndpoint,
    MissingNode,
    SelfMerge,
)
from cognifold.graph import (
    DEFAULT_EDGE_WEIGHTS,
    ONTOLOGY,
    EdgeKind,
    IntentStatus,
    MemoryGraph,
    NodeKind,
    Snapshot,
    restore,
)
from helpers import random_graph, unit

T0 = 1_700_000_000


def small():
    g = MemoryGraph()
    e1 = g.add_node("event", "standup", "daily standup notes", T0, embedding=unit([1, 0, 0]))
    e2 = g.add_node("event", "review", "code review", T0 + 60, embedding=unit([0, 1, 0]))
    c = g.add_node("concept", "meetings", "recurring meetings", T0 + 120, embedding=unit([1, 1, 0]))
    i = g.add_node("intent", "book room", "", T0 + 180, intent_status="pending")
    t = g.add_node("time", "friday", "", T0 + 200, deadline_at=T0 + 86400)
    return g, (e1, e2, c, i, t)


def test_ids_are_monotone_and_never_reused():
    g, (e1, *_rest) = small()
    g.remove_node(e1)
    new = g.add_node("event", "x", "y", T0)
    assert new == "n000006"
    assert e1 not in g


def test_ontology_is_enforced_for_every_pair():
    g = MemoryGraph()
    for kind, (srcs, dsts) in ONTOLOGY.items():
        for a in NodeKind:
            for b in NodeKind:
                src = g.add_node(a, a.value, "", T0, **_extras(a))
                dst = g.add_node(b, b.value, "", T0, **_extras(b))
                if a in srcs and b in dsts:
                    eid = g.add_edge(kind, src, dst)
                    assert g.edge(eid).weight == DEFAULT_EDGE_WEIGHTS[kind]
                else:
                    with pytest.raises(IncompatibleEndpoints):
                        g.add_edge(kind, src, dst)
    assert len(g.edges) == 13
    assert g.audit() == []


def _extras(kind):
    if kind is NodeKind.INTENT:
        return {"intent_status": "pending"}
    if kind is NodeKind.TIME:
        return {"deadline_at": T0 + 3600}
    return {}


def test_node_extras_validated():
    g = MemoryGraph()
    with pytest.raises(InvalidExtras):
        g.add_node("intent", "x", "", T0)
    with pytest.raises(InvalidExtras):
        g.add_node("event", "x", "", T0, intent_status="pending")
    with pytest.raises(InvalidExtras):
        g.add_node("time", "x", "", T0)
    with pytest.raises(InvalidExtras):
        g.add_node("event", "x", "", T0, embedding=[3.0, 4.0])
    g.add_node("event", "x", "", T0, embedding=unit([3, 4]))
    with pytest.raises(DimensionMismatch):
        g.add_node("event", "y", "", T0, embedding=unit([1, 1, 1]))


def test_edge_weight_and_endpoint_errors():
    g, (e1, e2, c, i, t) = small()
    with pytest.raises(MissingEndpoint):
        g.add_edge("GROUNDS", e1, "n999999")
    for w in (0.0, -0.1, 1.5, float("nan")):
        with pytest.raises(InvalidWeight):
            g.add_edge("GROUNDS", e1, c, w)
    eid = g.add_edge("grounds", e1, c, 1.0)
    assert g.edge(eid).kind is EdgeKind.GROUNDS


def test_event_body_is_immutable_but_title_is_not():
    g, (e1, *_r) = small()
    with pytest.raises(ImmutableField):
        g.update_node(e1, {"body": "rewritten"})
    g.update_node(e1, {"title": "renamed"})
    assert g.node(e1).title == "renamed"
    with pytest.raises(InvalidExtras):
        g.update_node(e1, {"access_count": 5})


@pytest.mark.parametrize(
    "path,ok",
    [
        (["resolved"], True),
        (["rejected"], True),
        (["deferred", "pending", "resolved"], True),
        (["resolved", "pending"], False),
        (["rejected", "deferred"], False),
        (["deferred", "resolved"], False),
    ],
)
def test_intent_lifecycle(path, ok):
    g, (_e1, _e2, _c, i, _t) = small()
    if ok:
        for s in path:
            g.update_node(i, {"intent_status": s})
        assert g.node(i).intent_status is IntentStatus(path[-1])
    else:
        with pytest.raises(IllegalTransition):
            for s in path:
                g.update_node(i, {"intent_status": s})


def test_failed_patch_leaves_node_untouched():
    g, (_e1, _e2, _c, i, _t) = small()
    g.update_node(i, {"intent_status": "resolved"})
    before = g.node(i).to_dict()
    with pytest.raises(IllegalTransition):
        g.update_node(i, {"title": "changed", "intent_status": "pending"})
    assert g.node(i).to_dict() == before


def test_remove_node_drops_incident_edges():
    g, (e1, e2, c, _i, _t) = small()
    g.add_edge("GROUNDS", e1, c)
    g.add_edge("CAUSES", e1, e2)
    keep = g.add_edge("GROUNDS", e2, c)
    dropped = g.remove_node(e1)
    assert len(dropped) == 2
    assert list(g.edges) == [keep]
    assert g.audit() == []


def test_merge_rewires_collapses_and_drops_self_loops():
    g = MemoryGraph()
    ev = g.add_node("event", "e", "", T0)
    a = g.add_node("concept", "a", "", T0)
    b = g.add_node("concept", "b", "", T0 + 5)
    g.nodes[b].access_count = 3
    g.add_edge("GROUNDS", ev, a, 0.4)
    g.add_edge("GROUNDS", ev, b, 0.7)
    loop = g.add_edge("PART_OF", a, b, 0.5)
    rep = g.merge_nodes(a, b)
    assert rep.dropped == [loop]
    grounds = g.find_edges(EdgeKind.GROUNDS, ev, a)
    assert len(grounds) == 1 and grounds[0].weight == 0.7
    assert g.nodes[a].access_count == 3
    assert b not in g and g.audit() == []


def test_merge_errors():
    g, (e1, _e2, c, _i, _t) = small()
    with pytest.raises(SelfMerge):
        g.merge_nodes(c, c)
    with pytest.raises(KindMismatch):
        g.merge_nodes(c, e1)
    with pytest.raises(MissingNode):
        g.merge_nodes(c, "n424242")


def test_snapshot_roundtrip_is_byte_stable():
    g = random_graph(random.Random(5), 40)
    text = g.to_json()
    again = MemoryGraph.from_json(text)
    assert again.to_json() == text
    assert again.audit() == []
    assert again.embedding_dim == g.embedding_dim
    # ids keep counting from where the original left off
    assert again.add_node("event", "x", "y", T0) == g.add_node("event", "x", "y", T0)


def test_snapshot_is_isolated_from_later_mutation():
    g, (e1, _e2, c, _i, _t) = small()
    snap = g.snapshot()
    text = snap.to_json()
    g.add_edge("GROUNDS", e1, c)
    g.update_node(c, {"title": "changed", "metadata": {"k": "v"}})
    assert snap.to_json() == text
    assert restore(snap).to_json() == text


@pytest.mark.parametrize(
    "bad",
    [
        "not json",
        "[1, 2]",
        '{"version": 99, "nodes": [], "edges": []}',
        '{"version": 1, "nodes": [{"id": "n1"}], "edges": []}',
        '{"version": 1, "nodes": [], "edges": [{"id": "e1", "kind": "CAUSES", "src": "n1", "dst": "n2",'
        ' "weight": 0.5, "created_at": 0, "last_reinforced_at": 0}]}',
    ],
)
def test_corrupt_snapshots_are_rejected(bad):
    with pytest.raises(CorruptSnapshot):
        Snapshot.from_json(bad)


def test_neighbors_and_degree_are_undirected():
    g, (e1, e2, c, _i, _t) = small()
    g.add_edge("CAUSES", e1, e2)
    g.add_edge("GROUNDS", e2, c)
    assert g.neighbors(e2) == {e1, c}
    assert g.degree(e2) == 2


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 30))
def test_random_graphs_pass_audit_after_merges(seed, n):
    rng = random.Random(seed)
    g = random_graph(rng, n)
    for _ in range(5):
        concepts = [x.id for x in g.nodes_of_kind(NodeKind.CONCEPT)]
        if len(concepts) < 2:
            break
        a, b = rng.sample(concepts, 2)
        g.merge_nodes(a, b)
        assert g.audit() == []
    assert np.isclose(sum(1 for _ in g.iter_edges()), len(g.edges))
