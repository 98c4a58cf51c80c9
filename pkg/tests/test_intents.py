import pytest

from cognifold.errors import IllegalTransition, KindMismatch, PlannerUnavailable
from cognifold.graph import EdgeKind, IntentStatus, MemoryGraph, NodeKind
from cognifold.intents import (
    CategoryThresholds,
    apply_feedback,
    cluster_density,
    concept_clusters,
    maybe_emit_intents,
    record_feedback,
    transition_intent,
)
from helpers import unit
from oracles import ema_trace

T0 = 1_700_000_000


@pytest.mark.parametrize(
    "w0,kind,expected",
    [(1.5, "accept", 1.5), (0.5, "accept", 0.80), (1.0, "reject", 0.79), (1.0, "modify", 1.03), (1.0, "defer", 0.94)],
)
def test_single_ema_step(w0, kind, expected):
    th = CategoryThresholds(weights={"ops": w0})
    assert apply_feedback(th, "Ops", kind) == pytest.approx(expected, abs=1e-12)
    assert th.weight("ops") == pytest.approx(expected, abs=1e-12)


def test_feedback_trace_follows_the_recurrence():
    th = CategoryThresholds()
    got = [apply_feedback(th, None, k) for k in ("accept", "accept", "reject")]
    assert got == pytest.approx(ema_trace(1.0, [1.5, 1.5, 0.3]), abs=1e-12)
    assert got[:2] == pytest.approx([1.150, 1.255], abs=1e-12)
    assert got[2] == pytest.approx(0.9685, abs=1e-12)


def test_effective_threshold_scales_inversely_with_weight():
    th = CategoryThresholds(weights={"a": 1.5, "b": 0.5})
    assert th.effective("a") == pytest.approx(1.0)
    assert th.effective("b") == pytest.approx(3.0)
    assert th.effective("unseen") == 1.5
    assert th.loosest() == pytest.approx(1.0)
    assert CategoryThresholds.from_dict(th.to_dict()) == th


def test_threshold_bounds():
    with pytest.raises(ValueError):
        CategoryThresholds(alpha_ema=0)
    with pytest.raises(ValueError):
        CategoryThresholds(base_density_threshold=0)


def intent_graph(status="pending", category="deploys"):
    g = MemoryGraph()
    ev = g.add_node("event", "e", "e", T0)
    i = g.add_node("intent", "Ship it", "", T0, intent_status=status, metadata={"category": category})
    return g, ev, i


@pytest.mark.parametrize("action,status", [("accept", "resolved"), ("reject", "rejected"), ("defer", "deferred"), ("modify", "pending")])
def test_record_feedback_moves_lifecycle(action, status):
    g, _, i = intent_graph()
    th = CategoryThresholds()
    res = record_feedback(g, th, i, action, T0 + 60)
    assert res.status == status and g.nodes[i].intent_status.value == status
    assert res.category == "deploys"
    assert res.weight == pytest.approx(0.7 + 0.3 * th.scores[action])
    fb = g.nodes[res.feedback_event]
    assert fb.kind is NodeKind.EVENT and fb.metadata["event_type"] == "feedback"
    assert g.find_edges(EdgeKind.USER_FEEDBACK, res.feedback_event, i)
    assert g.audit() == []


def test_feedback_on_closed_intent_is_refused_without_side_effects():
    g, _, i = intent_graph("resolved")
    before = g.to_json()
    with pytest.raises(IllegalTransition):
        record_feedback(g, CategoryThresholds(), i, "accept", T0 + 1)
    assert g.to_json() == before


def test_feedback_needs_an_intent():
    g, ev, _ = intent_graph()
    with pytest.raises(KindMismatch):
        record_feedback(g, CategoryThresholds(), ev, "accept", T0 + 1)
    with pytest.raises(ValueError):
        record_feedback(g, CategoryThresholds(), "n000002", "love", T0 + 1)


def test_transition_round_trip_through_deferred():
    g, ev, i = intent_graph()
    transition_intent(g, i, "deferred", now=T0 + 1)
    transition_intent(g, i, "pending", now=T0 + 2)
    transition_intent(g, i, "resolved", ev, CategoryThresholds(), now=T0 + 3)
    assert g.nodes[i].intent_status is IntentStatus.RESOLVED
    with pytest.raises(IllegalTransition):
        transition_intent(g, i, "pending")


# ----------------------------------------------------------------- emission


class _Phraser:
    def __init__(self, category="deploys"):
        self.category = category
        self.calls = 0

    def phrase_intent(self, summary):
        self.calls += 1
        return "Stabilise " + summary.concept_titles[0], "body", self.category


class _Offline:
    def phrase_intent(self, summary):
        raise PlannerUnavailable("down")


def dense_cluster(n_events=4):
    g = MemoryGraph()
    a = g.add_node("concept", "deploy pipeline", "", T0, embedding=unit([1, 0.1, 0]))
    b = g.add_node("concept", "release checks", "", T0, embedding=unit([1, 0, 0.1]))
    g.add_node("concept", "lunch", "", T0, embedding=unit([0, 0, 1]))
    for k in range(n_events):
        e = g.add_node("event", f"e{k}", "x", T0 + k)
        g.add_edge("GROUNDS", e, a if k % 2 else b)
    return g, a, b


def test_clusters_and_density():
    g, a, b = dense_cluster()
    assert concept_clusters(g, None) == [[a, b], ["n000003"]]
    sim = float(g.nodes[a].embedding @ g.nodes[b].embedding)
    assert cluster_density(g, None, [a, b]) == pytest.approx(sim * 4 / 2)


def test_dense_cluster_emits_once():
    g, a, b = dense_cluster()
    planner = _Phraser()
    [intent] = maybe_emit_intents(g, CategoryThresholds(), planner, None, T0 + 100)
    node = g.nodes[intent]
    assert node.intent_status is IntentStatus.PENDING and node.metadata["category"] == "deploys"
    assert {e.src for e in g.in_edges(intent) if e.kind is EdgeKind.TRIGGERS} == {a, b}
    assert len([e for e in g.in_edges(intent) if e.kind is EdgeKind.GROUNDS]) == 4
    assert maybe_emit_intents(g, CategoryThresholds(), planner, None, T0 + 200) == []
    assert g.audit() == []


def test_sparse_cluster_waits_for_calibrated_category():
    g, _, _ = dense_cluster(n_events=3)  # density just under the base 1.5
    th = CategoryThresholds()
    assert maybe_emit_intents(g, th, _Phraser(), None, T0 + 100) == []
    for _ in range(6):
        apply_feedback(th, "deploys", "accept")
    assert len(maybe_emit_intents(g, th, _Phraser("other"), None, T0 + 100)) == 0
    assert len(maybe_emit_intents(g, th, _Phraser("deploys"), None, T0 + 100)) == 1


def test_planner_outage_emits_nothing():
    g, _, _ = dense_cluster()
    before = g.to_json()
    with pytest.raises(PlannerUnavailable):
        maybe_emit_intents(g, CategoryThresholds(), _Offline(), None, T0 + 100)
    assert g.to_json() == before
