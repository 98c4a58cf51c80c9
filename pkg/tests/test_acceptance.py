"""End-to-end acceptance checks, one test per numbered criterion.

Each test records a one-line verdict that is printed in the terminal
summary. Criteria 2 and 7 cannot be met at their stated tolerances with the
default parameters; they stay red as strict xfails that report the observed
values.
"""

import hashlib
import json
import math
import os
import random
import subprocess
import sys
import time

import httpx
import numpy as np
import pytest

from cognifold import plans
from cognifold.cogeval.metrics import (
    average_clustering,
    compression_and_proactivity,
    edge_entropy,
    gini,
    greedy_modularity,
    harmony,
    hungarian,
    modularity_of,
    undirected_weights,
)
from cognifold.cogeval.schema import DATA_DIR, load_scenario
from cognifold.config import Config
from cognifold.consolidation import decay_pass
from cognifold.engine import Engine
from cognifold.graph import MemoryGraph, NodeKind
from cognifold.intents import CategoryThresholds, apply_feedback
from cognifold.plans import execute_plan, parse_plan, plan_from_text, validate_plan
from cognifold.providers.remote import RemoteConfig, ReplayTransport, remote_provider
from cognifold.retrieval import rrf_fuse
from cognifold.writepath import assemble_context, recency
from helpers import (
    DATA,
    FakeLLM,
    FakeLLMServer,
    ServiceProcess,
    collapse_parallel,
    criterion,
    random_graph,
    random_plan,
)
from oracles import (
    best_assignment,
    best_modularity,
    clustering_by_triangles,
    deadline_boost,
    dense_pagerank,
    gini_pairs,
    kind_entropy,
    modularity_definition,
    priority,
    remapped_edges,
    rrf,
    top_k,
)

T0 = 1_700_000_000
H = 3600
_, SOFTENG = load_scenario(DATA_DIR / "softeng")


# ------------------------------------------------------------------ 1


def brute_force_scores(g, now):
    pr = dense_pagerank(sorted(g.nodes), [(e.src, e.dst, e.weight) for e in g.edges.values()])
    max_acc = max(n.access_count for n in g.nodes.values())
    out = {}
    for nid, n in g.nodes.items():
        near = g.neighbors(nid) | ({nid} if n.kind is NodeKind.TIME else set())
        boost = max([1.0] + [deadline_boost(g.nodes[m].deadline_at, now) for m in near if g.nodes[m].kind is NodeKind.TIME])
        out[nid] = priority(
            pr=pr[nid], age_h=(now - n.last_accessed_at) / H, access=n.access_count, max_access=max_acc, urgency=boost
        )
    return out


def test_criterion_01_context_is_brute_force_top_k():
    with criterion(1, "context selection equals brute-force top-k") as c:
        rng = random.Random(1)
        spent = 0.0
        for _ in range(100):
            g = random_graph(rng, 200)
            now = T0 + 450 * H
            start = time.perf_counter()
            got = assemble_context(g, now, k=50).ids()
            spent += time.perf_counter() - start
            assert got == top_k(brute_force_scores(g, now), 50)
        c.note(f"100 trials x 200 nodes, {spent:.2f}s in selection")
        assert spent < 5.0


# ------------------------------------------------------------------ 2


@pytest.mark.xfail(strict=True, reason="0.9*exp(-0.005*138.6) and exp(-0.01*69) miss the stated tolerances")
def test_criterion_02_decay_half_lives():
    with criterion(2, "edge 0.9 -> 0.45 +-1e-6 at 138.6 h; recency 0.5 +-1e-3 at 69 h") as c:
        g = MemoryGraph()
        e = g.add_node("event", "e", "e", T0)
        k = g.add_node("concept", "c", "c", T0)
        eid = g.add_edge("GROUNDS", e, k, 0.9, now=T0)
        g.last_consolidated_at = T0
        decay_pass(g, T0 + round(138.6 * H), 0.005)
        w = g.edges[eid].weight
        r = recency(69 * H, 0.01)
        c.note(f"observed edge {w:.7f} (err {abs(w - 0.45):.1e}), recency {r:.5f} (err {abs(r - 0.5):.1e})")
        assert abs(w - 0.45) <= 1e-6
        assert abs(r - 0.5) <= 1e-3


# ------------------------------------------------------------------ 3


def test_criterion_03_rollback_is_byte_identical(monkeypatch):
    with criterion(3, "fault-injected plans roll back byte-identically") as c:
        rng = random.Random(3)
        real = plans._apply_op
        fail_at = {"i": -1}

        def flaky(graph, op, index, *a, **kw):
            if index == fail_at["i"]:
                raise RuntimeError("injected")
            return real(graph, op, index, *a, **kw)

        monkeypatch.setattr(plans, "_apply_op", flaky)
        start = time.perf_counter()
        g = random_graph(rng, 30)
        for trial in range(1000):
            if trial % 50 == 0:
                g = random_graph(rng, 30)
            plan = parse_plan({"ops": random_plan(rng, g, rng.randint(1, 8), T0 + 10**6)})
            assert validate_plan(g, plan) == []
            before = g.to_json()
            fail_at["i"] = rng.randrange(len(plan.ops))
            rep = execute_plan(g, plan, T0 + 10**6)
            assert rep.rolled_back
            assert g.to_json() == before
        spent = time.perf_counter() - start
        c.note(f"1000 rollbacks in {spent:.2f}s")
        assert spent < 10.0


# ------------------------------------------------------------------ 4


def test_criterion_04_merge_conservation():
    with criterion(4, "merges conserve the remapped edge multiset") as c:
        rng = random.Random(4)
        done = merges = 0
        while done < 500:
            g = random_graph(rng, rng.randint(6, 50), edges_per_node=2.5)
            collapse_parallel(g)
            pool = [n.id for n in g.nodes_of_kind(NodeKind.CONCEPT)]
            if len(pool) < 2:
                continue
            for _ in range(rng.randint(1, 3)):
                pool = [n.id for n in g.nodes_of_kind(NodeKind.CONCEPT)]
                if len(pool) < 2:
                    break
                keep, absorb = rng.sample(pool, 2)
                edges = [(e.kind, e.src, e.dst, e.weight) for e in g.edges.values()]
                want = remapped_edges(edges, keep, absorb)
                g.merge_nodes(keep, absorb)
                after = [(e.kind, e.src, e.dst, e.weight) for e in g.edges.values()]
                assert len(after) == sum(want.values())
                assert remapped_edges(after, keep, absorb) == want
                assert g.audit() == []
                merges += 1
            done += 1
        c.note(f"500 trials, {merges} merges")


# ------------------------------------------------------------------ 5


def test_criterion_05_hungarian_is_exact():
    with criterion(5, "Hungarian equals exhaustive maximum on 6x6") as c:
        rng = np.random.default_rng(5)
        for _ in range(200):
            w = rng.random((6, 6))
            pairs = hungarian(w)
            assert math.fsum(w[r, k] for r, k in pairs) == best_assignment(w)
        c.note("200 trials, exact equality")


# ------------------------------------------------------------------ 6


def test_criterion_06_metric_oracles():
    with criterion(6, "metrics match independent oracles to 1e-9") as c:
        rng = random.Random(6)
        for _ in range(20):
            g = random_graph(rng, rng.randint(4, 40), edges_per_node=2.5)
            adj = undirected_weights(g)
            assert abs(average_clustering(adj) - clustering_by_triangles([(e.src, e.dst) for e in g.edges.values()], g.nodes)) < 1e-9
            q, parts = greedy_modularity(adj)
            assert abs(q - modularity_definition(adj, parts)) < 1e-9
            assert abs(modularity_of(adj, parts) - modularity_definition(adj, parts)) < 1e-9
            assert abs(edge_entropy(g) - kind_entropy([e.kind.value for e in g.edges.values()])) < 1e-9
            xs = [rng.random() for _ in range(rng.randint(1, 30))]
            assert abs(gini(xs) - gini_pairs(xs)) < 1e-9
            lists = [rng.sample(range(40), rng.randint(0, 15)) for _ in range(rng.randint(1, 4))]
            lists = [[f"d{i}" for i in ranking] for ranking in lists]
            fused = {r.node_id: r.score for r in rrf_fuse(lists)}
            want = rrf(lists)
            assert fused.keys() == want.keys()
            assert all(abs(fused[k] - want[k]) < 1e-9 for k in want)
            f, s = rng.random(), rng.random()
            assert abs(harmony(f, s) - 2 * f * s / (f + s)) < 1e-9
            n_ev = len(g.nodes_of_kind(NodeKind.EVENT))
            n_c = len(g.nodes_of_kind(NodeKind.CONCEPT))
            if n_c:
                assert abs(compression_and_proactivity(g, n_ev)["compression_ratio"] - n_ev / n_c) < 1e-9
        # small graphs: the greedy partition's Q is checked against exhaustive evaluation
        optimal = 0
        for _ in range(60):
            n = rng.randint(2, 8)
            names = [f"v{i}" for i in range(n)]
            adj = {v: {} for v in names}
            for i, a in enumerate(names):
                for b in names[i + 1:]:
                    if rng.random() < 0.45:
                        adj[a][b] = adj[b][a] = round(rng.uniform(0.1, 1.0), 3)
            q, parts = greedy_modularity(adj)
            assert abs(q - modularity_definition(adj, parts)) < 1e-9
            best = best_modularity(adj)
            assert q <= best + 1e-9
            optimal += abs(q - best) < 1e-9
        c.note(f"greedy reached the exhaustive optimum on {optimal}/60 small graphs")


# ------------------------------------------------------------------ 7


@pytest.mark.xfail(strict=True, reason="with reject=0.3 the third EMA value is 0.9685, not 1.0285")
def test_criterion_07_feedback_trace():
    with criterion(7, "[accept, accept, reject] from 1.0 gives 1.150, 1.255, 1.0285") as c:
        th = CategoryThresholds()
        got = [apply_feedback(th, "x", k) for k in ("accept", "accept", "reject")]
        c.note("observed " + ", ".join(f"{v:.4f}" for v in got))
        assert abs(got[0] - 1.150) < 1e-12
        assert abs(got[1] - 1.255) < 1e-12
        assert abs(got[2] - 1.0285) < 1e-12


# ------------------------------------------------------------------ 8, 9


def run_eval(seed):
    env = {**os.environ, "PYTHONHASHSEED": str(seed)}
    start = time.perf_counter()
    out = subprocess.run(
        [sys.executable, "-m", "cognifold.cli", "eval", "--all", "--offline", "--json", "--sweep"],
        capture_output=True, env=env, check=True, timeout=120,
    )
    return out.stdout, time.perf_counter() - start


@pytest.fixture(scope="module")
def eval_runs():
    return [run_eval(1), run_eval(2)]


def test_criterion_08_offline_eval(eval_runs):
    with criterion(8, "eval --all --offline: fast, reproducible, floors met, pinned") as c:
        (a, ta), (b, tb) = eval_runs
        assert a == b
        assert max(ta, tb) < 60
        data = json.loads(a)
        pins = json.loads((DATA / "regression_scores.json").read_text())
        proactive = 0
        for s in data["scenarios"]:
            sc = s["scores"]
            assert sc["compression_ratio"] >= 3, s["scenario"]
            assert sc["purity"] > 0, s["scenario"]
            proactive += sc["proactivity"] > 0
            assert sc == pytest.approx(pins[s["scenario"]]["scores"], abs=1e-12)
        assert proactive >= 4
        c.note(f"{max(ta, tb):.1f}s per run, identical bytes, proactivity>0 on {proactive}/6")


def test_criterion_09_sweep_is_monotone(eval_runs):
    with criterion(9, "Harmony is non-increasing in the matching threshold") as c:
        data = json.loads(eval_runs[0][0])
        for s in data["scenarios"]:
            thetas = [row["theta"] for row in s["sweep"]]
            h = [row["harmony"] for row in s["sweep"]]
            assert thetas == sorted(thetas)
            assert all(x >= y for x, y in zip(h, h[1:])), s["scenario"]
        c.note(f"{len(data['scenarios'])} scenarios x {len(thetas)} thresholds")


# ------------------------------------------------------------------ 10


def solo_remote_graph(events):
    llm = FakeLLM()
    cfg = RemoteConfig(api_base="http://127.0.0.1:1/v1", api_key="test", max_retries=0, timeout=2)
    emb, planner, _ = remote_provider(cfg, transport=llm.transport())
    eng = Engine(Config(), emb, planner)
    for e in events:
        eng.ingest(e)
    return json.loads(eng.graph.to_json())


def test_criterion_10_service_smoke(tmp_path):
    with criterion(10, "service: isolation, restart replay, provider loss") as c:
        start = time.perf_counter()
        events = SOFTENG.raw_events()
        llm = FakeLLMServer().start()
        cfg = tmp_path / "remote.yaml"
        cfg.write_text(
            "provider:\n  mode: remote\n"
            f"  api_base: {llm.base_url}\n  api_key: test\n  max_retries: 0\n  timeout: 2\n"
        )
        store = tmp_path / "store"
        svc = ServiceProcess(cfg, store).start()
        try:
            http = httpx.Client(base_url=svc.url, timeout=30)
            for sid in ("a", "b", "c"):
                assert http.post("/sessions", json={"session_id": sid}).status_code == 201
            for ev in events:  # interleaved single-event streams
                for sid in ("a", "b"):
                    r = http.post(f"/sessions/{sid}/events", json=ev)
                    assert r.status_code == 200 and not r.json()["degraded"]
            ga = http.get("/sessions/a/graph").json()
            gb = http.get("/sessions/b/graph").json()
            assert ga == gb == solo_remote_graph(events)

            svc.stop()
            (store / "b" / "checkpoint.json").unlink()
            svc = ServiceProcess(cfg, store, port=svc.port).start()
            http = httpx.Client(base_url=svc.url, timeout=30)
            assert http.get("/sessions/a/graph").json() == ga
            assert http.get("/sessions/b/graph").json() == gb

            degraded = 0
            for i, ev in enumerate(events):
                if i == 20:
                    llm.kill()
                r = http.post("/sessions/c/events", json=ev)
                assert r.status_code == 200
                body = r.json()
                if i >= 20:
                    assert body["degraded"] and "planner_unavailable" in body["flags"]
                    degraded += 1
            info = http.get("/sessions/c").json()
            assert info["events_ingested"] == len(events)
            log = (store / "c" / "ops.jsonl").read_text().splitlines()
            assert sum(json.loads(x)["op"] == "ingest" for x in log) == len(events)

            svc.stop()
            svc = ServiceProcess(cfg, store, port=svc.port).start()
            http = httpx.Client(base_url=svc.url, timeout=30)
            graph_c = http.get("/sessions/c/graph").json()
            assert sum(n["kind"] == "event" for n in graph_c["nodes"]) == len(events)
        finally:
            svc.stop()
        spent = time.perf_counter() - start
        c.note(f"{spent:.1f}s, {degraded} degraded events after provider loss")
        assert spent < 30


# ------------------------------------------------------------------ 11


TRANSCRIPT_SHA256 = "ac9668fccaec5b22a1b3767f2814c29e9a216c817da72210e0dca596605b6674"
REPLAY = RemoteConfig(api_base="http://llm.test/v1", api_key="test", max_retries=0, malformed_retries=3)

LENIENT = [
    '{"ops": [{"op": "ADD_NODE", "kind": "concept", "title": "A", "reasoning": "r", "grounded_in": ["n000001"]}]}',
    '```json\n{"ops": []}\n```',
    'Here you go:\n{"operations": [{"type": "add_edge", "relation": "grounds", "src": "n000001", "dst": "n000002"}]}\nDone.',
    'Note {not json} first, then {"ops": [{"op": "remove_node", "id": "n000003"}]}',
]


def test_criterion_11_remote_replay():
    with criterion(11, "remote transcript replay survives malformed replies") as c:
        transport = ReplayTransport.from_file(DATA / "transcripts" / "softeng_remote.jsonl")
        emb, planner, _ = remote_provider(REPLAY, transport=transport)
        eng = Engine(Config(), emb, planner)
        flags = set()
        for ev in SOFTENG.raw_events():
            out = eng.ingest(ev)
            flags.update(out.report.flags)
            assert eng.graph.audit() == []
        eng.finish()
        assert {"malformed_response", "rolled_back"} <= flags
        assert len(planner.failures) == 1
        assert transport.remaining() == 0
        digest = hashlib.sha256(eng.graph.to_json().encode()).hexdigest()
        assert digest == TRANSCRIPT_SHA256
        for text in LENIENT:
            plan_from_text(text)
        n_events = len(eng.graph.nodes_of_kind(NodeKind.EVENT))
        c.note(f"{n_events} events, flags {sorted(flags)}, {len(LENIENT)} lenient parses")
