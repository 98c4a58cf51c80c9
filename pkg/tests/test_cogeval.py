import copy
import json
import math
import random

import networkx as nx
import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from cognifold.cogeval.metrics import (
    average_clustering,
    compression_and_proactivity,
    edge_entropy,
    gini,
    greedy_modularity,
    harmony,
    hungarian,
    match_thresholded,
    modularity_of,
    undirected_weights,
)
from cognifold.cogeval.runner import run_scenario
from cognifold.cogeval.schema import DATA_DIR, bundled_scenarios, load_scenario, parse_events, parse_gold
from cognifold.errors import SchemaViolation
from cognifold.graph import MemoryGraph
from helpers import DATA, random_graph
from oracles import (
    best_assignment,
    best_modularity,
    clustering_by_triangles,
    gini_pairs,
    kind_entropy,
    modularity_definition,
)

T0 = 1_700_000_000


# --------------------------------------------------------------- assignment


@pytest.mark.parametrize("shape", [(1, 1), (3, 3), (4, 6), (6, 4), (5, 5)])
def test_hungarian_matches_exhaustive_and_scipy(shape):
    rng = np.random.default_rng(sum(shape))
    for _ in range(20):
        w = rng.random(shape)
        pairs = hungarian(w)
        assert len(pairs) == min(shape)
        assert len({r for r, _ in pairs}) == len({c for _, c in pairs}) == len(pairs)
        got = math.fsum(w[r, c] for r, c in pairs)
        assert got == best_assignment(w)
        rows, cols = linear_sum_assignment(w, maximize=True)
        assert got == pytest.approx(w[rows, cols].sum(), abs=1e-12)


def test_hungarian_edge_cases():
    assert hungarian(np.zeros((0, 3))) == []
    assert hungarian(np.array([[0.0, 0.0], [0.0, 0.0]])) in ([(0, 0), (1, 1)], [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        hungarian(np.zeros(3))


def test_thresholded_matching_counts():
    sims = np.array([[0.9, 0.8, 0.1], [0.85, 0.2, 0.1]])
    m = match_thresholded(sims, 0.75)
    assert [(i, j) for i, j, _ in m.matching] == [(0, 1), (1, 0)]
    assert (m.precision, m.recall) == (1.0, pytest.approx(2 / 3))
    assert m.f1 == pytest.approx(0.8)
    assert match_thresholded(sims, 0.95).f1 == 0.0
    assert match_thresholded(np.zeros((0, 3)), 0.5).f1 == 0.0
    with pytest.raises(ValueError):
        match_thresholded(sims, 0)


def test_harmony():
    assert harmony(0.5, 0.5) == 0.5
    assert harmony(0.0, 0.9) == 0.0
    assert harmony(0.6, 0.3) == pytest.approx(0.4)
    assert harmony(0, 0) == 0.0


# ------------------------------------------------------------------- gini


@pytest.mark.parametrize("seed", range(10))
def test_gini_matches_pairwise_definition(seed):
    rng = random.Random(seed)
    xs = [rng.random() for _ in range(rng.randint(1, 40))]
    assert gini(xs) == pytest.approx(gini_pairs(xs), abs=1e-9)


def test_gini_extremes():
    assert gini([1, 1, 1, 1]) == pytest.approx(0.0, abs=1e-12)
    assert gini([0, 0, 0, 1]) == pytest.approx(0.75)
    assert gini([]) == 0.0 and gini([0, 0]) == 0.0


# --------------------------------------------------------------- topology


def to_nx(adj):
    g = nx.Graph()
    g.add_nodes_from(adj)
    for a, nbrs in adj.items():
        for b, w in nbrs.items():
            g.add_edge(a, b, weight=w)
    return g


@pytest.mark.parametrize("seed", range(10))
def test_clustering_matches_triangles_and_networkx(seed):
    g = random_graph(random.Random(seed), random.Random(seed).randint(3, 40), edges_per_node=3.0)
    adj = undirected_weights(g)
    edges = [(e.src, e.dst) for e in g.edges.values()]
    got = average_clustering(adj)
    assert got == pytest.approx(clustering_by_triangles(edges, g.nodes), abs=1e-9)
    assert got == pytest.approx(nx.average_clustering(to_nx(adj)), abs=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_modularity_matches_definition_and_networkx(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(4, 30), edges_per_node=2.0)
    adj = undirected_weights(g)
    nodes = sorted(adj)
    rng.shuffle(nodes)
    k = rng.randint(1, 4)
    parts = [nodes[i::k] for i in range(k)]
    parts = [p for p in parts if p]
    got = modularity_of(adj, parts)
    assert got == pytest.approx(modularity_definition(adj, parts), abs=1e-9)
    if any(adj.values()):
        assert got == pytest.approx(nx.community.modularity(to_nx(adj), parts, weight="weight"), abs=1e-9)


def small_adj(rng, n):
    adj = {f"v{i}": {} for i in range(n)}
    names = sorted(adj)
    for a in names:
        for b in names:
            if a < b and rng.random() < 0.4:
                w = round(rng.uniform(0.1, 1.0), 3)
                adj[a][b] = adj[b][a] = w
    return adj


@pytest.mark.parametrize("seed", range(40))
def test_greedy_partition_value_is_exact_and_bounded(seed):
    rng = random.Random(seed)
    adj = small_adj(rng, rng.randint(2, 7))
    q, parts = greedy_modularity(adj)
    assert sorted(v for p in parts for v in p) == sorted(adj)
    assert q == pytest.approx(modularity_definition(adj, parts), abs=1e-9)
    assert q <= best_modularity(adj) + 1e-9


@pytest.mark.parametrize("sizes", [(3, 3), (4, 3), (3, 3, 2), (4, 4)])
def test_greedy_finds_planted_cliques(sizes):
    adj, names = {}, []
    for c, size in enumerate(sizes):
        block = [f"c{c}_{i}" for i in range(size)]
        names.append(block)
        for a in block:
            adj.setdefault(a, {})
            for b in block:
                if a != b:
                    adj[a][b] = 1.0
    for left, right in zip(names, names[1:]):  # one weak bridge between neighbouring cliques
        adj[left[0]][right[0]] = adj[right[0]][left[0]] = 0.1
    q, parts = greedy_modularity(adj)
    assert sorted(map(sorted, parts)) == sorted(map(sorted, names))
    assert q == pytest.approx(best_modularity(adj), abs=1e-9)


def test_edge_entropy_matches_log2_form():
    g = random_graph(random.Random(7), 40, edges_per_node=3.0)
    kinds = [e.kind.value for e in g.edges.values()]
    assert edge_entropy(g) == pytest.approx(kind_entropy(kinds), abs=1e-9)
    assert edge_entropy(MemoryGraph()) == 0.0


def test_compression_and_proactivity():
    g = MemoryGraph()
    evs = [g.add_node("event", f"e{i}", "x", T0 + i) for i in range(6)]
    c = g.add_node("concept", "c", "", T0)
    i1 = g.add_node("intent", "well supported", "", T0, intent_status="pending")
    g.add_node("intent", "thin", "", T0, intent_status="pending")
    for e in evs[:2]:
        g.add_edge("GROUNDS", e, i1)
    g.add_edge("TRIGGERS", c, i1)
    out = compression_and_proactivity(g, 6)
    assert out["compression_ratio"] == 6.0
    assert out["proactivity"] == 0.5
    assert math.isinf(compression_and_proactivity(MemoryGraph(), 3)["compression_ratio"])


# ------------------------------------------------------------------ schema


def test_bundled_scenarios_load():
    totals = [0, 0]
    for path in bundled_scenarios():
        gold, fixture = load_scenario(path)
        totals[0] += len(fixture)
        totals[1] += len(gold.concepts)
    assert totals == [251, 49]


def gold_data():
    return json.loads((DATA_DIR / "softeng" / "gold.json").read_text())


@pytest.mark.parametrize(
    "mutate,where",
    [
        (lambda d: d.pop("concepts"), "gold.concepts"),
        (lambda d: d["relations"].__setitem__(0, {**d["relations"][0], "kind": "LIKES"}), "gold.relations[0].kind"),
        (lambda d: d["relations"].__setitem__(0, {**d["relations"][0], "src": "Nope"}), "gold.relations[0].src"),
        (lambda d: d["intents"].pop(), "gold.intents"),
        (lambda d: d["chains"].__setitem__(0, [1, 2]), "gold.chains[0] hops"),
        (lambda d: d.__setitem__("window_days", 0), "gold.window_days"),
        (lambda d: d["concepts"][0].__setitem__("keywords", "x"), "gold.concepts[0].keywords"),
    ],
)
def test_gold_schema_errors_name_the_field(mutate, where):
    data = copy.deepcopy(gold_data())
    mutate(data)
    with pytest.raises(SchemaViolation) as err:
        parse_gold(data)
    assert err.value.path == where


def test_event_schema_errors():
    rows = [json.loads(x) for x in (DATA_DIR / "softeng" / "events.jsonl").read_text().splitlines() if x.strip()]
    swapped = rows[:]
    swapped[1], swapped[2] = dict(rows[2], timestamp=rows[2]["timestamp"] + 10**6), rows[1]
    with pytest.raises(SchemaViolation, match="sorted"):
        parse_events(swapped)
    with pytest.raises(SchemaViolation, match="distractor"):
        parse_events([r for r in rows if r.get("gold_concept") is not None])
    with pytest.raises(SchemaViolation):
        parse_events([{k: v for k, v in rows[0].items() if k != "title"}] + rows[1:])


def test_missing_files(tmp_path):
    with pytest.raises(SchemaViolation, match="file not found"):
        load_scenario(tmp_path)


# ------------------------------------------------------------- end to end


PINS = json.loads((DATA / "regression_scores.json").read_text())


@pytest.mark.parametrize("name", sorted(PINS))
def test_offline_scores_match_pins(name):
    result, engine = run_scenario(DATA_DIR / name.lower())
    want = PINS[name]
    assert result.stats == want["stats"]
    assert result.scores.to_dict() == pytest.approx(want["scores"], abs=1e-12)
    assert [row["harmony"] for row in result.sweep] == pytest.approx(want["sweep"], abs=1e-12)
    assert engine.graph.audit() == []


def test_sweep_harmony_is_non_increasing():
    for name, pin in PINS.items():
        h = pin["sweep"]
        assert all(a >= b for a, b in zip(h, h[1:])), name


def test_softeng_compresses_events_into_concepts():
    stats = PINS["SoftEng"]["stats"]
    assert stats["concepts"] >= 5
    assert stats["concepts"] / stats["events"] <= 0.68
