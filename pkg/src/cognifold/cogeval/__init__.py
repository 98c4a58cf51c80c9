from .metrics import (
    TrackScores,
    average_clustering,
    chain_discovery,
    compression_and_proactivity,
    edge_entropy,
    evaluate_scenario,
    gini,
    gold_f1,
    greedy_modularity,
    harmony,
    hungarian,
    llm_quality,
    modularity_of,
    purity,
    sensitivity_sweep,
    topology_metrics,
)
from .runner import ScenarioResult, aggregate, markdown_table, run_all, run_scenario, write_reports
from .schema import EventFixture, GoldGraph, bundled_scenarios, load_scenario

__all__ = [
    "EventFixture",
    "GoldGraph",
    "ScenarioResult",
    "TrackScores",
    "aggregate",
    "average_clustering",
    "bundled_scenarios",
    "chain_discovery",
    "compression_and_proactivity",
    "edge_entropy",
    "evaluate_scenario",
    "gini",
    "gold_f1",
    "greedy_modularity",
    "harmony",
    "hungarian",
    "llm_quality",
    "load_scenario",
    "markdown_table",
    "modularity_of",
    "purity",
    "run_all",
    "run_scenario",
    "sensitivity_sweep",
    "topology_metrics",
    "write_reports",
]
