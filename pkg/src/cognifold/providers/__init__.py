from .base import JUDGE_KEYS, ClusterSummary, Embedder, Judge, Planner, clamp_rating, embed_many
from .offline import HashEmbedder, RulePlanner, RulePlannerConfig, StubJudge, hash_embedder, rule_planner, stub_judge
from .remote import RemoteConfig, ReplayTransport, RecordingTransport, remote_provider

__all__ = [
    "JUDGE_KEYS",
    "ClusterSummary",
    "Embedder",
    "HashEmbedder",
    "Judge",
    "Planner",
    "RecordingTransport",
    "RemoteConfig",
    "ReplayTransport",
    "RulePlanner",
    "RulePlannerConfig",
    "StubJudge",
    "clamp_rating",
    "build_providers",
    "embed_many",
    "hash_embedder",
    "remote_provider",
    "rule_planner",
    "stub_judge",
]


def build_providers(cfg, transport=None):
    """Instantiate ``(embedder, planner, judge)`` from a provider config section."""
    if cfg.mode == "offline":
        embedder = hash_embedder(cfg.embed_dim)
        return embedder, rule_planner(embedder), stub_judge()
    remote = RemoteConfig(
        api_base=cfg.api_base,
        api_key=cfg.api_key,
        chat_model=cfg.chat_model,
        embed_model=cfg.embed_model,
        timeout=cfg.timeout,
        max_retries=cfg.max_retries,
    )
    return remote_provider(remote, transport=transport)
