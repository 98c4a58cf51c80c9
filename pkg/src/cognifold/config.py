"""Runtime configuration: built-in defaults, then a YAML/JSON file, then environment."""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import yaml

from .consolidation import ConsolidationConfig
from .intents import CategoryThresholds, default_scores
from .retrieval import ReadPathConfig
from .writepath import PriorityWeights, TierWeights, WritePathConfig

ENV_PREFIX = "COGNIFOLD_"

# short environment names for the most common knobs
ENV_ALIASES = {
    "COGNIFOLD_API_BASE": ("provider", "api_base"),
    "COGNIFOLD_API_KEY": ("provider", "api_key"),
    "COGNIFOLD_CHAT_MODEL": ("provider", "chat_model"),
    "COGNIFOLD_EMBED_MODEL": ("provider", "embed_model"),
    "COGNIFOLD_PROVIDER": ("provider", "mode"),
    "COGNIFOLD_STORAGE_DIR": ("storage_dir",),
    "COGNIFOLD_TOKEN": ("service_token",),
}


@dataclass
class IntentConfig:
    alpha_ema: float = 0.3
    base_density_threshold: float = 1.5
    cluster_link_theta: float = 0.5
    feedback_scores: dict[str, float] = field(default_factory=default_scores)

    def thresholds(self) -> CategoryThresholds:
        return CategoryThresholds(
            alpha_ema=self.alpha_ema,
            base_density_threshold=self.base_density_threshold,
            scores=dict(self.feedback_scores),
        )


@dataclass
class ProviderConfig:
    mode: str = "offline"  # offline | remote
    embed_dim: int = 256  # offline hash embedder only
    api_base: str = "https://api.openai.com/v1"
    api_key: str = ""
    chat_model: str = "gpt-4o-mini"
    embed_model: str = "text-embedding-3-small"
    timeout: float = 30.0
    max_retries: int = 3

    def __post_init__(self) -> None:
        if self.mode not in ("offline", "remote"):
            raise ValueError(f"provider mode must be offline or remote, not {self.mode!r}")


@dataclass
class EvalConfig:
    theta: float = 0.75
    sweep: tuple[float, ...] = (0.65, 0.70, 0.75, 0.80, 0.85)


@dataclass
class Config:
    write_path: WritePathConfig = field(default_factory=WritePathConfig)
    consolidation: ConsolidationConfig = field(default_factory=ConsolidationConfig)
    intents: IntentConfig = field(default_factory=IntentConfig)
    read_path: ReadPathConfig = field(default_factory=ReadPathConfig)
    provider: ProviderConfig = field(default_factory=ProviderConfig)
    eval: EvalConfig = field(default_factory=EvalConfig)
    storage_dir: str = "cognifold-data"
    consolidation_interval_events: int = 10
    service_token: str = ""

    def to_dict(self, *, redact: bool = True) -> dict[str, Any]:
        out = _plain(dataclasses.asdict(self))
        if redact:
            out["provider"]["api_key"] = "***" if self.provider.api_key else ""
            out["service_token"] = "***" if self.service_token else ""
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Config:
        return _merge(cls(), data, "")


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _coerce(current: Any, value: Any, path: str) -> Any:
    if isinstance(current, bool):
        if isinstance(value, str):
            return value.strip().lower() in ("1", "true", "yes", "on")
        return bool(value)
    if isinstance(current, int) and not isinstance(current, bool):
        return int(value)
    if isinstance(current, float):
        return float(value)
    if isinstance(current, tuple):
        if isinstance(value, str):
            value = json.loads(value) if value.strip().startswith("[") else value.split(",")
        return tuple(type(current[0])(v) if current else v for v in value)
    if isinstance(current, dict):
        if isinstance(value, str):
            value = json.loads(value)
        if not isinstance(value, Mapping):
            raise ValueError(f"{path}: expected a mapping")
        merged = dict(current)
        merged.update({str(k): float(v) if isinstance(current.get(k), float) else v for k, v in value.items()})
        return merged
    return str(value) if isinstance(current, str) else value


def _merge(obj: Any, data: Mapping[str, Any], prefix: str) -> Any:
    if not isinstance(data, Mapping):
        raise ValueError(f"{prefix or 'config'}: expected a mapping")
    known = {f.name: f for f in dataclasses.fields(obj)}
    changes = {}
    for key, value in data.items():
        path = f"{prefix}{key}"
        if key not in known:
            raise ValueError(f"unknown config key {path!r}")
        current = getattr(obj, key)
        if dataclasses.is_dataclass(current):
            changes[key] = _merge(current, value, path + ".")
        else:
            try:
                changes[key] = _coerce(current, value, path)
            except (TypeError, ValueError) as exc:
                raise ValueError(f"bad value for {path}: {value!r}") from exc
    return dataclasses.replace(obj, **changes)


def _set_path(tree: dict[str, Any], path: tuple[str, ...], value: Any) -> None:
    for part in path[:-1]:
        tree = tree.setdefault(part, {})
    tree[path[-1]] = value


def env_overrides(env: Mapping[str, str] | None = None) -> dict[str, Any]:
    """Collect overrides from ``COGNIFOLD_*`` variables.

    Besides the aliases, ``COGNIFOLD__SECTION__KEY`` addresses any nested
    field, e.g. ``COGNIFOLD__CONSOLIDATION__MERGE_THETA=0.9``.
    """
    env = os.environ if env is None else env
    tree: dict[str, Any] = {}
    for name, value in sorted(env.items()):
        if name in ENV_ALIASES:
            _set_path(tree, ENV_ALIASES[name], value)
        elif name.startswith(ENV_PREFIX + "_"):
            parts = tuple(p.lower() for p in name[len(ENV_PREFIX) + 1:].split("__") if p)
            if parts:
                _set_path(tree, parts, value)
    return tree


def read_file(path: str | Path) -> dict[str, Any]:
    text = Path(path).read_text(encoding="utf-8")
    data = json.loads(text) if str(path).endswith(".json") else yaml.safe_load(text)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f"{path}: config file must hold a mapping")
    return data


def load_config(path: str | Path | None = None, env: Mapping[str, str] | None = None) -> Config:
    cfg = Config()
    if path is not None:
        cfg = _merge(cfg, read_file(path), "")
    overrides = env_overrides(env)
    if overrides:
        cfg = _merge(cfg, overrides, "")
    return cfg


__all__ = [
    "Config",
    "EvalConfig",
    "IntentConfig",
    "PriorityWeights",
    "ProviderConfig",
    "TierWeights",
    "load_config",
]
