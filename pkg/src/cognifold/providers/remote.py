"""HTTP providers for OpenAI-compatible chat and embedding endpoints.

Traffic can be recorded to, and replayed from, JSONL transcripts with one
``{"request", "response", "timestamp"}`` object per line, so the remote
path is testable without a network.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
import time
from collections import defaultdict, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Mapping, Sequence

import httpx
import numpy as np

from ..errors import (
    AuthFailure,
    JudgeUnavailable,
    MalformedResponse,
    PlannerUnavailable,
    ProviderTimeout,
    ProviderUnreachable,
    RateLimited,
)
from ..plans import UpdatePlan, extract_json, plan_from_text
from . import prompts
from .base import ClusterSummary, clamp_rating

logger = logging.getLogger(__name__)

ENV_KEYS = {
    "api_base": "COGNIFOLD_API_BASE",
    "api_key": "COGNIFOLD_API_KEY",
    "chat_model": "COGNIFOLD_CHAT_MODEL",
    "embed_model": "COGNIFOLD_EMBED_MODEL",
}


@dataclass
class RemoteConfig:
    api_base: str = "https://api.openai.com/v1"
    api_key: str = ""
    chat_model: str = "gpt-4o-mini"
    embed_model: str = "text-embedding-3-small"
    timeout: float = 30.0
    max_retries: int = 3  # for rate limits and timeouts
    backoff: float = 0.5  # seconds, doubled per retry
    malformed_retries: int = 3  # attempts before falling back to an empty plan

    @classmethod
    def from_env(cls, env: Mapping[str, str] | None = None, **overrides: Any) -> RemoteConfig:
        env = os.environ if env is None else env
        values = {k: env[v] for k, v in ENV_KEYS.items() if env.get(v)}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class RemoteClient:
    """Thin JSON-over-HTTP client with retry and error mapping."""

    def __init__(
        self,
        config: RemoteConfig,
        transport: httpx.BaseTransport | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.config = config
        headers = {"Content-Type": "application/json"}
        if config.api_key:
            headers["Authorization"] = f"Bearer {config.api_key}"
        self._http = httpx.Client(
            base_url=config.api_base.rstrip("/") + "/",
            headers=headers,
            timeout=config.timeout,
            transport=transport,
        )
        self._sleep = sleep

    def close(self) -> None:
        self._http.close()

    def post_json(self, path: str, payload: Mapping[str, Any]) -> Any:
        cfg = self.config
        last: Exception | None = None
        for attempt in range(cfg.max_retries + 1):
            if attempt:
                self._sleep(cfg.backoff * 2 ** (attempt - 1))
            try:
                resp = self._http.post(path.lstrip("/"), json=dict(payload))
            except httpx.TimeoutException as exc:
                last = ProviderTimeout(str(exc) or "request timed out")
                continue
            except httpx.TransportError as exc:
                raise ProviderUnreachable(str(exc) or "connection failed") from exc
            if resp.status_code in (401, 403):
                raise AuthFailure(f"HTTP {resp.status_code} from {path}")
            if resp.status_code == 429:
                last = RateLimited(f"HTTP 429 from {path}")
                continue
            if resp.status_code >= 500:
                last = ProviderUnreachable(f"HTTP {resp.status_code} from {path}")
                continue
            if resp.status_code >= 400:
                raise MalformedResponse(f"HTTP {resp.status_code} from {path}: {resp.text[:200]}")
            try:
                return resp.json()
            except ValueError as exc:
                raise MalformedResponse(f"non-JSON body from {path}") from exc
        assert last is not None
        raise last

    def chat(self, messages: Sequence[Mapping[str, str]], *, json_mode: bool = True) -> str:
        payload: dict[str, Any] = {
            "model": self.config.chat_model,
            "messages": list(messages),
            "temperature": 0,
        }
        if json_mode:
            payload["response_format"] = {"type": "json_object"}
        data = self.post_json("chat/completions", payload)
        try:
            content = data["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise MalformedResponse("chat response lacks choices[0].message.content") from exc
        if not isinstance(content, str):
            raise MalformedResponse("chat content is not a string")
        return content

    def embeddings(self, texts: Sequence[str]) -> list[list[float]]:
        data = self.post_json("embeddings", {"model": self.config.embed_model, "input": list(texts)})
        try:
            rows = sorted(data["data"], key=lambda r: r.get("index", 0))
            return [list(map(float, r["embedding"])) for r in rows]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedResponse("embedding response lacks data[].embedding") from exc


class RemoteEmbedder:
    def __init__(self, client: RemoteClient):
        self.client = client
        self._dim: int | None = None
        self._cache: dict[str, np.ndarray] = {}
        self._lock = threading.Lock()

    def dimension(self) -> int:
        if self._dim is None:
            self.embed("dimension probe")
        assert self._dim is not None
        return self._dim

    def embed(self, text: str) -> np.ndarray:
        hit = self._cache.get(text)
        if hit is not None:
            return hit
        rows = self.client.embeddings([text])
        if len(rows) != 1 or not rows[0]:
            raise MalformedResponse("expected exactly one embedding")
        vec = np.asarray(rows[0], dtype=np.float64)
        norm = float(np.linalg.norm(vec))
        if not np.isfinite(norm) or norm == 0.0:
            raise MalformedResponse("embedding has zero or non-finite norm")
        vec = vec / norm
        vec.flags.writeable = False
        with self._lock:
            if self._dim is None:
                self._dim = vec.shape[0]
            elif vec.shape[0] != self._dim:
                raise MalformedResponse(f"embedding dimension changed from {self._dim} to {vec.shape[0]}")
            self._cache[text] = vec
        return vec


@dataclass
class FailedCall:
    kind: str
    raw: list[str] = field(default_factory=list)


class RemotePlanner:
    def __init__(self, client: RemoteClient):
        self.client = client
        self.planner_id = f"remote:{client.config.chat_model}"
        self.failures: list[FailedCall] = []

    def propose(self, event: Any, context: Any, pending_intents: Sequence[Any] = ()) -> UpdatePlan:
        messages = prompts.planner_messages(event, context, pending_intents)
        raw: list[str] = []
        for _ in range(max(1, self.client.config.malformed_retries)):
            try:
                text = self.client.chat(messages)
            except MalformedResponse as exc:
                raw.append(f"<{exc}>")
                continue
            try:
                return plan_from_text(text, planner_id=self.planner_id, created_at=event.created_at)
            except MalformedResponse:
                raw.append(text)
        logger.warning("planner gave %d malformed responses; using an empty plan", len(raw))
        self.failures.append(FailedCall("plan", raw))
        return UpdatePlan(planner_id=self.planner_id, created_at=event.created_at, flags=["malformed_response"])

    def phrase_intent(self, summary: ClusterSummary) -> tuple[str, str, str]:
        raw: list[str] = []
        for _ in range(max(1, self.client.config.malformed_retries)):
            try:
                obj = extract_json(self.client.chat(prompts.intent_messages(summary)))
                title = str(obj["title"]).strip()
                if not title:
                    raise KeyError("title")
                return title, str(obj.get("body", "")), str(obj.get("category", "general"))
            except (MalformedResponse, KeyError, TypeError) as exc:
                raw.append(str(exc))
        self.failures.append(FailedCall("intent", raw))
        raise PlannerUnavailable("intent phrasing returned malformed responses")


class RemoteJudge:
    def __init__(self, client: RemoteClient):
        self.client = client

    def rate(self, concept: str, grounding_event_summaries: Sequence[str], scenario_context: str = "") -> dict[str, float]:
        messages = prompts.judge_messages(concept, grounding_event_summaries, scenario_context)
        for _ in range(max(1, self.client.config.malformed_retries)):
            try:
                obj = extract_json(self.client.chat(messages))
            except MalformedResponse:
                continue
            if isinstance(obj, Mapping):
                return clamp_rating(obj)
        raise JudgeUnavailable("judge returned malformed responses")


def remote_provider(
    config: RemoteConfig | None = None, transport: httpx.BaseTransport | None = None, **kw: Any
) -> tuple[RemoteEmbedder, RemotePlanner, RemoteJudge]:
    client = RemoteClient(config or RemoteConfig.from_env(), transport=transport, **kw)
    return RemoteEmbedder(client), RemotePlanner(client), RemoteJudge(client)


# ------------------------------------------------------------ transcripts


def _request_key(method: str, path: str, body: Any) -> str:
    canon = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(f"{method} {path} {canon}".encode()).hexdigest()


def _decode_body(content: bytes) -> Any:
    if not content:
        return None
    try:
        return json.loads(content)
    except ValueError:
        return content.decode("utf-8", "replace")


class RecordingTransport(httpx.BaseTransport):
    """Forwards to ``inner`` and appends every exchange to a JSONL file."""

    def __init__(self, inner: httpx.BaseTransport, path: str | Path, clock: Callable[[], float] = time.time):
        self.inner = inner
        self.path = Path(path)
        self._clock = clock
        self._lock = threading.Lock()

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        response = self.inner.handle_request(request)
        response.read()
        entry = {
            "request": {
                "method": request.method,
                "path": request.url.path,
                "body": _decode_body(request.content),
            },
            "response": {"status": response.status_code, "body": _decode_body(response.content)},
            "timestamp": self._clock(),
        }
        with self._lock, self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")
        return httpx.Response(response.status_code, content=response.content, headers=response.headers)


class ReplayTransport(httpx.BaseTransport):
    """Serves recorded responses keyed by request content.

    Identical requests are answered in recording order. A request with no
    remaining recording fails as a connection error.
    """

    def __init__(self, entries: Iterable[Mapping[str, Any]]):
        self._queues: dict[str, deque] = defaultdict(deque)
        self._lock = threading.Lock()
        for e in entries:
            req = e["request"]
            self._queues[_request_key(req["method"], req["path"], req.get("body"))].append(e["response"])

    @classmethod
    def from_file(cls, path: str | Path) -> ReplayTransport:
        with open(path, encoding="utf-8") as fh:
            return cls(json.loads(line) for line in fh if line.strip())

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        key = _request_key(request.method, request.url.path, _decode_body(request.content))
        with self._lock:
            queue = self._queues.get(key)
            resp = queue.popleft() if queue else None
        if resp is None:
            raise httpx.ConnectError("no recorded response for request", request=request)
        body = resp.get("body")
        if isinstance(body, str):
            content = body.encode("utf-8")
        else:
            content = json.dumps(body).encode("utf-8")
        return httpx.Response(int(resp.get("status", 200)), content=content, request=request)

    def remaining(self) -> int:
        return sum(len(q) for q in self._queues.values())
