"""Shared fixtures-by-hand: random graphs, a deterministic fake LLM endpoint,
and process/thread runners for HTTP servers."""

from __future__ import annotations

import json
import os
import random
import socket
import subprocess
import sys
import threading
import time
from collections import Counter
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Any, Callable

import httpx
import numpy as np

from cognifold.graph import EdgeKind, MemoryGraph, NodeKind, endpoints_compatible
from cognifold.providers.offline import HashEmbedder
from cognifold.text import tokenize

DATA = Path(__file__).parent / "data"

# criterion number -> one-line verdict, printed at the end of the run
CRITERIA: dict[int, str] = {}


class criterion:
    """Context manager that records ``PASS``/``FAIL`` for one acceptance criterion."""

    def __init__(self, number: int, title: str):
        self.number, self.title, self.details = number, title, ""

    def note(self, text: str) -> None:
        self.details = text

    def __enter__(self) -> "criterion":
        return self

    def __exit__(self, exc_type: Any, exc: Any, tb: Any) -> bool:
        verdict = "PASS" if exc_type is None else "FAIL"
        line = f"[{verdict}] criterion {self.number:>2}: {self.title}"
        if self.details:
            line += f" ({self.details})"
        CRITERIA[self.number] = line
        print(line)
        return False

KIND_MIX = (NodeKind.EVENT,) * 5 + (NodeKind.CONCEPT,) * 3 + (NodeKind.INTENT, NodeKind.TIME)


def random_graph(
    rng: random.Random,
    n: int,
    *,
    edges_per_node: float = 2.0,
    dim: int = 8,
    t0: int = 1_700_000_000,
    span_h: int = 400,
    embeddings: bool = True,
) -> MemoryGraph:
    """A graph with mixed node kinds, random timestamps, accesses and legal typed edges."""
    g = MemoryGraph()
    ids = []
    for i in range(n):
        kind = rng.choice(KIND_MIX)
        created = t0 + rng.randrange(span_h * 3600)
        emb = unit([rng.gauss(0, 1) for _ in range(dim)]) if embeddings else None
        extra: dict[str, Any] = {}
        if kind is NodeKind.INTENT:
            extra["intent_status"] = "pending"
        if kind is NodeKind.TIME:
            extra["deadline_at"] = t0 + rng.randrange((span_h + 48) * 3600)
        nid = g.add_node(kind, f"node {i}", f"body {i}", created, embedding=emb, **extra)
        node = g.nodes[nid]
        node.access_count = rng.randrange(6)
        node.last_accessed_at = created + rng.randrange(48 * 3600)
        ids.append(nid)
    kinds = list(EdgeKind)
    target = int(edges_per_node * n)
    attempts = 0
    while len(g.edges) < target and attempts < target * 40:
        attempts += 1
        a, b = rng.choice(ids), rng.choice(ids)
        kind = rng.choice(kinds)
        if a == b or not endpoints_compatible(kind, g.nodes[a].kind, g.nodes[b].kind):
            continue
        g.add_edge(kind, a, b, round(rng.uniform(0.05, 1.0), 6))
    return g


def collapse_parallel(g: MemoryGraph) -> None:
    """Fold parallel (kind, src, dst) edges into one carrying the max weight."""
    seen: dict[tuple, str] = {}
    for e in list(g.iter_edges()):
        key = (e.kind, e.src, e.dst)
        if key in seen:
            kept = g.edges[seen[key]]
            kept.weight = max(kept.weight, e.weight)
            g.remove_edge(e.id)
        else:
            seen[key] = e.id


def free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


# ------------------------------------------------------------------ fake LLM

MALFORMED = {
    # chat content with no JSON object at all
    "prose": {"content": "This event looks like ongoing sprint work; nothing to add."},
    # a 200 reply that lacks choices[0].message.content
    "no_choices": {"body": {"id": "cmpl-x", "object": "chat.completion", "choices": []}},
    # JSON cut off mid-object
    "truncated": {"content": '{"ops": [{"op": "ADD_NODE", "kind": "concept", "title": "Half'},
}


def _chat_body(content: str) -> dict[str, Any]:
    return {
        "id": "cmpl-fake",
        "object": "chat.completion",
        "choices": [{"index": 0, "message": {"role": "assistant", "content": content}, "finish_reason": "stop"}],
    }


class FakeLLM:
    """Deterministic stand-in for an OpenAI-compatible chat + embeddings API.

    The planner reply reinforces a visible concept whose title shares a
    token with the event, or else names a concept after the token the event
    shares with at least two context events. ``faults`` maps the ordinal of
    a chat call to a key of :data:`MALFORMED` (or ``"dangling"``, a plan
    that points at a node that does not exist).
    """

    def __init__(self, dim: int = 64, faults: dict[int, str] | None = None):
        self.embedder = HashEmbedder(dim)
        self.faults = dict(faults or {})
        self.chat_calls = 0
        self.lock = threading.Lock()

    def respond(self, path: str, body: Any) -> tuple[int, Any]:
        if path.endswith("/embeddings"):
            texts = body["input"] if isinstance(body["input"], list) else [body["input"]]
            data = [{"index": i, "embedding": self.embedder.embed(t).tolist()} for i, t in enumerate(texts)]
            return 200, {"object": "list", "data": data}
        if path.endswith("/chat/completions"):
            with self.lock:
                ordinal = self.chat_calls
                self.chat_calls += 1
            fault = self.faults.get(ordinal)
            if fault == "dangling":
                plan = {"ops": [{"op": "ADD_EDGE", "edge_kind": "RELATE_TO", "src": "n999999", "dst": "n000001"}]}
                return 200, _chat_body(json.dumps(plan))
            if fault is not None:
                reply = MALFORMED[fault]
                return 200, reply.get("body") or _chat_body(reply["content"])
            return 200, _chat_body(self._answer(body["messages"]))
        return 404, {"error": "unknown path"}

    def _answer(self, messages: list[dict[str, str]]) -> str:
        system, user = messages[0]["content"], json.loads(messages[-1]["content"])
        if "grade one concept" in system:
            return json.dumps({"meaningfulness": 0.8, "groundedness": 0.7, "abstraction": 0.6})
        if "Name that goal" in system:
            head = user["concepts"][0] if user["concepts"] else "the pattern"
            return json.dumps({"title": f"Follow up on {head}", "body": "Recurring theme.", "category": "general"})
        return "```json\n" + json.dumps(self._plan(user)) + "\n```"

    @staticmethod
    def _plan(user: dict[str, Any]) -> dict[str, Any]:
        event = user["event"]
        ev_tokens = set(tokenize(event["title"]))
        ctx = user["context"]
        nodes = ctx["immediate"] + ctx["working"] + ctx["background"]
        concepts = sorted((n for n in nodes if n["kind"] == "concept"), key=lambda n: n["id"])
        for c in concepts:
            if ev_tokens & set(tokenize(c["title"])):
                return {"ops": [{
                    "op": "ADD_EDGE", "edge_kind": "REINFORCE", "src": event["id"], "dst": c["id"],
                    "reasoning": "matches an existing concept", "grounded_in": [event["id"]],
                }]}
        named = {t for c in concepts for t in tokenize(c["title"])}
        others = sorted((n for n in nodes if n["kind"] == "event" and n["id"] != event["id"]), key=lambda n: n["id"])
        counts: Counter = Counter()
        for n in others:
            counts.update(set(tokenize(n["title"])) & ev_tokens - named)
        best = sorted((t for t, c in counts.items() if c >= 2), key=lambda t: (-counts[t], t))
        if not best:
            return {"ops": []}
        token = best[0]
        grounds = [event["id"]] + [n["id"] for n in others if token in tokenize(n["title"])][:4]
        ops: list[dict[str, Any]] = [{
            "op": "ADD_NODE", "kind": "concept", "title": f"{token.capitalize()} thread",
            "body": f"Events that keep coming back to {token}.",
            "reasoning": "recurring token", "grounded_in": grounds,
        }]
        for g in grounds:
            ops.append({"op": "ADD_EDGE", "edge_kind": "GROUNDS", "src": g, "dst": "$0",
                        "reasoning": "grounding", "grounded_in": [g]})
        return {"ops": ops}

    # -- adapters

    def transport(self) -> httpx.MockTransport:
        def handler(request: httpx.Request) -> httpx.Response:
            body = json.loads(request.content) if request.content else None
            status, payload = self.respond(request.url.path, body)
            return httpx.Response(status, json=payload)

        return httpx.MockTransport(handler)


class FakeLLMServer:
    """Serves a :class:`FakeLLM` over real HTTP on localhost; ``kill`` makes it vanish."""

    def __init__(self, llm: FakeLLM | None = None, port: int | None = None):
        self.llm = llm or FakeLLM()
        self.port = port or free_port()
        llm_ref = self.llm

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self) -> None:  # noqa: N802
                length = int(self.headers.get("content-length", 0))
                body = json.loads(self.rfile.read(length) or b"null")
                status, payload = llm_ref.respond(self.path, body)
                data = json.dumps(payload).encode()
                self.send_response(status)
                self.send_header("content-type", "application/json")
                self.send_header("content-length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            def log_message(self, *args: Any) -> None:
                pass

        self.httpd = ThreadingHTTPServer(("127.0.0.1", self.port), Handler)
        self.thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)

    @property
    def base_url(self) -> str:
        return f"http://127.0.0.1:{self.port}/v1"

    def start(self) -> FakeLLMServer:
        self.thread.start()
        return self

    def kill(self) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()
        self.thread.join(timeout=5)


# ------------------------------------------------------------------ service process


class ServiceProcess:
    """``cognifold serve`` in a child process."""

    def __init__(self, config_path: Path, storage_dir: Path, port: int | None = None, env: dict | None = None):
        self.port = port or free_port()
        self.args = [
            sys.executable, "-m", "cognifold.cli", "serve",
            "--config", str(config_path), "--storage-dir", str(storage_dir), "--port", str(self.port),
        ]
        self.env = {**os.environ, **(env or {})}
        self.proc: subprocess.Popen | None = None

    @property
    def url(self) -> str:
        return f"http://127.0.0.1:{self.port}"

    def start(self, timeout: float = 15.0) -> ServiceProcess:
        self.proc = subprocess.Popen(self.args, env=self.env, stdout=subprocess.DEVNULL, stderr=subprocess.PIPE)
        deadline = time.monotonic() + timeout
        while time.monotonic() < deadline:
            if self.proc.poll() is not None:
                raise RuntimeError(f"service exited: {self.proc.stderr.read().decode()}")
            try:
                if httpx.get(self.url + "/health", timeout=0.5).status_code == 200:
                    return self
            except httpx.TransportError:
                time.sleep(0.05)
        raise TimeoutError("service did not come up")

    def stop(self) -> None:
        if self.proc is not None and self.proc.poll() is None:
            self.proc.terminate()
            try:
                self.proc.wait(timeout=10)
            except subprocess.TimeoutExpired:
                self.proc.kill()
                self.proc.wait()
        self.proc = None


def wait_for(pred: Callable[[], bool], timeout: float = 5.0) -> bool:
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        if pred():
            return True
        time.sleep(0.02)
    return False


def unit(v: Any) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    return a / np.linalg.norm(a)


# ------------------------------------------------------------------ random plans


def random_plan(rng: random.Random, g: MemoryGraph, n_ops: int, now: int) -> list[dict[str, Any]]:
    """A statically valid plan mixing every op kind, tracking what earlier ops create or remove."""
    events = [n.id for n in g.nodes_of_kind(NodeKind.EVENT)]
    concepts = [n.id for n in g.nodes_of_kind(NodeKind.CONCEPT)]
    intents = [n.id for n in g.nodes_of_kind(NodeKind.INTENT) if n.intent_status.value == "pending"]
    ops: list[dict[str, Any]] = []
    for i in range(n_ops):
        choice = rng.random()
        why = f"step {i}"
        if choice < 0.3 or not concepts:
            grounds = rng.sample(events, min(len(events), rng.randint(1, 3)))
            ops.append({"op": "ADD_NODE", "kind": "concept", "title": f"concept {i}", "body": "b",
                        "reasoning": why, "grounded_in": grounds})
            concepts.append(f"${i}")
        elif choice < 0.55:
            ev, c = rng.choice(events), rng.choice(concepts)
            kind = rng.choice(["GROUNDS", "REINFORCE", "RELATE_TO"])
            ops.append({"op": "ADD_EDGE", "edge_kind": kind, "src": ev, "dst": c,
                        "weight": round(rng.uniform(0.1, 1.0), 3), "reasoning": why, "grounded_in": [ev]})
        elif choice < 0.7:
            ops.append({"op": "UPDATE_NODE", "id": rng.choice(concepts), "title": f"renamed {i}",
                        "metadata": {"step": str(i)}, "reasoning": why})
        elif choice < 0.8 and intents:
            target = intents.pop(rng.randrange(len(intents)))
            ops.append({"op": "UPDATE_NODE", "id": target, "intent_status": rng.choice(["resolved", "deferred"]),
                        "reasoning": why})
        elif choice < 0.9 and len(concepts) >= 2:
            keep, absorb = rng.sample(concepts, 2)
            concepts.remove(absorb)
            ops.append({"op": "MERGE_NODES", "keep": keep, "absorb": absorb, "reasoning": why})
        elif len(concepts) >= 2:
            victim = concepts.pop(rng.randrange(len(concepts)))
            ops.append({"op": "REMOVE_NODE", "id": victim, "reasoning": why})
        else:
            ev = rng.choice(events)
            ops.append({"op": "ADD_EDGE", "edge_kind": "CAUSES", "src": ev, "dst": rng.choice(events),
                        "reasoning": why})
    return ops
