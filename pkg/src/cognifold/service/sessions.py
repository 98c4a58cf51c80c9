"""Per-session memory instances with durable storage.

Each session lives in ``<storage_dir>/<session_id>/``:

``ops.jsonl``
    append-only log of every mutating operation (ingest, consolidate,
    feedback, import, non read-only query), written and flushed *before* the
    operation runs.
``checkpoint.json``
    graph snapshot plus engine state and the number of log entries it
    already reflects, replaced atomically after every request.

Recovery loads the checkpoint and replays any log entries past its offset,
so a crash between logging and checkpointing loses nothing.
"""

from __future__ import annotations

import json
import logging
import os
import re
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Mapping

from ..config import Config
from ..engine import Engine, IngestOutcome, MaintenanceReport
from ..errors import IllegalTransition, MissingNode, SchemaViolation, UnknownSession
from ..graph import IntentStatus, MemoryGraph, NodeKind, Snapshot
from ..intents import FeedbackKind, FeedbackResult
from ..providers import build_providers
from ..retrieval import QueryRequest, QueryResponse
from ..writepath import RawEvent

logger = logging.getLogger(__name__)

SESSION_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_.-]{0,63}$")
LOG_NAME = "ops.jsonl"
CHECKPOINT_NAME = "checkpoint.json"
BUNDLE_FORMAT = "cognifold-session/1"

ProviderFactory = Callable[[], tuple[Any, Any, Any]]


def check_session_id(session_id: str) -> str:
    if not SESSION_ID_RE.match(session_id or ""):
        raise SchemaViolation("session_id", "use 1-64 letters, digits, '_', '.' or '-'")
    return session_id


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with tmp.open("w", encoding="utf-8") as fh:
        fh.write(text)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def query_to_dict(req: QueryRequest) -> dict[str, Any]:
    return {
        "text": req.text,
        "mode": req.mode.value,
        "top_n": req.top_n,
        "node_kinds": None if req.node_kinds is None else sorted(k.value for k in req.node_kinds),
        "refine": req.refine,
        "read_only": req.read_only,
    }


def query_from_dict(data: Mapping[str, Any]) -> QueryRequest:
    return QueryRequest(
        text=data["text"],
        mode=data.get("mode", "auto"),
        top_n=int(data.get("top_n", 10)),
        node_kinds=data.get("node_kinds"),
        refine=bool(data.get("refine", False)),
        read_only=bool(data.get("read_only", False)),
    )


@dataclass
class Session:
    session_id: str
    engine: Engine
    root: Path | None
    log_entries: int = 0
    lock: threading.RLock = field(default_factory=threading.RLock)

    # -- storage

    @property
    def log_path(self) -> Path | None:
        return None if self.root is None else self.root / LOG_NAME

    def _append(self, entries: Iterable[Mapping[str, Any]]) -> None:
        entries = list(entries)
        if self.root is not None and entries:
            with self.log_path.open("a", encoding="utf-8") as fh:
                for e in entries:
                    fh.write(json.dumps(e, sort_keys=True) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
        self.log_entries += len(entries)

    def bundle(self) -> dict[str, Any]:
        return {
            "format": BUNDLE_FORMAT,
            "session_id": self.session_id,
            "log_entries": self.log_entries,
            "graph": self.engine.graph.snapshot().to_dict(),
            "state": self.engine.state_dict(),
        }

    def checkpoint(self) -> None:
        if self.root is not None:
            _atomic_write(self.root / CHECKPOINT_NAME, json.dumps(self.bundle(), sort_keys=True))

    # -- operations; each logs first, applies, then checkpoints

    def _apply(self, entry: Mapping[str, Any]) -> Any:
        op = entry["op"]
        eng = self.engine
        if op == "ingest":
            return eng.ingest(RawEvent.from_dict(entry["event"]))
        if op == "finish":
            return eng.finish()
        if op == "consolidate":
            return eng.maintain(entry.get("now"))
        if op == "feedback":
            return eng.feedback(entry["intent_id"], entry["action"], entry.get("note"), entry.get("now"))
        if op == "query":
            return eng.query(query_from_dict(entry["request"]), entry.get("now"))
        if op == "restore":
            graph, state = _parse_bundle(entry["bundle"])
            eng.graph = graph
            eng.load_state_dict(state)
            return None
        raise SchemaViolation("op", f"unknown log operation {op!r}")

    def ingest(self, events: Iterable[RawEvent | Mapping[str, Any]], *, finish: bool = False) -> list[IngestOutcome]:
        parsed = [e if isinstance(e, RawEvent) else RawEvent.from_dict(e) for e in events]
        with self.lock:
            entries = [{"op": "ingest", "event": e.to_dict()} for e in parsed]
            if finish:
                entries.append({"op": "finish"})
            self._append(entries)
            try:
                outcomes = [self.engine.ingest(e) for e in parsed]
                if finish:
                    report = self.engine.finish()
                    if report is not None and outcomes:
                        outcomes[-1].maintenance = report
            finally:
                self.checkpoint()
            return outcomes

    def consolidate(self, now: int | None = None) -> MaintenanceReport:
        with self.lock:
            entry = {"op": "consolidate", "now": self.engine.now() if now is None else int(now)}
            self._append([entry])
            try:
                return self._apply(entry)
            finally:
                self.checkpoint()

    def feedback(self, intent_id: str, action: str, note: str | None = None, now: int | None = None) -> FeedbackResult:
        with self.lock:
            entry = {
                "op": "feedback",
                "intent_id": intent_id,
                "action": action,
                "note": note,
                "now": self.engine.now() if now is None else int(now),
            }
            # validate first so rejected feedback never reaches the log
            FeedbackKind(action)
            node = self.engine.graph.nodes.get(intent_id)
            if node is None or node.kind is not NodeKind.INTENT:
                raise MissingNode(f"no intent {intent_id!r}")
            if node.intent_status is not IntentStatus.PENDING:
                raise IllegalTransition(f"intent {intent_id} is {node.intent_status.value}, not pending")
            self._append([entry])
            try:
                return self._apply(entry)
            finally:
                self.checkpoint()

    def query(self, request: QueryRequest, now: int | None = None) -> QueryResponse:
        if request.read_only:
            with self.lock:
                return self.engine.query(request, now)
        with self.lock:
            entry = {"op": "query", "request": query_to_dict(request), "now": now}
            self._append([entry])
            try:
                return self._apply(entry)
            finally:
                self.checkpoint()

    def replace_graph(self, bundle: Mapping[str, Any]) -> None:
        """Swap in an exported bundle; it is logged so a full replay still works."""
        _parse_bundle(bundle)
        with self.lock:
            entry = {"op": "restore", "bundle": dict(bundle)}
            self._append([entry])
            try:
                self._apply(entry)
            finally:
                self.checkpoint()


def _parse_bundle(bundle: Mapping[str, Any]) -> tuple[MemoryGraph, dict[str, Any]]:
    if not isinstance(bundle, Mapping):
        raise SchemaViolation("", "bundle must be a JSON object")
    if "graph" in bundle:
        graph_data = bundle["graph"]
        state = dict(bundle.get("state") or {})
    else:  # a bare graph snapshot
        graph_data, state = bundle, {}
    try:
        graph = MemoryGraph()
        graph.restore_from(Snapshot.from_dict(graph_data))
    except SchemaViolation:
        raise
    except Exception as exc:
        raise SchemaViolation("graph", f"not a valid graph snapshot: {exc}") from exc
    return graph, state


class SessionStore:
    """Creates, loads and isolates sessions.

    With ``storage_dir=None`` sessions live only in memory.
    """

    def __init__(
        self,
        config: Config,
        storage_dir: str | Path | None = None,
        providers: ProviderFactory | None = None,
    ):
        self.config = config
        self.root = None if storage_dir is None else Path(storage_dir)
        self._providers = providers or (lambda: build_providers(config.provider))
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        if self.root is not None:
            self.root.mkdir(parents=True, exist_ok=True)

    def _new_engine(self, graph: MemoryGraph | None = None) -> Engine:
        embedder, planner, _ = self._providers()
        return Engine(self.config, embedder, planner, graph=graph)

    def _dir(self, session_id: str) -> Path | None:
        return None if self.root is None else self.root / session_id

    def exists(self, session_id: str) -> bool:
        if session_id in self._sessions:
            return True
        d = self._dir(session_id)
        return d is not None and SESSION_ID_RE.match(session_id) is not None and d.is_dir()

    def list(self) -> list[str]:
        ids = set(self._sessions)
        if self.root is not None:
            ids.update(p.name for p in self.root.iterdir() if p.is_dir() and SESSION_ID_RE.match(p.name))
        return sorted(ids)

    def create(self, session_id: str | None = None, *, exist_ok: bool = False) -> Session:
        sid = check_session_id(session_id or uuid.uuid4().hex[:12])
        with self._lock:
            if self.exists(sid):
                if not exist_ok:
                    raise SchemaViolation("session_id", f"session {sid!r} already exists")
                return self._load_locked(sid)
            d = self._dir(sid)
            if d is not None:
                d.mkdir(parents=True)
                (d / LOG_NAME).touch()
            session = Session(sid, self._new_engine(), d)
            session.checkpoint()
            self._sessions[sid] = session
            return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            return self._load_locked(session_id)

    def _load_locked(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is not None:
            return session
        if not self.exists(session_id):
            raise UnknownSession(f"no session {session_id!r}")
        session = self._recover(session_id)
        self._sessions[session_id] = session
        return session

    def _recover(self, session_id: str) -> Session:
        d = self._dir(session_id)
        engine = self._new_engine()
        session = Session(session_id, engine, d)
        cp = d / CHECKPOINT_NAME
        if cp.exists():
            bundle = json.loads(cp.read_text(encoding="utf-8"))
            graph, state = _parse_bundle(bundle)
            engine.graph = graph
            engine.load_state_dict(state)
            session.log_entries = int(bundle.get("log_entries", 0))
        entries = read_log(d / LOG_NAME)
        tail = entries[session.log_entries:]
        for entry in tail:
            try:
                session._apply(entry)
            except Exception as exc:  # the live request failed the same way
                logger.warning("replay of %s in %s failed: %s", entry.get("op"), session_id, exc)
        session.log_entries = len(entries)
        if tail:
            logger.info("session %s: replayed %d logged operations", session_id, len(tail))
            session.checkpoint()
        return session

    def rebuild(self, session_id: str) -> MemoryGraph:
        """Replay the full op log into a fresh engine, ignoring the checkpoint."""
        d = self._dir(session_id)
        if d is None or not d.is_dir():
            raise UnknownSession(f"no stored session {session_id!r}")
        session = Session(session_id, self._new_engine(), None)
        for entry in read_log(d / LOG_NAME):
            try:
                session._apply(entry)
            except Exception as exc:
                logger.warning("replay of %s failed: %s", entry.get("op"), exc)
        return session.engine.graph

    def delete(self, session_id: str) -> None:
        with self._lock:
            if not self.exists(session_id):
                raise UnknownSession(f"no session {session_id!r}")
            self._sessions.pop(session_id, None)
            d = self._dir(session_id)
            if d is not None and d.is_dir():
                for p in d.iterdir():
                    p.unlink()
                d.rmdir()

    def evict(self, session_id: str | None = None) -> None:
        """Drop cached sessions so the next access reloads them from disk."""
        with self._lock:
            if session_id is None:
                self._sessions.clear()
            else:
                self._sessions.pop(session_id, None)

    def import_bundle(self, session_id: str, bundle: Mapping[str, Any]) -> Session:
        session = self.create(session_id, exist_ok=True)
        session.replace_graph(bundle)
        return session


def read_log(path: Path) -> list[dict[str, Any]]:
    if not path.exists():
        return []
    out = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError:
                # a torn final write from a crash; everything before it is intact
                logger.warning("%s:%d: dropping unreadable log line", path, lineno)
                break
    return out


__all__ = [
    "BUNDLE_FORMAT",
    "Session",
    "SessionStore",
    "check_session_id",
    "query_from_dict",
    "query_to_dict",
    "read_log",
]
