"""Small synchronous client for the memory service."""

from __future__ import annotations

import json
from typing import Any, Iterable, Mapping, Optional

import httpx

from ..errors import (
    CogniFoldError,
    IllegalTransition,
    MissingNode,
    PlannerUnavailable,
    SchemaViolation,
    UnknownSession,
)


class ServiceError(CogniFoldError):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _raise_for(resp: httpx.Response) -> None:
    if resp.status_code < 400:
        return
    try:
        body = resp.json()
        kind, detail = body.get("error", ""), body.get("detail", resp.text)
    except ValueError:
        kind, detail = "", resp.text
    code = resp.status_code
    if code == 404:
        raise (MissingNode if kind == "MissingNode" else UnknownSession)(str(detail))
    if code == 409:
        raise IllegalTransition(str(detail))
    if code == 400:
        raise SchemaViolation("request", str(detail))
    if code == 503:
        raise PlannerUnavailable(str(detail))
    raise ServiceError(code, f"HTTP {code}: {detail}")


class ServiceClient:
    def __init__(
        self,
        base_url: str,
        token: str = "",
        timeout: float = 60.0,
        transport: Optional[httpx.BaseTransport] = None,
    ):
        headers = {"authorization": f"Bearer {token}"} if token else {}
        self._http = httpx.Client(base_url=base_url, headers=headers, timeout=timeout, transport=transport)

    def close(self) -> None:
        self._http.close()

    def __enter__(self) -> ServiceClient:
        return self

    def __exit__(self, *exc: Any) -> None:
        self.close()

    def _call(self, method: str, path: str, **kw: Any) -> Any:
        resp = self._http.request(method, path, **kw)
        _raise_for(resp)
        return resp.json()

    def health(self) -> dict[str, Any]:
        return self._call("GET", "/health")

    def create_session(self, session_id: Optional[str] = None) -> dict[str, Any]:
        return self._call("POST", "/sessions", json={"session_id": session_id})

    def ensure_session(self, session_id: str) -> dict[str, Any]:
        try:
            return self._call("GET", f"/sessions/{session_id}")
        except UnknownSession:
            return self.create_session(session_id)

    def sessions(self) -> list[str]:
        return self._call("GET", "/sessions")["sessions"]

    def delete_session(self, session_id: str) -> dict[str, Any]:
        return self._call("DELETE", f"/sessions/{session_id}")

    def ingest(self, session_id: str, events: Iterable[Mapping[str, Any]], finish: bool = False) -> dict[str, Any]:
        return self._call("POST", f"/sessions/{session_id}/events", json={"events": list(events), "finish": finish})

    def ingest_ndjson(self, session_id: str, events: Iterable[Mapping[str, Any]]) -> dict[str, Any]:
        body = "".join(json.dumps(e) + "\n" for e in events)
        return self._call(
            "POST", f"/sessions/{session_id}/events",
            content=body, headers={"content-type": "application/x-ndjson"},
        )

    def query(self, session_id: str, text: str, **params: Any) -> dict[str, Any]:
        params = {k: v for k, v in params.items() if v is not None}
        if "node_kinds" in params:
            params["kind"] = list(params.pop("node_kinds"))
        for flag in ("refine", "read_only"):
            if flag in params:
                params[flag] = str(bool(params[flag])).lower()
        return self._call("GET", f"/sessions/{session_id}/query", params={"q": text, **params})

    def consolidate(self, session_id: str, now: Optional[int] = None) -> dict[str, Any]:
        return self._call("POST", f"/sessions/{session_id}/consolidate", params={} if now is None else {"now": now})

    def intents(self, session_id: str, status: Optional[str] = None) -> dict[str, Any]:
        return self._call("GET", f"/sessions/{session_id}/intents", params={} if status is None else {"status": status})

    def feedback(
        self, session_id: str, intent_id: str, action: str, note: Optional[str] = None, now: Optional[int] = None
    ) -> dict[str, Any]:
        return self._call(
            "POST", f"/sessions/{session_id}/intents/{intent_id}/feedback",
            json={"action": action, "note": note, "now": now},
        )

    def export(self, session_id: str, bundle: bool = True) -> dict[str, Any]:
        return self._call("GET", f"/sessions/{session_id}/graph", params={"bundle": str(bundle).lower()})

    def import_bundle(self, session_id: str, bundle: Mapping[str, Any]) -> dict[str, Any]:
        return self._call("PUT", f"/sessions/{session_id}/graph", json=dict(bundle))
