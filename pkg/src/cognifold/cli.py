"""``cognifold`` command line.

Without ``--server`` commands run in-process against the session store under
``storage_dir``; with ``--server URL`` they go to a running service. Both
paths return the same payloads, which ``--json`` prints verbatim.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence, TextIO

from .config import Config, load_config
from .errors import (
    EmbedderUnavailable,
    IllegalTransition,
    JudgeUnavailable,
    MissingNode,
    PlannerUnavailable,
    SchemaViolation,
    UnknownSession,
)

logger = logging.getLogger("cognifold")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNKNOWN_SESSION = 3
EXIT_ILLEGAL_TRANSITION = 4
EXIT_SCHEMA = 5
EXIT_PROVIDER = 6

EXIT_CODES = [
    (UnknownSession, EXIT_UNKNOWN_SESSION),
    (MissingNode, EXIT_UNKNOWN_SESSION),
    (IllegalTransition, EXIT_ILLEGAL_TRANSITION),
    (SchemaViolation, EXIT_SCHEMA),
    (PlannerUnavailable, EXIT_PROVIDER),
    (EmbedderUnavailable, EXIT_PROVIDER),
    (JudgeUnavailable, EXIT_PROVIDER),
]


class LocalBackend:
    """Same surface as :class:`ServiceClient`, backed by an in-process store."""

    def __init__(self, config: Config, storage_dir: str):
        from .service import operations as ops
        from .service.sessions import SessionStore

        self._ops = ops
        self.store = SessionStore(config, storage_dir)

    def ensure_session(self, session_id: str) -> dict[str, Any]:
        return self._ops.session_info(self.store.create(session_id, exist_ok=True)).model_dump()

    def ingest(self, session_id: str, events: Iterable[Mapping[str, Any]], finish: bool = False) -> dict[str, Any]:
        return self._ops.ingest(self.store, session_id, list(events), finish).model_dump()

    def query(self, session_id: str, text: str, **params: Any) -> dict[str, Any]:
        from .retrieval import QueryRequest

        params = {k: v for k, v in params.items() if v is not None}
        return self._ops.query(self.store, session_id, QueryRequest(text, **params)).model_dump()

    def consolidate(self, session_id: str, now: Optional[int] = None) -> dict[str, Any]:
        return self._ops.consolidate(self.store, session_id, now).model_dump()

    def intents(self, session_id: str, status: Optional[str] = None) -> dict[str, Any]:
        return self._ops.intents(self.store, session_id, status).model_dump()

    def feedback(self, session_id: str, intent_id: str, action: str, note: Optional[str] = None, now: Optional[int] = None) -> dict[str, Any]:
        return self._ops.feedback(self.store, session_id, intent_id, action, note, now).model_dump()

    def export(self, session_id: str, bundle: bool = True) -> dict[str, Any]:
        return self._ops.export(self.store, session_id, bundle)

    def import_bundle(self, session_id: str, bundle: Mapping[str, Any]) -> dict[str, Any]:
        return self._ops.session_info(self.store.import_bundle(session_id, bundle)).model_dump()

    def close(self) -> None:
        pass


# ------------------------------------------------------------------ helpers


def read_events(fh: TextIO, source: str) -> tuple[list[dict[str, Any]], int]:
    """Parse JSONL, skipping bad lines with a warning; returns (events, skipped)."""
    from .writepath import RawEvent

    events, skipped = [], 0
    for lineno, line in enumerate(fh, 1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
            RawEvent.from_dict(data)  # validate early so the batch is clean
        except (json.JSONDecodeError, ValueError, TypeError, AttributeError) as exc:
            logger.warning("%s:%d: skipped malformed event (%s)", source, lineno, exc)
            skipped += 1
            continue
        events.append(data)
    return events, skipped


def _emit(args: argparse.Namespace, payload: Any, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        print(human)


def _open_backend(args: argparse.Namespace, cfg: Config):
    if args.server:
        from .service.client import ServiceClient

        return ServiceClient(args.server, token=args.token or cfg.service_token)
    return LocalBackend(cfg, args.storage_dir or cfg.storage_dir)


# ----------------------------------------------------------------- commands


def cmd_ingest(args: argparse.Namespace, cfg: Config) -> int:
    if args.input in (None, "-"):
        events, skipped = read_events(sys.stdin, "<stdin>")
    else:
        with open(args.input, encoding="utf-8") as fh:
            events, skipped = read_events(fh, args.input)
    backend = _open_backend(args, cfg)
    try:
        backend.ensure_session(args.session)
        out = backend.ingest(args.session, events, finish=True)
    finally:
        backend.close()
    out["skipped_lines"] = skipped
    lines = [
        f"{r['event_id']}  ops={r['ops_applied']}"
        + ("  DEGRADED" if r["degraded"] else "")
        + (f"  [{', '.join(r['flags'])}]" if r["flags"] else "")
        for r in out["results"]
    ]
    lines.append(f"{len(out['results'])} events ingested into {args.session}, {skipped} skipped")
    _emit(args, out, "\n".join(lines))
    return EXIT_OK


def cmd_query(args: argparse.Namespace, cfg: Config) -> int:
    backend = _open_backend(args, cfg)
    try:
        out = backend.query(
            args.session, args.text, mode=args.mode, top_n=args.top_n,
            node_kinds=args.kind or None, refine=args.refine or None, read_only=args.read_only or None,
        )
    finally:
        backend.close()
    lines = [f"{r['rank']:>3}. [{r['kind']}] {r['title']}  ({r['score']:.4f}, {r['node_id']})" for r in out["results"]]
    if out["degraded"]:
        lines.append(f"(degraded: {', '.join(out['flags'])})")
    _emit(args, out, "\n".join(lines) or "no results")
    return EXIT_OK


def cmd_consolidate(args: argparse.Namespace, cfg: Config) -> int:
    backend = _open_backend(args, cfg)
    try:
        out = backend.consolidate(args.session, args.now)
    finally:
        backend.close()
    c = out["consolidation"]
    human = (
        f"reinforced={c['reinforced']} merges={len(c['merges'])} decayed={c['decayed_edges']} "
        f"pruned={c['pruned_edges']} inferred={len(c['inferred_edges'])} new_intents={len(out['intents'])}"
        + (f" [{', '.join(out['flags'])}]" if out["flags"] else "")
    )
    _emit(args, out, human)
    return EXIT_OK


def cmd_intents(args: argparse.Namespace, cfg: Config) -> int:
    backend = _open_backend(args, cfg)
    try:
        out = backend.intents(args.session, args.status)
    finally:
        backend.close()
    lines = [
        f"{i['id']}  {i['status']:<8} {i['title']}  "
        f"(category={i['category']}, triggers={i['support']['triggers']}, grounds={i['support']['grounds']})"
        for i in out["intents"]
    ]
    _emit(args, out, "\n".join(lines) or "no intents")
    return EXIT_OK


def cmd_feedback(args: argparse.Namespace, cfg: Config) -> int:
    backend = _open_backend(args, cfg)
    try:
        out = backend.feedback(args.session, args.intent_id, args.action, args.note)
    finally:
        backend.close()
    _emit(args, out, f"{out['intent_id']} -> {out['status']}; weight[{out['category']}] = {out['weight']:.4f}")
    return EXIT_OK


def cmd_export(args: argparse.Namespace, cfg: Config) -> int:
    backend = _open_backend(args, cfg)
    try:
        bundle = backend.export(args.session, bundle=not args.graph_only)
    finally:
        backend.close()
    text = json.dumps(bundle, indent=2, sort_keys=True) + "\n"
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        if not args.json:
            print(f"exported {args.session} to {args.output}")
    return EXIT_OK


def cmd_import(args: argparse.Namespace, cfg: Config) -> int:
    src = sys.stdin.read() if args.input == "-" else Path(args.input).read_text(encoding="utf-8")
    try:
        bundle = json.loads(src)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(args.input, f"not JSON: {exc.msg}") from exc
    backend = _open_backend(args, cfg)
    try:
        out = backend.import_bundle(args.session, bundle)
    finally:
        backend.close()
    _emit(args, out, f"imported into {out['session_id']}: {out['nodes']} nodes, {out['edges']} edges")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace, cfg: Config) -> int:
    from .cogeval.runner import markdown_table, run_scenario, sweep_table, write_reports
    from .cogeval.schema import DATA_DIR, bundled_scenarios

    if args.all:
        paths = bundled_scenarios()
    elif args.scenario:
        paths = [Path(p) if Path(p).exists() else DATA_DIR / p.lower() for p in args.scenario]
    else:
        print("eval: name a scenario directory or pass --all", file=sys.stderr)
        return EXIT_ERROR
    thetas = tuple(args.thetas) if args.thetas else cfg.eval.sweep
    results = [run_scenario(p, cfg, theta=args.theta, thetas=thetas)[0] for p in paths]
    if args.out:
        write_reports(results, args.out)
    if args.json:
        from .cogeval.runner import aggregate

        payload = {
            "scenarios": [r.to_dict() for r in results],
            "aggregate": aggregate(results),
        }
        if not args.sweep:
            for s in payload["scenarios"]:
                s.pop("sweep")
        print(json.dumps(payload, indent=2, sort_keys=True))
        return EXIT_OK
    print(markdown_table(results), end="")
    if args.sweep:
        print("\nHarmony by matching threshold\n")
        print(sweep_table(results), end="")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace, cfg: Config) -> int:
    import uvicorn

    from .service.api import create_app

    app = create_app(cfg, storage_dir=args.storage_dir or cfg.storage_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level=args.log_level)
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, metavar="PATH", help="YAML or JSON config file")
    common.add_argument("--session", default=argparse.SUPPRESS, help="session id (default: 'default')")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument(
        "--offline", action="store_true", default=argparse.SUPPRESS,
        help="use the hash embedder and rule planner regardless of config",
    )
    common.add_argument("--storage-dir", default=argparse.SUPPRESS, help="where sessions are stored")
    common.add_argument("--server", default=argparse.SUPPRESS, metavar="URL", help="talk to a running service")
    common.add_argument("--token", default=argparse.SUPPRESS, help="bearer token for --server")
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="cognifold", description="Streaming graph memory for agents.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("ingest", parents=[common], help="ingest a JSONL event file (or stdin)")
    s.add_argument("input", nargs="?", help="JSONL file, '-' for stdin")
    s.set_defaults(func=cmd_ingest)

    s = sub.add_parser("query", parents=[common], help="search a session")
    s.add_argument("text")
    s.add_argument("--mode", choices=["auto", "bm25", "semantic", "hybrid", "traversal"], default="auto")
    s.add_argument("--top-n", type=int, default=10)
    s.add_argument("--kind", action="append", choices=["event", "concept", "intent", "time"])
    s.add_argument("--refine", action="store_true")
    s.add_argument("--read-only", action="store_true", help="do not count this lookup as an access")
    s.set_defaults(func=cmd_query)

    s = sub.add_parser("consolidate", parents=[common], help="run one maintenance pass")
    s.add_argument("--now", type=int, help="unix time for the pass (default: session clock)")
    s.set_defaults(func=cmd_consolidate)

    s = sub.add_parser("intents", parents=[common], help="list intents")
    s.add_argument("--status", choices=["pending", "resolved", "rejected", "deferred"])
    s.set_defaults(func=cmd_intents)

    s = sub.add_parser("feedback", parents=[common], help="accept, modify, defer or reject an intent")
    s.add_argument("intent_id")
    s.add_argument("action", choices=["accept", "modify", "defer", "reject"])
    s.add_argument("--note")
    s.set_defaults(func=cmd_feedback)

    s = sub.add_parser("eval", parents=[common], help="score CogEval-Bench scenarios")
    s.add_argument("scenario", nargs="*", help="scenario directory or bundled name")
    s.add_argument("--all", action="store_true", help="all six bundled scenarios")
    s.add_argument("--sweep", action="store_true", help="include the matching-threshold sweep")
    s.add_argument("--theta", type=float, help="matching threshold (default from config)")
    s.add_argument("--thetas", type=float, nargs="+", help="thresholds for --sweep")
    s.add_argument("--out", help="write per-scenario JSON and summary.md here")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8765)
    s.add_argument("--log-level", default="warning")
    s.set_defaults(func=cmd_serve)

    s = sub.add_parser("export", parents=[common], help="write a session bundle as JSON")
    s.add_argument("-o", "--output", help="file (default stdout)")
    s.add_argument("--graph-only", action="store_true", help="bare graph snapshot without engine state")
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("import", parents=[common], help="load a bundle or snapshot into a session")
    s.add_argument("input", help="bundle JSON file, '-' for stdin")
    s.set_defaults(func=cmd_import)
    return p


DEFAULTS = {
    "config": None,
    "session": "default",
    "json": False,
    "offline": False,
    "storage_dir": None,
    "server": None,
    "token": None,
    "verbose": 0,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    for k, v in DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.server is None:
        args.server = os.environ.get("COGNIFOLD_SERVER") or None
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = load_config(args.config)
        if args.offline:
            cfg.provider.mode = "offline"
        return args.func(args, cfg)
    except Exception as exc:
        for cls, code in EXIT_CODES:
            if isinstance(exc, cls):
                print(f"error: {exc}", file=sys.stderr)
                return code
        if isinstance(exc, (FileNotFoundError, ValueError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        raise


if __name__ == "__main__":
    sys.exit(main())
