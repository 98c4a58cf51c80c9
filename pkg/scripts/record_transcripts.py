"""Record the remote-provider transcript used by the replay tests.

Streams the SoftEng fixture through remote providers talking to the
deterministic fake endpoint in tests/helpers.py, with three malformed
replies and one dangling plan injected. Writes
tests/data/transcripts/softeng_remote.jsonl.

    python scripts/record_transcripts.py
"""

from __future__ import annotations

import itertools
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from helpers import FakeLLM  # noqa: E402

from cognifold.cogeval.schema import DATA_DIR, load_scenario  # noqa: E402
from cognifold.config import Config  # noqa: E402
from cognifold.engine import Engine  # noqa: E402
from cognifold.providers.remote import RecordingTransport, RemoteConfig, remote_provider  # noqa: E402

OUT = ROOT / "tests" / "data" / "transcripts" / "softeng_remote.jsonl"

# chat-call ordinal -> injected reply; 20..22 exhaust the planner's retries
FAULTS = {3: "prose", 10: "no_choices", 20: "truncated", 21: "truncated", 22: "truncated", 30: "dangling"}
REMOTE = RemoteConfig(api_base="http://llm.test/v1", api_key="test", max_retries=0, malformed_retries=3)


def main() -> None:
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.unlink(missing_ok=True)
    tick = itertools.count()
    transport = RecordingTransport(FakeLLM(faults=FAULTS).transport(), OUT, clock=lambda: float(next(tick)))
    embedder, planner, _ = remote_provider(REMOTE, transport=transport)
    _, fixture = load_scenario(DATA_DIR / "softeng")
    engine = Engine(Config(), embedder, planner)
    flags = []
    for ev in fixture.raw_events():
        flags.extend(engine.ingest(ev).report.flags)
    engine.finish()
    print(f"wrote {sum(1 for _ in OUT.open())} exchanges to {OUT}")
    print("flags:", sorted(set(flags)), "planner failures:", len(planner.failures))


if __name__ == "__main__":
    main()
