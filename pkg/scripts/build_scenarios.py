"""Regenerate the bundled CogEval-Bench scenario files from the hand-written content.

    python3 scripts/build_scenarios.py [--check]

Each scenario's events are shuffled with a fixed seed, chain steps are
spread across the stream in order, and timestamps increase across the
scenario window.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

from scenario_news_academic import ACADEMIC, NEWS  # noqa: E402
from scenario_softeng_health import HEALTH, SOFTENG  # noqa: E402
from scenario_team_support import SUPPORT, TEAM  # noqa: E402

OUT = HERE.parent / "src" / "cognifold" / "cogeval" / "data"
EXPECTED_EVENTS = {"SoftEng": 41, "Health": 39, "Team": 38, "News": 42, "Academic": 47, "Support": 44}
BASE_TIME = 1_717_200_000  # 2024-06-01 00:00 UTC
DAY = 86_400


def build(scenario: dict, offset_days: int) -> tuple[dict, list[dict]]:
    rng = random.Random(scenario["seed"])
    pool = []
    for c in scenario["concepts"]:
        for title, desc in c["events"]:
            pool.append({"title": title, "description": desc, "event_type": "observation", "gold_concept": c["label"]})
    for title, desc in scenario["distractors"]:
        pool.append({"title": title, "description": desc, "event_type": "observation", "gold_concept": None})
    rng.shuffle(pool)

    chains = [
        [{"title": t, "description": d, "event_type": "chain_step", "gold_concept": label} for label, t, d in chain]
        for chain in scenario["chains"]
    ]
    total = len(pool) + sum(len(c) for c in chains)
    # spread each chain over the stream: chain k starts in the first third and
    # its steps land on evenly spaced slots
    slots: dict[int, dict] = {}
    chain_positions: list[list[int]] = []
    for k, chain in enumerate(chains):
        start = 1 + k * 3 + rng.randrange(0, 3)
        stride = max(2, (total - start - 2) // len(chain))
        positions = []
        for step, ev in enumerate(chain):
            pos = start + step * stride
            while pos in slots:
                pos += 1
            slots[pos] = ev
            positions.append(pos)
        chain_positions.append(positions)
    events: list[dict] = []
    it = iter(pool)
    for i in range(total):
        events.append(slots[i] if i in slots else next(it))

    window = scenario["window_days"] * DAY
    gaps = [rng.uniform(0.5, 1.5) for _ in range(total)]
    scale = (window - 3600) / sum(gaps)
    t = BASE_TIME + offset_days * DAY
    for ev, g in zip(events, gaps):
        t += int(g * scale)
        ev["timestamp"] = t

    counts = {c["label"]: 0 for c in scenario["concepts"]}
    for ev in events:
        if ev["gold_concept"] is not None:
            counts[ev["gold_concept"]] += 1
    gold = {
        "name": scenario["name"],
        "domain": scenario["domain"],
        "window_days": scenario["window_days"],
        "concepts": [
            {
                "label": c["label"],
                "description": c["description"],
                "keywords": c["keywords"],
                "expected_event_count": counts[c["label"]],
            }
            for c in scenario["concepts"]
        ],
        "relations": [{"src": s, "dst": d, "kind": k} for s, d, k in scenario["relations"]],
        "hierarchy": [{"label": p, "children": ch} for p, ch in scenario["hierarchy"]],
        "intents": [
            {"label": label, "supporting_concepts": sup, "trigger_pattern": pat}
            for label, sup, pat in scenario["intents"]
        ],
        "chains": chain_positions,
    }
    return gold, events


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="fail if regenerated files differ from disk")
    args = ap.parse_args()
    stale = []
    for offset, scenario in enumerate((SOFTENG, HEALTH, TEAM, NEWS, ACADEMIC, SUPPORT)):
        gold, events = build(scenario, offset * 30)
        if len(events) != EXPECTED_EVENTS[scenario["name"]]:
            print(f"{scenario['name']}: {len(events)} events, expected {EXPECTED_EVENTS[scenario['name']]}", file=sys.stderr)
            return 1
        d = OUT / scenario["name"].lower()
        files = {
            d / "gold.json": json.dumps(gold, indent=2) + "\n",
            d / "events.jsonl": "".join(json.dumps(e, sort_keys=True) + "\n" for e in events),
        }
        for path, text in files.items():
            if args.check:
                if not path.exists() or path.read_text(encoding="utf-8") != text:
                    stale.append(path)
            else:
                d.mkdir(parents=True, exist_ok=True)
                path.write_text(text, encoding="utf-8")
    if stale:
        print("stale: " + ", ".join(map(str, stale)), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
