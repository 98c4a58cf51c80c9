"""Tokenizer shared by BM25, the hash embedder and the rule planner."""

from __future__ import annotations

import re

STOPWORDS = frozenset(
    """a an and are as at be by for from has he in is it its of on that the to
    was were will with i my me we our us you your they them their she her his
    this these those there here so but or if than then also just very into
    about after before over up out off again did do does had have been got
    what when where which who how why while all any each some more most""".split()
)

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def raw_tokens(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


def tokenize(text: str) -> list[str]:
    """Lowercase, split on non-alphanumerics, drop stopwords. No stemming."""
    return [t for t in raw_tokens(text) if len(t) > 1 and t not in STOPWORDS]
