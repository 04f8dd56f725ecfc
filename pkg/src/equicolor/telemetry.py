"""Process-wide counters for fallbacks and assertion events."""
from __future__ import annotations

from collections import Counter

_counts: Counter = Counter()


def bump(name: str, k: int = 1) -> None:
    _counts[name] += k


def snapshot() -> dict[str, int]:
    return dict(_counts)


def reset() -> None:
    _counts.clear()
