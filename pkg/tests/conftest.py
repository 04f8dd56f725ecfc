from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from equicolor.graph_core import Graph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)], range(n))


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], range(n))


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete(n: int) -> Graph:
    return Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def polygon(n: int, chords) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)] + list(chords), range(n))


def fan(n: int) -> Graph:
    """Apex 0 joined to the path 1..n-1."""
    return Graph(n, [(0, i) for i in range(1, n)] + [(i, i + 1) for i in range(1, n - 1)], range(n))


def brute_alpha_through(g: Graph, v: int) -> int:
    """Largest independent set containing v by plain subset enumeration."""
    others = [u for u in range(g.n) if u != v and u not in g.adj[v]]
    best = 1
    for mask in range(1 << len(others)):
        chosen = [others[i] for i in range(len(others)) if mask >> i & 1]
        if len(chosen) + 1 <= best:
            continue
        if all(b not in g.adj[a] for i, a in enumerate(chosen) for b in chosen[i + 1:]):
            best = len(chosen) + 1
    return best


@pytest.fixture
def hexagon_fan_chords() -> Graph:
    return polygon(6, [(0, 2), (0, 3), (3, 5)])


@pytest.fixture
def hexagon_star_chords() -> Graph:
    return polygon(6, [(0, 2), (2, 4), (4, 0)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
