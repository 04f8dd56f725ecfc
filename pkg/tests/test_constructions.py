from __future__ import annotations

from collections import Counter

import pytest

from equicolor.constructions import degenerate_gadget, extender_chain, planar_gadget, stalactite_chain
from equicolor.errors import Infeasible
from equicolor.graph_core import Graph, validate_embedding
from equicolor.oracle import alpha_v_exact, exhaustive_equitable


def colour_profiles(g: Graph, k: int) -> Counter:
    """Class-size profiles of every proper k-colouring using all k colours (up to renaming)."""
    order = sorted(range(g.n), key=lambda v: (-g.degree[v], v))
    colour = [0] * g.n
    out: Counter = Counter()

    def rec(i: int, used: int) -> None:
        if i == g.n:
            if used == k:
                out[tuple(sorted(Counter(colour).values(), reverse=True))] += 1
            return
        v = order[i]
        for c in range(1, min(used + 1, k) + 1):
            if all(colour[u] != c for u in g.adj[v]):
                colour[v] = c
                rec(i + 1, max(used, c))
                colour[v] = 0

    rec(0, 0)
    return out


@pytest.mark.parametrize("i,n", [(1, 8), (2, 28), (3, 48)])
def test_stalactite_orders(i, n):
    g, cert = stalactite_chain(i)
    assert g.n == cert.claimed_order == n
    assert g.max_degree() == cert.claimed_max_degree == 5
    assert cert.claimed_class_profile == (n // 2, n // 4, n // 4)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_stalactite_structure(i):
    g, _ = stalactite_chain(i)
    rep = validate_embedding(g)
    assert rep.is_outerplanar and g.m == 2 * g.n - 3
    assert min(alpha_v_exact(g, v).size for v in range(g.n)) >= g.n // 3


def test_stalactite_unique_three_colouring():
    g, _ = stalactite_chain(1)
    assert colour_profiles(g, 3) == Counter({(4, 2, 2): 1})
    assert isinstance(exhaustive_equitable(g, 3), Infeasible)


@pytest.mark.parametrize("s", [3, 6, 10])
def test_planar_gadget_shape(s):
    g, cert = planar_gadget(s)
    assert g.n == cert.claimed_order == s * s + s + 2
    hubs = [v for v in range(g.n) if g.degree[v] > 4]
    assert len(hubs) == 2
    for w in hubs:
        non = [u for u in range(g.n) if u != w and u not in g.adj[w]]
        assert all(not (g.adj[u] & set(non)) for u in non)
        assert 1 + len(non) == s + 1 == g.n // s
    assert g.m <= 3 * g.n - 6


def test_planar_gadget_two_fails_hypothesis():
    # floor((s*s+s+2)/s) = s+2 at s = 2, one more than a hub can reach
    g, _ = planar_gadget(2)
    assert g.n == 8
    assert min(1 + sum(1 for u in range(8) if u != w and u not in g.adj[w]) for w in range(8)) == 3 < 8 // 2


def test_planar_gadget_three_infeasible():
    g, _ = planar_gadget(3)
    assert isinstance(exhaustive_equitable(g, 3), Infeasible)


def test_extender_profiles():
    g, cert = extender_chain(1)
    assert g.n == 6 and colour_profiles(g, 4).keys() == {(2, 2, 1, 1)}
    assert cert.claimed_class_profile == (2, 2, 1, 1)
    g, cert = extender_chain(2)
    assert g.n == 18 and colour_profiles(g, 4).keys() == {(6, 6, 3, 3)}
    g, _ = extender_chain(3)
    assert g.n == 30


@pytest.mark.parametrize("d,s,n", [(1, 3, 20), (2, 4, 38)])
def test_degenerate_orders(d, s, n):
    g, cert = degenerate_gadget(d, s)
    assert g.n == cert.claimed_order == n


def test_degenerate_one_three_infeasible():
    g, _ = degenerate_gadget(1, 3)
    assert isinstance(exhaustive_equitable(g, 3), Infeasible)


@pytest.mark.parametrize("i", [1, 2])
def test_constructions_are_deterministic(i):
    assert stalactite_chain(i)[0].edges == stalactite_chain(i)[0].edges
    assert extender_chain(i)[0].edges == extender_chain(i)[0].edges
