from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from equicolor import fixtures
from equicolor.constructions import stalactite_chain
from equicolor.errors import NotOuterplanar
from equicolor.graph_core import (
    Coloring,
    Graph,
    coloring_problems,
    embed,
    neighborhood_paths,
    neighbors_in_rotation,
    three_color_capped,
    validate_embedding,
    weak_dual,
)

from conftest import complete, cycle, fan, path, polygon, star

seeds = st.integers(0, 2**32 - 1)


def test_triangle_is_maximal():
    rep = validate_embedding(cycle(3))
    assert rep.is_outerplanar and rep.is_maximal


def test_k4_is_not_outerplanar():
    rep = validate_embedding(complete(4).with_order(range(4)))
    assert not rep.is_outerplanar
    with pytest.raises(NotOuterplanar):
        embed(complete(4))


def test_hexagon_with_three_chords_is_maximal(hexagon_fan_chords):
    assert validate_embedding(hexagon_fan_chords).is_maximal


def test_rejects_self_loops_and_bad_ids():
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])


def test_parallel_edges_collapse():
    g = Graph(3, [(0, 1), (1, 0), (0, 1)])
    assert g.m == 1 and g.degree == (1, 1, 0)


def test_rotation_examples(hexagon_fan_chords):
    assert neighbors_in_rotation(fan(5), 0) == [1, 2, 3, 4]
    assert neighbors_in_rotation(cycle(3), 0) == [1, 2]
    rot = neighbors_in_rotation(hexagon_fan_chords, 3)
    assert rot in ([2, 0, 5, 4], [4, 5, 0, 2])


def test_neighbourhood_paths_examples():
    assert sorted(map(tuple, neighborhood_paths(star(4), 0))) == [(1,), (2,), (3,), (4,)]
    assert neighborhood_paths(fan(5), 0) in ([[1, 2, 3, 4]], [[4, 3, 2, 1]])


def test_neighbourhood_paths_stalactite():
    g, _ = stalactite_chain(1)
    # around the middle path vertex the neighbourhood is a single path of five
    v = max(range(g.n), key=lambda x: (len(neighborhood_paths(g, x)[0]), -x))
    paths = neighborhood_paths(g, v)
    assert len(paths) == 1 and len(paths[0]) == 5


def test_weak_dual_examples(hexagon_star_chords):
    assert weak_dual(cycle(3)).links == ()
    assert len(weak_dual(fan(5)).nodes) == 3 and len(weak_dual(fan(5)).links) == 2
    dual = weak_dual(hexagon_star_chords)
    centre = dual.nodes.index((0, 2, 4))
    assert sorted(len(a) for a in dual.adjacency()) == [1, 1, 1, 3]
    assert len(dual.adjacency()[centre]) == 3


def test_three_colour_examples():
    assert three_color_capped(cycle(3)).sizes == (1, 1, 1)
    assert max(three_color_capped(path(4)).sizes) <= 2
    g, _ = stalactite_chain(1)
    assert sorted(three_color_capped(g).sizes, reverse=True) == [4, 2, 2]


def test_coloring_problems_flags_both_failures():
    g = path(3)
    bad = Coloring.from_assignment(2, [1, 1, 1])
    msgs = coloring_problems(g, bad)
    assert any("monochromatic" in m for m in msgs) and any("size" in m for m in msgs)
    assert coloring_problems(g, Coloring.from_assignment(2, [1, 2, 1])) == []


@given(seeds, st.integers(3, 60))
def test_neighbourhoods_are_disjoint_paths(seed, n):
    g = fixtures.random_outerplanar(n, np.random.default_rng(seed))
    for v in range(n):
        paths = neighborhood_paths(g, v)
        flat = [x for p in paths for x in p]
        assert sorted(flat) == sorted(g.adj[v])
        for p in paths:
            assert all(p[i + 1] in g.adj[p[i]] for i in range(len(p) - 1))


@given(seeds, st.integers(3, 80))
def test_weak_dual_is_a_tree_spanning_the_faces(seed, n):
    g = fixtures.random_maximal_outerplanar(n, np.random.default_rng(seed))
    dual = weak_dual(g)
    assert len(dual.nodes) == n - 2 and len(dual.links) == n - 3
    seen, stack = {0}, [0]
    nbr = dual.adjacency()
    while stack:
        for y in nbr[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    assert len(seen) == n - 2
    rebuilt = {tuple(sorted(e)) for a, b, c in dual.nodes for e in ((a, b), (a, c), (b, c))}
    assert rebuilt == set(g.edges)


@given(seeds, st.integers(3, 80))
def test_three_colouring_is_capped(seed, n):
    g = fixtures.random_maximal_outerplanar(n, np.random.default_rng(seed))
    col = three_color_capped(g)
    assert coloring_problems(g, col, equitable=False) == []
    assert len([x for x in col.sizes if x]) <= 3 and max(col.sizes) <= n // 2


@given(seeds, st.integers(3, 40), st.floats(0.2, 1.0))
def test_maximal_iff_edge_count(seed, n, keep):
    g = fixtures.random_outerplanar(n, np.random.default_rng(seed), keep=keep)
    rep = validate_embedding(g)
    assert rep.is_outerplanar
    assert rep.is_maximal == (g.m == 2 * n - 3)


@given(seeds, st.integers(3, 40))
def test_embed_recovers_an_outer_order(seed, n):
    g = fixtures.random_outerplanar(n, np.random.default_rng(seed), embedded=False)
    assert validate_embedding(embed(g)).is_outerplanar
