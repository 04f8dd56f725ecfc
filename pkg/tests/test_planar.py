from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from equicolor import fixtures
from equicolor.constructions import planar_gadget
from equicolor.errors import Infeasible, TooLarge, WitnessInvalid
from equicolor.graph_core import Graph, coloring_problems
from equicolor.partitioner import forest_parents
from equicolor.planar_coloring import (
    WitnessSets,
    check_witnesses,
    equitable_color_planar_lowdeg,
    equitable_color_planar_run,
    find_witness_sets,
    forest_four_partition,
    lowdeg_applies,
    top_two,
)

from conftest import complete, cycle

seeds = st.integers(0, 2**32 - 1)


def from_nx(h) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph(h.number_of_nodes(), h.edges())


def assert_forest_partition(g, fp, k=4):
    assert len(fp.parts) == k and max(fp.sizes) - min(fp.sizes) <= 1
    assert sum(fp.sizes) == g.n
    assert all(forest_parents(g.adj, p) is not None for p in fp.parts)


def test_four_forests_small():
    fp = forest_four_partition(complete(4))
    assert fp.sizes == (1, 1, 1, 1)
    octa = from_nx(nx.octahedral_graph())
    fp = forest_four_partition(octa, backend="exhaustive")
    assert sorted(fp.sizes, reverse=True) == [2, 2, 1, 1]
    assert_forest_partition(octa, fp)


def test_four_forests_triangulation_of_24():
    g = fixtures.random_planar(24, np.random.default_rng(4), keep=1.0)
    fp = forest_four_partition(g, backend="exhaustive")
    assert_forest_partition(g, fp)


def test_four_forests_rejects_dense_input():
    with pytest.raises(ValueError):
        forest_four_partition(complete(7))


@given(seeds, st.integers(4, 400))
def test_heuristic_partition_is_verified(seed, n):
    g = fixtures.random_planar(n, np.random.default_rng(seed), keep=1.0)
    fp = forest_four_partition(g, backend="heuristic")
    assert_forest_partition(g, fp)


def test_lowdeg_threshold():
    assert lowdeg_applies(5, 25, 10)
    assert not lowdeg_applies(6, 25, 10)


def test_lowdeg_grid():
    g = from_nx(nx.grid_2d_graph(5, 5))
    col = equitable_color_planar_lowdeg(g, 10)
    assert col.s == 40 and coloring_problems(g, col) == []


def test_lowdeg_cycle_more_colours_than_vertices():
    col = equitable_color_planar_lowdeg(cycle(8), 3, check=False)
    assert set(col.sizes) <= {0, 1} and coloring_problems(cycle(8), col) == []


def test_lowdeg_refuses_high_degree():
    with pytest.raises(TooLarge):
        equitable_color_planar_lowdeg(from_nx(nx.star_graph(24)), 10)


def test_gadget_has_no_witnesses():
    g, _ = planar_gadget(40)
    res = find_witness_sets(g, 40)
    assert isinstance(res, Infeasible)


def test_gadget_exact_route_agrees():
    g, _ = planar_gadget(10)
    assert isinstance(find_witness_sets(g, 10, counting=False), Infeasible)


def test_witnesses_small_union():
    g = Graph(6, [(2, 3), (3, 4), (4, 5), (5, 2)])
    wit = find_witness_sets(g, 3)
    check_witnesses(g, 3, wit)
    assert {wit.w0, wit.w1} <= wit.I0 | wit.I1


def test_witnesses_empty_graph():
    g = Graph(40)
    wit = find_witness_sets(g, 40)
    assert len(wit.I0) == len(wit.I1) == 1
    assert set(top_two(g)) == set(wit.I0 | wit.I1)


def test_bad_witnesses_rejected():
    g = Graph(80, [(0, i) for i in range(1, 6)])
    with pytest.raises(WitnessInvalid):
        check_witnesses(g, 40, WitnessSets(frozenset({0, 1}), frozenset({2, 3}), 0, 1, "given"))


def test_driver_needs_forty_colours():
    with pytest.raises(ValueError):
        equitable_color_planar_run(cycle(50), 39)


def test_triangulation_minus_matching():
    rng = np.random.default_rng(8)
    g = fixtures.random_planar(400, rng, keep=1.0)
    matching = nx.maximal_matching(g.to_networkx())
    g = Graph(400, set(g.edges) - {tuple(sorted(e)) for e in matching})
    run = equitable_color_planar_run(g, 40)
    assert coloring_problems(g, run.coloring) == []
    st_ = run.state
    assert st_.violations == []
    assert sum(len(p) for p in st_.peels) <= g.n
    for j, p in enumerate(st_.peels):
        assert len(p) == (g.n + j) // 40


@pytest.mark.parametrize("seed", range(4))
def test_hub_fixtures(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(200, 600))
    degs = tuple(int(rng.integers(n // 8, n // 3)) for _ in range(int(rng.integers(1, 5))))
    g = fixtures.random_planar_hubs(n, rng, degs)
    wit = find_witness_sets(g, 40)
    if isinstance(wit, Infeasible):
        pytest.skip("no witnesses for this fixture")
    run = equitable_color_planar_run(g, 40, wit)
    assert coloring_problems(g, run.coloring) == []
    assert run.state.violations == []
    seen = set()
    for p in run.state.peels:
        assert not seen & p and all(not (g.adj[x] & p) for x in p)
        seen |= p
