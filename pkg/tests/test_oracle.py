from __future__ import annotations

from math import comb

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from equicolor import fixtures
from equicolor.constructions import stalactite_chain
from equicolor.errors import BudgetExceeded, Infeasible
from equicolor.graph_core import coloring_problems, validate_embedding
from equicolor.oracle import (
    alpha_v_exact,
    enumerate_maximal_outerplanar,
    exhaustive_equitable,
    exhaustive_forest_partition,
)
from equicolor.partitioner import forest_parents

from conftest import brute_alpha_through, complete, cycle, path, star

seeds = st.integers(0, 2**32 - 1)


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def test_alpha_examples():
    assert alpha_v_exact(cycle(5), 0).size == 2
    assert alpha_v_exact(star(4), 0).size == 1
    g, _ = stalactite_chain(1)
    for v in range(g.n):
        wit = alpha_v_exact(g, v)
        assert v in wit.witness and len(wit.witness) == wit.size >= 8 // 3


def test_equitable_examples():
    col = exhaustive_equitable(path(6), 3)
    assert col.sizes == (2, 2, 2)
    g, _ = stalactite_chain(1)
    assert isinstance(exhaustive_equitable(g, 3), Infeasible)
    assert isinstance(exhaustive_equitable(cycle(3), 2), Infeasible)


def test_equitable_respects_size_limit():
    with pytest.raises(BudgetExceeded):
        exhaustive_equitable(path(30), 3, max_n=20)


def test_forest_partition_examples():
    fp = exhaustive_forest_partition(cycle(3), 2)
    assert sorted(fp.sizes) == [1, 2]
    fp = exhaustive_forest_partition(complete(4), 2)
    assert fp.sizes == (2, 2)
    ico = nx.convert_node_labels_to_integers(nx.icosahedral_graph())
    from equicolor.graph_core import Graph

    g = Graph(12, ico.edges())
    fp = exhaustive_forest_partition(g, 4)
    assert fp.sizes == (3, 3, 3, 3)
    assert all(forest_parents(g.adj, p) is not None for p in fp.parts)


def test_forest_partition_infeasible():
    # K5 cannot be split into two balanced forests: a part of size 3 is a triangle
    assert isinstance(exhaustive_forest_partition(complete(5), 2), Infeasible)


@pytest.mark.parametrize("n,count", [(4, 2), (5, 5), (6, 14)])
def test_enumeration_small(n, count):
    gs = list(enumerate_maximal_outerplanar(n))
    assert len(gs) == count
    assert all(validate_embedding(g).is_maximal for g in gs)


def test_enumeration_counts_are_catalan():
    for n in range(3, 11):
        assert sum(1 for _ in enumerate_maximal_outerplanar(n)) == catalan(n - 2)


def test_dedup_is_a_subset():
    full = {tuple(sorted(g.edges)) for g in enumerate_maximal_outerplanar(7)}
    dd = [tuple(sorted(g.edges)) for g in enumerate_maximal_outerplanar(7, dedup=True)]
    assert set(dd) <= full and len(dd) < len(full)


@given(seeds, st.integers(2, 12), st.floats(0.3, 1.0))
def test_alpha_matches_subset_enumeration(seed, n, keep):
    rng = np.random.default_rng(seed)
    g = fixtures.random_outerplanar(n, rng, keep=keep) if n >= 3 else path(n)
    for v in range(n):
        assert alpha_v_exact(g, v).size == brute_alpha_through(g, v)


@given(seeds, st.integers(4, 12))
def test_alpha_on_planar_uses_branch_and_bound(seed, n):
    g = fixtures.random_planar(n, np.random.default_rng(seed))
    for v in range(n):
        assert alpha_v_exact(g, v).size == brute_alpha_through(g, v)


@given(seeds, st.integers(3, 12), st.integers(2, 5))
def test_returned_colouring_implies_hypothesis(seed, n, s):
    g = fixtures.random_outerplanar(n, np.random.default_rng(seed))
    res = exhaustive_equitable(g, s)
    if not isinstance(res, Infeasible):
        assert coloring_problems(g, res) == []
        assert all(alpha_v_exact(g, v).size >= n // s for v in range(n))
