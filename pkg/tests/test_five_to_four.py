from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from equicolor import fixtures
from equicolor.errors import HypothesisViolated
from equicolor.graph_core import Coloring, coloring_problems
from equicolor.oracle import enumerate_maximal_outerplanar
from equicolor.outerplanar_coloring import check_hypothesis
from equicolor.five_to_four import equitable_color_five, reduce_5_to_4

from conftest import fan, path

seeds = st.integers(0, 2**32 - 1)


def seeded(seed: int):
    """The fixture family used to find one graph per case."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(15, 25))
    kind = seed % 3
    if kind == 0:
        return fixtures.random_multi_hub_outerplanar(n, rng, hubs=3)
    if kind == 1:
        return fixtures.random_hub_outerplanar(n, rng, (int(rng.integers(n // 3, n - 2)),))
    degs = (int(rng.integers(n // 4, n // 2)), int(rng.integers(n // 4, n // 2)))
    return fixtures.random_hub_outerplanar(n, rng, degs, spread=float(rng.random()))


def check_certificate(g, cert):
    assert len(cert.peel) == g.n // 5 or cert.case == "2-split"
    assert all(not (g.adj[x] & cert.peel) for x in cert.peel)
    assert isinstance(check_hypothesis(cert.residual, 4), type(check_hypothesis(path(4), 4)))


@pytest.mark.parametrize(
    "seed,case", [(1, "1"), (346, "2-both"), (0, "2-drop"), (197, "2-split"), (750, "3-triangle"), (88, "3-path")]
)
def test_each_case(seed, case):
    g = seeded(seed)
    cert = reduce_5_to_4(g)
    assert cert.case == case
    check_certificate(g, cert)
    col = equitable_color_five(g)
    assert isinstance(col, Coloring) and coloring_problems(g, col) == []


def test_single_high_vertex_is_peeled():
    g = seeded(1)
    cert = reduce_5_to_4(g)
    w = max(range(g.n), key=lambda v: (g.degree[v], -v))
    assert w in cert.peel


def test_violation_is_raised():
    with pytest.raises(HypothesisViolated):
        reduce_5_to_4(fan(15))


@pytest.mark.parametrize("n", range(5, 10))
def test_all_small_triangulations(n):
    for g in enumerate_maximal_outerplanar(n):
        try:
            cert = reduce_5_to_4(g)
        except HypothesisViolated:
            continue
        check_certificate(g, cert)
        assert coloring_problems(g, equitable_color_five(g)) == []


@given(seeds, st.integers(10, 24), st.floats(0.5, 1.0))
def test_random_outerplanar(seed, n, keep):
    g = fixtures.random_outerplanar(n, np.random.default_rng(seed), keep=keep)
    try:
        cert = reduce_5_to_4(g)
    except HypothesisViolated:
        return
    check_certificate(g, cert)
