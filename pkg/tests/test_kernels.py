from __future__ import annotations

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from equicolor import _kernels, fixtures
from equicolor.constructions import stalactite_chain
from equicolor.errors import BudgetExceeded
from equicolor.oracle import exhaustive_equitable, exhaustive_forest_partition

PROBE = r"""
import json, sys
import numpy as np
from equicolor import _kernels, fixtures
from equicolor.oracle import exhaustive_equitable, exhaustive_forest_partition
out = {"numba": _kernels.USE_NUMBA, "eq": [], "fp": []}
rng = np.random.default_rng(7)
for _ in range(15):
    n = int(rng.integers(6, 13))
    g = fixtures.random_outerplanar(n, rng)
    r = exhaustive_equitable(g, 3)
    out["eq"].append(list(r.assignment) if r else None)
    h = fixtures.random_planar(n, rng, keep=1.0)
    f = exhaustive_forest_partition(h, 2)
    out["fp"].append(f.part_of(n) if f else None)
print(json.dumps(out))
"""


def run_probe(no_numba: bool) -> dict:
    env = dict(os.environ)
    env["EQUICOLOR_NO_NUMBA"] = "1" if no_numba else "0"
    res = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def test_backends_agree():
    fast, slow = run_probe(False), run_probe(True)
    assert not slow["numba"]
    assert fast["eq"] == slow["eq"] and fast["fp"] == slow["fp"]


def test_csr_matches_adjacency():
    g = fixtures.random_maximal_outerplanar(20, np.random.default_rng(1))
    order = list(range(g.n))[::-1]
    indptr, indices = _kernels.csr_from_adjacency(g.adj, order)
    pos = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        assert sorted(indices[indptr[i]: indptr[i + 1]]) == sorted(pos[u] for u in g.adj[v])


def test_node_limit_reports_budget():
    g, _ = stalactite_chain(2)
    with pytest.raises(BudgetExceeded):
        exhaustive_equitable(g, 3, max_n=30, max_nodes=10)
