"""Ground-truth engines: exact alpha_v, exhaustive equitable colouring and forest partitions, enumeration."""
from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, Infeasible, NotOuterplanar, TooLarge
from .graph_core import Coloring, Graph, embed, weak_dual
from .partitioner import ForestPartition, _make_partition, saturate_with_degree_control


@dataclass(frozen=True)
class AlphaWitness:
    vertex: int
    size: int
    witness: frozenset


def default_budget_ms() -> float:
    return float(os.environ.get("EQUICOLOR_BUDGET_MS", "60000"))


# ------------------------------------------------------------------ alpha_v


def alpha_v_exact(g: Graph, v: int, max_bb: int = 24) -> AlphaWitness:
    """Largest independent set through v: tree DP for outerplanar graphs, branch and bound otherwise."""
    try:
        eg = embed(g)
    except NotOuterplanar:
        if g.n > max_bb:
            raise TooLarge(f"non-outerplanar graph with n={g.n} > {max_bb}")
        return _alpha_bb(g, v)
    return _alpha_dp(eg, v)


def _alpha_dp(g: Graph, v: int) -> AlphaWitness:
    n = g.n
    adj = g.adj
    if n < 3:
        w = {v} | {u for u in range(n) if u != v and u not in adj[v]}
        return AlphaWitness(v, len(w), frozenset(w))
    sat = saturate_with_degree_control(g).supergraph
    dual = weak_dual(sat)
    faces = dual.nodes
    nbr = dual.adjacency()
    states = []
    for bag in faces:
        ok = []
        for mask in range(8):
            chosen = [bag[i] for i in range(3) if mask >> i & 1]
            if v in bag and v not in chosen:
                continue
            if any(b in adj[a] for i, a in enumerate(chosen) for b in chosen[i + 1:]):
                continue
            ok.append(frozenset(chosen))
        states.append(ok)
    # iterative post-order from face 0
    parent = [-1] * len(faces)
    order = [0]
    seen = {0}
    for f in order:
        for c in nbr[f]:
            if c not in seen:
                seen.add(c)
                parent[c] = f
                order.append(c)
    best: list[dict] = [dict() for _ in faces]
    choice: list[dict] = [dict() for _ in faces]
    for f in reversed(order):
        kids = [c for c in nbr[f] if parent[c] == f]
        for S in states[f]:
            total = len(S)
            picks = []
            for c in kids:
                shared = set(faces[f]) & set(faces[c])
                want = S & shared
                top, arg = None, None
                for T, val in best[c].items():
                    if T & shared == want:
                        gain = val - len(want)
                        if top is None or gain > top:
                            top, arg = gain, T
                if top is None:
                    total = None
                    break
                total += top
                picks.append((c, arg))
            if total is not None:
                best[f][S] = total
                choice[f][S] = picks
    if not best[0]:
        raise NotOuterplanar("dynamic programme found no feasible state")
    root = max(best[0], key=lambda S: (best[0][S], sorted(S)))
    witness = set()
    stack = [(0, root)]
    while stack:
        f, S = stack.pop()
        witness |= S
        stack.extend(choice[f][S])
    return AlphaWitness(v, best[0][root], frozenset(witness))


def _alpha_bb(g: Graph, v: int) -> AlphaWitness:
    n = g.n
    nb = [0] * n
    for a, b in g.edges:
        nb[a] |= 1 << b
        nb[b] |= 1 << a
    best_set = [0]

    def mis(mask: int, cur: int, size: int):
        if mask == 0:
            if size > bin(best_set[0]).count("1"):
                best_set[0] = cur
            return
        if size + bin(mask).count("1") <= bin(best_set[0]).count("1"):
            return
        # pick the vertex of maximum degree within mask
        m, pick, pick_d = mask, -1, -1
        while m:
            low = m & -m
            x = low.bit_length() - 1
            d = bin(nb[x] & mask).count("1")
            if d <= 1:
                mis(mask & ~(low | nb[x]), cur | low, size + 1)
                return
            if d > pick_d:
                pick, pick_d = x, d
            m ^= low
        bit = 1 << pick
        mis(mask & ~(bit | nb[pick]), cur | bit, size + 1)
        mis(mask & ~bit, cur, size)

    full = (1 << n) - 1
    mis(full & ~((1 << v) | nb[v]), 1 << v, 1)
    w = frozenset(x for x in range(n) if best_set[0] >> x & 1)
    return AlphaWitness(v, len(w), w)


def independent_through(g: Graph, v: int, k: int) -> frozenset | None:
    """An independent set of exactly k vertices containing v, if one exists."""
    w = alpha_v_exact(g, v).witness
    if len(w) < k:
        return None
    rest = sorted(w - {v}, key=lambda x: (-g.degree[x], x))
    return frozenset([v] + rest[: k - 1])


# ------------------------------------------------------- exhaustive colouring


def _run_kernel(step, budget_ms: float | None, max_nodes: int | None):
    budget = default_budget_ms() if budget_ms is None else budget_ms
    t0 = time.perf_counter()
    while True:
        status, nodes = step()
        if status != 2:
            return status, nodes
        if max_nodes is not None and nodes >= max_nodes:
            raise BudgetExceeded(f"search stopped after {nodes} nodes")
        if (time.perf_counter() - t0) * 1000 > budget:
            raise BudgetExceeded(f"search exceeded {budget:.0f} ms after {nodes} nodes")


def exhaustive_equitable(
    g: Graph,
    s: int,
    max_n: int = 20,
    budget_ms: float | None = None,
    max_nodes: int | None = None,
) -> Coloring | Infeasible:
    """Exact search for an equitable s-colouring."""
    if s < 1:
        raise ValueError("s must be positive")
    n = g.n
    if n > max_n:
        raise BudgetExceeded(f"n={n} exceeds the exhaustive limit {max_n}")
    if n == 0:
        return Coloring.from_assignment(s, [])
    q, r = divmod(n, s)
    order = sorted(range(n), key=lambda x: (-g.degree[x], x))
    indptr, indices = _kernels.csr_from_adjacency(g.adj, order)
    colour = np.full(n, -1, dtype=np.int64)
    size = np.zeros(s, dtype=np.int64)
    tried = np.zeros(n, dtype=np.int64)
    state = np.zeros(4, dtype=np.int64)
    chunk = 200_000 if max_nodes is None else max(1, min(200_000, max_nodes))

    def step():
        st = _kernels.equitable_search(indptr, indices, n, s, q, r, colour, size, tried, state, chunk)
        return st, int(state[2])

    status, nodes = _run_kernel(step, budget_ms, max_nodes)
    if status == 0:
        return Infeasible(s, "exhaustive search found no equitable colouring", nodes)
    assignment = [0] * n
    for i, x in enumerate(order):
        assignment[x] = int(colour[i]) + 1
    return Coloring.from_assignment(s, assignment)


def exhaustive_forest_partition(
    g: Graph,
    k: int,
    balanced: bool = True,
    max_n: int = 24,
    budget_ms: float | None = None,
    max_nodes: int | None = None,
) -> ForestPartition | Infeasible:
    """Exact search for a partition into k induced forests, sizes within one if balanced."""
    n = g.n
    if n > max_n:
        raise BudgetExceeded(f"n={n} exceeds the exhaustive limit {max_n}")
    if balanced:
        lo, r = divmod(n, k)
        hi, n_hi = (lo + 1, r) if r else (lo, k)
    else:
        lo, hi, n_hi = 0, n, k
    order = sorted(range(n), key=lambda x: (-g.degree[x], x))
    indptr, indices = _kernels.csr_from_adjacency(g.adj, order)
    part = np.full(n, -1, dtype=np.int64)
    size = np.zeros(k, dtype=np.int64)
    tried = np.zeros(n, dtype=np.int64)
    uf = np.arange(n, dtype=np.int64)
    ufsize = np.ones(n, dtype=np.int64)
    log = np.zeros(max(1, 2 * g.m + 1), dtype=np.int64)
    logtop = np.zeros(n + 1, dtype=np.int64)
    state = np.zeros(4, dtype=np.int64)
    chunk = 200_000 if max_nodes is None else max(1, min(200_000, max_nodes))

    def step():
        st = _kernels.forest_search(
            indptr, indices, n, k, lo, hi, n_hi, part, size, tried, uf, ufsize, log, logtop, state, chunk
        )
        return st, int(state[2])

    if n == 0:
        return _make_partition(g, [], [n] * n, k)
    status, nodes = _run_kernel(step, budget_ms, max_nodes)
    if status == 0:
        return Infeasible(k, "no partition into induced forests", nodes)
    labels = [0] * n
    for i, x in enumerate(order):
        labels[x] = int(part[i])
    return _make_partition(g, labels, [n] * n, k)


# --------------------------------------------------------------- enumeration


def _triangulations(i: int, j: int) -> Iterator[list[tuple[int, int]]]:
    if j - i < 2:
        yield []
        return
    for k in range(i + 1, j):
        for left in _triangulations(i, k):
            for right in _triangulations(k, j):
                chords = left + right
                if k - i >= 2:
                    chords = chords + [(i, k)]
                if j - k >= 2:
                    chords = chords + [(k, j)]
                yield chords


def _canonical(n: int, edges) -> tuple:
    best = None
    for shift in range(n):
        for sign in (1, -1):
            form = tuple(sorted(tuple(sorted(((sign * u + shift) % n, (sign * v + shift) % n))) for u, v in edges))
            if best is None or form < best:
                best = form
    return best


def enumerate_maximal_outerplanar(n: int, dedup: bool = False) -> Iterator[Graph]:
    """All triangulations of the labelled convex n-gon (Catalan(n-2) of them)."""
    if not 3 <= n <= 14:
        raise ValueError("enumeration supports 3 <= n <= 14")
    sides = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    for chords in _triangulations(0, n - 1):
        edges = sides + chords
        if dedup and tuple(sorted(edges)) != _canonical(n, edges):
            continue
        yield Graph(n, edges, range(n))
