"""Resumable depth-first search kernels, compiled with numba unless EQUICOLOR_NO_NUMBA=1.

Both kernels keep their whole search state in arrays so a caller can run them in
slices of `node_limit` nodes and check a wall-clock budget in between.
Status codes: 1 found, 0 exhausted, 2 paused.
"""
from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("EQUICOLOR_NO_NUMBA", "") not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if not USE_NUMBA:

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


@njit(cache=True)
def equitable_search(indptr, indices, n, s, q, r, colour, size, tried, state, node_limit):
    """Assign colours 0..s-1 to vertices 0..n-1 in order; class sizes q or q+1, at most r of size q+1.

    state = [depth, used_colours_stack_top, nodes, big]; `tried[i]` is the next colour to try at depth i.
    Colours are introduced in order (symmetry breaking): vertex i may use at most max-used + 1.
    """
    depth = state[0]
    nodes = 0
    big = state[3]
    while True:
        if depth == n:
            state[0] = depth
            state[2] += nodes
            state[3] = big
            return 1
        if depth < 0:
            state[0] = depth
            state[2] += nodes
            return 0
        if nodes >= node_limit:
            state[0] = depth
            state[2] += nodes
            state[3] = big
            return 2
        # undo the colour currently held at this depth
        c = colour[depth]
        if c >= 0:
            if size[c] == q + 1:
                big -= 1
            size[c] -= 1
            colour[depth] = -1
        limit = 0
        for j in range(depth):
            if colour[j] + 1 > limit:
                limit = colour[j] + 1
        if limit > s - 1:
            limit = s - 1
        placed = False
        c = tried[depth]
        while c <= limit:
            ok = True
            if size[c] == q + 1 or (size[c] == q and big >= r):
                ok = False
            if ok:
                for k in range(indptr[depth], indptr[depth + 1]):
                    u = indices[k]
                    if u < depth and colour[u] == c:
                        ok = False
                        break
            if ok:
                # remaining vertices must fill every class up to q
                rem = n - depth - 1
                deficit = 0
                for cc in range(s):
                    sz = size[cc] + (1 if cc == c else 0)
                    if sz < q:
                        deficit += q - sz
                if deficit > rem:
                    ok = False
            if ok:
                colour[depth] = c
                if size[c] == q:
                    big += 1
                size[c] += 1
                tried[depth] = c + 1
                placed = True
                break
            c += 1
        nodes += 1
        if placed:
            depth += 1
            if depth < n:
                tried[depth] = 0
                colour[depth] = -1
        else:
            tried[depth] = 0
            depth -= 1


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        x = parent[x]
    return x


@njit(cache=True)
def forest_search(indptr, indices, n, k, cap_lo, cap_hi, n_hi, part, size, tried, uf, ufsize, log, logtop, state, node_limit):
    """Assign vertices 0..n-1 to k parts so that each part induces a forest.

    Part sizes must lie in [cap_lo, cap_hi] with at most n_hi parts at cap_hi
    (pass n_hi = k for no restriction).  Acyclicity uses a union-find without
    path compression so every union can be rolled back from `log`.
    state = [depth, unused, nodes, hi_count].
    """
    depth = state[0]
    nodes = 0
    hi = state[3]
    while True:
        if depth == n:
            state[0] = depth
            state[2] += nodes
            state[3] = hi
            return 1
        if depth < 0:
            state[0] = depth
            state[2] += nodes
            return 0
        if nodes >= node_limit:
            state[0] = depth
            state[2] += nodes
            state[3] = hi
            return 2
        p = part[depth]
        if p >= 0:
            # roll back unions made when this vertex joined its part
            while logtop[depth + 1] > logtop[depth]:
                logtop[depth + 1] -= 1
                child = log[logtop[depth + 1]]
                root = uf[child]
                ufsize[root] -= ufsize[child]
                uf[child] = child
            if size[p] == cap_hi:
                hi -= 1
            size[p] -= 1
            part[depth] = -1
        limit = 0
        for j in range(depth):
            if part[j] + 1 > limit:
                limit = part[j] + 1
        if limit > k - 1:
            limit = k - 1
        placed = False
        p = tried[depth]
        while p <= limit:
            ok = size[p] < cap_hi and not (size[p] == cap_hi - 1 and hi >= n_hi)
            if ok:
                rem = n - depth - 1
                deficit = 0
                for pp in range(k):
                    sz = size[pp] + (1 if pp == p else 0)
                    if sz < cap_lo:
                        deficit += cap_lo - sz
                if deficit > rem:
                    ok = False
            top = logtop[depth]
            if ok:
                for e in range(indptr[depth], indptr[depth + 1]):
                    u = indices[e]
                    if u < depth and part[u] == p:
                        a = _find(uf, depth)
                        b = _find(uf, u)
                        if a == b:
                            ok = False
                            break
                        if ufsize[a] < ufsize[b]:
                            a, b = b, a
                        uf[b] = a
                        ufsize[a] += ufsize[b]
                        log[top] = b
                        top += 1
                if not ok:
                    while top > logtop[depth]:
                        top -= 1
                        child = log[top]
                        root = uf[child]
                        ufsize[root] -= ufsize[child]
                        uf[child] = child
            if ok:
                logtop[depth + 1] = top
                part[depth] = p
                if size[p] == cap_hi - 1:
                    hi += 1
                size[p] += 1
                tried[depth] = p + 1
                placed = True
                break
            p += 1
        nodes += 1
        if placed:
            depth += 1
            if depth < n:
                tried[depth] = 0
                part[depth] = -1
        else:
            tried[depth] = 0
            depth -= 1


def csr_from_adjacency(adj, order) -> tuple[np.ndarray, np.ndarray]:
    """CSR arrays for the graph relabelled so that order[i] becomes vertex i."""
    rank = {v: i for i, v in enumerate(order)}
    indptr = np.zeros(len(order) + 1, dtype=np.int64)
    rows = []
    for i, v in enumerate(order):
        row = sorted(rank[u] for u in adj[v])
        rows.append(row)
        indptr[i + 1] = indptr[i] + len(row)
    indices = np.array([u for row in rows for u in row], dtype=np.int64)
    return indptr, indices
