"""Equitable colourings of forests under the alpha_v hypothesis."""
from __future__ import annotations

from collections import deque
from itertools import permutations

import numpy as np

from . import telemetry
from .errors import HypothesisViolated, InternalAssertionFailed, NotAForest
from .graph_core import Coloring, Graph, coloring_problems

_FFT_MIN = 64


def forest_components(g: Graph) -> list[list[int]]:
    """Connected components in BFS order from their smallest vertex; raises NotAForest on a cycle."""
    adj = g.adj
    seen = [False] * g.n
    comps = []
    for r in range(g.n):
        if seen[r]:
            continue
        seen[r] = True
        comp = [r]
        for x in comp:
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
        comps.append(comp)
    if g.m != g.n - len(comps):
        raise NotAForest(f"{g.m} edges on {g.n} vertices in {len(comps)} components")
    return comps


def _two_colouring(adj, comp: list[int]) -> tuple[set[int], set[int]]:
    side = {comp[0]: 0}
    for x in comp:
        for y in adj[x]:
            if y not in side:
                side[y] = 1 - side[x]
    a = {x for x in comp if side[x] == 0}
    return a, set(comp) - a


def link_forest(f: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    """Join the trees of f into one tree, each link between vertices of the weakly smaller 2-colour classes.

    A single vertex has an empty smaller class, so it is hung from the larger
    class of the tree built so far instead; linking the smaller classes there
    can turn a star plus an isolated vertex into a bigger star and break the
    hypothesis at its centre.  Trees are merged largest first.
    """
    comps = sorted(forest_components(f), key=lambda c: (-len(c), min(c)))
    if len(comps) <= 1:
        return f, []

    def pick(a: set[int], b: set[int], larger: bool) -> tuple[set[int], set[int], int]:
        ka, kb = (len(a), min(a, default=f.n)), (len(b), min(b, default=f.n))
        first = (ka >= kb) if larger else (ka <= kb)
        cls, rest = (a, b) if first else (b, a)
        return cls, rest, min(cls)

    x_m, y_m = _two_colouring(f.adj, comps[0])
    added = []
    for comp in comps[1:]:
        x_t, y_t = _two_colouring(f.adj, comp)
        lone = len(comp) == 1
        cls_m, other_m, v1 = pick(x_m, y_m, larger=lone)
        cls_t, other_t, v2 = pick(x_t, y_t, larger=lone)
        added.append((min(v1, v2), max(v1, v2)))
        x_m, y_m = cls_m | other_t, other_m | cls_t
    return f.add_edges(added, None), added


# ------------------------------------------------------------- hypothesis


def _forest_mis(adj, alive: set[int]) -> set[int]:
    """Maximum independent set of the forest induced on `alive`, by repeatedly taking leaves."""
    alive = set(alive)
    deg = {x: len(adj[x] & alive) for x in alive}
    queue = deque(sorted(x for x in alive if deg[x] <= 1))
    chosen = set()
    while alive:
        if not queue:
            # only happens if the induced graph has a cycle
            raise NotAForest("leaf elimination stalled")
        x = queue.popleft()
        if x not in alive or deg[x] > 1:
            continue
        chosen.add(x)
        alive.discard(x)
        for y in adj[x] & alive:
            alive.discard(y)
            for z in adj[y] & alive:
                deg[z] -= 1
                if deg[z] <= 1:
                    queue.append(z)
    return chosen


def forest_alpha_through(adj, alive: set[int], v: int) -> set[int]:
    """A maximum independent set of the forest on `alive` that contains v."""
    return {v} | _forest_mis(adj, alive - adj[v] - {v})


def check_forest_hypothesis(f: Graph, s: int, alive: set[int] | None = None) -> None:
    """Raise HypothesisViolated for the first vertex with alpha_v < floor(n/s)."""
    adj = f.adj
    alive = set(range(f.n)) if alive is None else alive
    n = len(alive)
    need = n // s
    for v in sorted(alive):
        d = len(adj[v] & alive)
        if 1 + (n - d) // 2 >= need:  # 1 + ceil((n-d-1)/2)
            continue
        w = forest_alpha_through(adj, alive, v)
        if len(w) < need:
            raise HypothesisViolated(v, need, len(w), tuple(sorted(w)))


# ---------------------------------------------------------------- s = 3 DP


def _conv(p: np.ndarray, u: np.ndarray, lim_a: int, lim_b: int) -> np.ndarray:
    """Boolean 2D sum-set of two count tables, clipped to lim_a x lim_b."""
    shape = (min(p.shape[0] + u.shape[0] - 1, lim_a), min(p.shape[1] + u.shape[1] - 1, lim_b))
    nz_p, nz_u = np.count_nonzero(p), np.count_nonzero(u)
    if min(nz_p, nz_u) > _FFT_MIN:
        from scipy.signal import fftconvolve

        full = fftconvolve(p.astype(np.float64), u.astype(np.float64))
        return full[: shape[0], : shape[1]] > 0.5
    if nz_u > nz_p:
        p, u = u, p
    out = np.zeros(shape, dtype=bool)
    for a, b in np.argwhere(u):
        if a >= shape[0] or b >= shape[1]:
            continue
        h, w = min(p.shape[0], shape[0] - a), min(p.shape[1], shape[1] - b)
        out[a : a + h, b : b + w] |= p[:h, :w]
    return out


def _any_colour(tabs: list[np.ndarray], skip: int) -> np.ndarray:
    keep = [t for c, t in enumerate(tabs) if c != skip]
    sh = (max(t.shape[0] for t in keep), max(t.shape[1] for t in keep))
    out = np.zeros(sh, dtype=bool)
    for t in keep:
        out[: t.shape[0], : t.shape[1]] |= t
    return out


def _three_colour_counts(adj, verts: list[int], targets: list[tuple[int, int]]) -> dict[int, int] | None:
    """Proper 3-colouring of the forest on verts with exactly (a, b) vertices in colours 0 and 1."""
    vs = set(verts)
    lim_a = max(t[0] for t in targets) + 1
    lim_b = max(t[1] for t in targets) + 1
    parent: dict[int, int] = {}
    order: list[int] = []
    roots = []
    for r in sorted(vs):
        if r in parent:
            continue
        parent[r] = -1
        roots.append(r)
        stack = [r]
        while stack:
            x = stack.pop()
            order.append(x)
            for y in adj[x] & vs:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
    kids: dict[int, list[int]] = {x: [] for x in vs}
    for x in order:
        if parent[x] >= 0:
            kids[parent[x]].append(x)
    base = []
    for c in range(3):
        t = np.zeros((2, 2), dtype=bool)
        t[1 if c == 0 else 0, 1 if c == 1 else 0] = True
        base.append(t[:lim_a, :lim_b])
    final: dict[int, list[np.ndarray]] = {}
    prefix: dict[int, list[list[np.ndarray]]] = {}
    for x in reversed(order):
        tabs, pre = [], []
        for c in range(3):
            cur = base[c]
            steps = [cur]
            for y in kids[x]:
                cur = _conv(cur, _any_colour(final[y], c), lim_a, lim_b)
                steps.append(cur)
            tabs.append(cur)
            pre.append(steps)
        final[x], prefix[x] = tabs, pre
    cur = np.ones((1, 1), dtype=bool)
    top = [cur]
    for r in roots:
        cur = _conv(cur, _any_colour(final[r], -1), lim_a, lim_b)
        top.append(cur)
    for a, b in targets:
        if a < cur.shape[0] and b < cur.shape[1] and cur[a, b]:
            break
    else:
        return None

    colour: dict[int, int] = {}
    work: list[tuple[int, int, int]] = []

    def split(children: list[int], steps: list[np.ndarray], skip: int, a: int, b: int) -> tuple[int, int]:
        for i in range(len(children) - 1, -1, -1):
            y = children[i]
            u = _any_colour(final[y], skip)
            prev = steps[i]
            for da, db in np.argwhere(u):
                ra, rb = a - da, b - db
                if 0 <= ra < prev.shape[0] and 0 <= rb < prev.shape[1] and prev[ra, rb]:
                    break
            else:
                raise InternalAssertionFailed("forest-dp", "reconstruction lost its witness")
            for c in range(3):
                t = final[y][c]
                if c != skip and da < t.shape[0] and db < t.shape[1] and t[da, db]:
                    work.append((y, c, int(da), int(db)))
                    break
            a, b = ra, rb
        return a, b

    split(roots, top, -1, a, b)
    while work:
        x, c, a, b = work.pop()
        colour[x] = c
        a, b = split(kids[x], prefix[x][c], c, a, b)
        if (a, b) != ((1, 0) if c == 0 else (0, 1) if c == 1 else (0, 0)):
            raise InternalAssertionFailed("forest-dp", "reconstruction counts do not close")
    return colour


def _bipartite_split(adj, verts: list[int], targets: list[tuple[int, int]]) -> dict[int, int] | None:
    """Fast path: keep a 2-colouring and carve the third class from both sides with no edges across."""
    vs = set(verts)
    side: dict[int, int] = {}
    for r in verts:
        if r in side:
            continue
        side[r] = 0
        stack = [r]
        while stack:
            x = stack.pop()
            for y in adj[x] & vs:
                if y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
    halves = ([x for x in verts if side[x] == 0], [x for x in verts if side[x] == 1])
    for n1, n2 in targets:
        for big, small in ((0, 1), (1, 0)):
            xs, ys = halves[big], halves[small]
            a, b = len(xs) - n1, len(ys) - n2
            if a < 0 or b < 0:
                continue
            third = set(sorted(ys, key=lambda y: (len(adj[y] & vs), y))[:b])
            blocked = set().union(*(adj[y] for y in third)) if third else set()
            free = [x for x in xs if x not in blocked]
            if len(free) < a:
                continue
            third.update(free[:a])
            return {x: 2 if x in third else (0 if side[x] == big else 1) for x in verts}
    return None


def _size_targets(n: int) -> list[tuple[int, int]]:
    q, r = divmod(n, 3)
    sizes = [q + 1] * r + [q] * (3 - r)
    return sorted({(p[0], p[1]) for p in permutations(sizes)}, reverse=True)


# ------------------------------------------------------------------ driver


def equitable_color_forest(f: Graph, s: int, check: bool = True) -> Coloring:
    """Equitable s-colouring of a forest with alpha_v >= floor(n/s) for every vertex."""
    if s < 3:
        raise ValueError("forest colouring needs s >= 3")
    forest_components(f)
    adj = f.adj
    n = f.n
    if check:
        check_forest_hypothesis(f, s)
    alive = set(range(n))
    classes: list[set[int]] = []
    k = s
    while k > 3:
        q = len(alive) // k
        if q:
            v = max(alive, key=lambda x: (len(adj[x] & alive), -x))
            w = forest_alpha_through(adj, alive, v)
            if len(w) < q:
                raise InternalAssertionFailed("forest-peel", f"vertex {v} has alpha {len(w)} < {q}")
            rest = sorted(w - {v}, key=lambda x: (-len(adj[x] & alive), x))
            cls = {v, *rest[: q - 1]}
        else:
            cls = set()
        classes.append(cls)
        alive -= cls
        k -= 1
    verts = sorted(alive)
    targets = _size_targets(len(verts))
    colour = _bipartite_split(adj, verts, targets) if verts else {}
    if colour is None:
        colour = _three_colour_counts(adj, verts, targets)
    if colour is None:
        return _fallback(f, s, "three-colour count table has no equitable entry")
    for c in range(3):
        classes.append({x for x in verts if colour[x] == c})
    classes.sort(key=len, reverse=True)
    assignment = [0] * n
    for j, cls in enumerate(classes, start=1):
        for x in cls:
            assignment[x] = j
    col = Coloring.from_assignment(s, assignment)
    problems = coloring_problems(f, col)
    if problems:
        return _fallback(f, s, "; ".join(problems[:3]))
    return col


def _fallback(f: Graph, s: int, why: str) -> Coloring:
    telemetry.bump("forest_coloring.stall")
    if f.n > 20:
        raise InternalAssertionFailed("forest-coloring", why)
    from .oracle import exhaustive_equitable

    telemetry.bump("forest_coloring.exhaustive_fallback")
    res = exhaustive_equitable(f, s)
    if not res:
        raise InternalAssertionFailed("forest-coloring", why + "; exhaustive search also failed")
    ranked = sorted(range(s), key=lambda j: -len(res.classes[j]))
    relabel = {old + 1: new + 1 for new, old in enumerate(ranked)}
    return Coloring.from_assignment(s, [relabel[c] for c in res.assignment])
