"""Seeded random graph generators used by tests, benchmarks and the CLI."""
from __future__ import annotations

import numpy as np

from .graph_core import Graph


def random_maximal_outerplanar(n: int, rng: np.random.Generator, relabel: bool = True) -> Graph:
    """Random triangulation of a convex n-gon, optionally with shuffled labels."""
    if n < 3:
        raise ValueError("need n >= 3")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    stack = [(0, n - 1)]
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        k = int(rng.integers(i + 1, j))
        if k - i >= 2:
            edges.append((i, k))
        if j - k >= 2:
            edges.append((k, j))
        stack.append((i, k))
        stack.append((k, j))
    order = list(range(n))
    if relabel:
        perm = rng.permutation(n)
        edges = [(int(perm[u]), int(perm[v])) for u, v in edges]
        order = [int(perm[v]) for v in order]
    return Graph(n, edges, order)


def random_fan_heavy_outerplanar(n: int, rng: np.random.Generator, hubs: int = 2) -> Graph:
    """Triangulated polygon biased towards a few high-degree vertices."""
    edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
    stack = [(0, n - 1)]
    hub_set = set(int(x) for x in rng.choice(n, size=min(hubs, n), replace=False))
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        inside = [h for h in hub_set if i < h < j]
        if inside and rng.random() < 0.9:
            k = inside[int(rng.integers(len(inside)))]
        else:
            k = int(rng.integers(i + 1, j))
        if k - i >= 2:
            edges.add((i, k))
        if j - k >= 2:
            edges.add((k, j))
        stack.append((i, k))
        stack.append((k, j))
    perm = rng.permutation(n)
    return Graph(n, [(int(perm[u]), int(perm[v])) for u, v in edges], [int(perm[v]) for v in range(n)])


def random_outerplanar(n: int, rng: np.random.Generator, keep: float = 0.7, embedded: bool = True) -> Graph:
    """A random maximal outerplanar graph with each edge kept independently with probability keep."""
    base = random_fan_heavy_outerplanar(n, rng) if rng.random() < 0.3 else random_maximal_outerplanar(n, rng)
    es = [e for e in sorted(base.edges) if rng.random() < keep]
    return Graph(n, es, base.outer_order if embedded else None)


def random_planar(n: int, rng: np.random.Generator, keep: float = 0.85) -> Graph:
    """Delaunay triangulation of random points with a random fraction of edges removed."""
    from scipy.spatial import Delaunay

    pts = rng.random((n, 2))
    tri = Delaunay(pts)
    es = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            es.add((int(min(u, v)), int(max(u, v))))
    return Graph(n, [e for e in sorted(es) if rng.random() < keep])


def random_planar_bounded(n: int, rng: np.random.Generator, max_degree: int) -> Graph:
    """Delaunay triangulation thinned until no vertex exceeds max_degree."""
    g = random_planar(n, rng, keep=1.0)
    adj = [set(a) for a in g.adj]
    for v in rng.permutation(n):
        v = int(v)
        while len(adj[v]) > max_degree:
            u = max(adj[v], key=lambda x: (len(adj[x]), x))
            adj[v].discard(u)
            adj[u].discard(v)
    return Graph(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    return Graph(n, [(i, int(rng.integers(i))) for i in range(1, n)])


def _triangulate(poly: list[int], rng: np.random.Generator, edges: set) -> None:
    """Random triangulation of a convex polygon given by its vertex list."""
    stack = [poly]
    while stack:
        p = stack.pop()
        if len(p) < 4:
            continue
        a, b = p[0], p[-1]
        k = int(rng.integers(1, len(p) - 1))
        for u in (p[k],):
            if k > 1:
                edges.add((min(a, u), max(a, u)))
            if k < len(p) - 2:
                edges.add((min(b, u), max(b, u)))
        stack.append(p[: k + 1])
        stack.append(p[k:])


def _hub_neighbours(lo: int, hi: int, d: int, spread: float, rng: np.random.Generator) -> list[int]:
    """d positions in [lo, hi] including both ends; spread 0 packs them at the low end."""
    inner = list(range(lo + 1, hi))
    want = max(0, min(d - 2, len(inner)))
    if rng.random() < spread:
        pick = sorted(int(x) for x in rng.choice(inner, size=want, replace=False)) if want else []
    else:
        pick = inner[:want]
    return [lo] + pick + [hi]


def random_hub_outerplanar(
    n: int,
    rng: np.random.Generator,
    degrees: tuple[int, ...] = (0,),
    spread: float = 0.5,
    relabel: bool = True,
) -> Graph:
    """Maximal outerplanar graph with one or two hubs of (roughly) prescribed degree.

    Hub 0 sits at polygon position 0; a second hub sits at position n//2 and the
    two are joined by a chord.  spread near 0 keeps each hub's neighbours
    consecutive (small second neighbourhood), near 1 scatters them.
    """
    edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
    if len(degrees) == 1:
        nb = _hub_neighbours(1, n - 1, degrees[0], spread, rng)
        regions = [[0] + nb]
    else:
        m = n // 2
        edges.add((0, m))
        nb1 = _hub_neighbours(1, m, degrees[0] - 1, spread, rng)
        nb2 = _hub_neighbours(m + 1, n - 1, degrees[1] - 2, spread, rng)
        nb2 = nb2 + [0]
        regions = [[0] + nb1, [m] + nb2]
    polys = []
    for reg in regions:
        hub, nbs = reg[0], reg[1:]
        for x in nbs:
            edges.add((min(hub, x), max(hub, x)))
        for a, b in zip(nbs, nbs[1:]):
            if b == 0:
                seg = list(range(a, n)) + [0]
            else:
                seg = list(range(a, b + 1))
            if len(seg) >= 3:
                edges.add((min(seg[0], seg[-1]), max(seg[0], seg[-1])))
                polys.append(seg)
    for p in polys:
        _triangulate(p, rng, edges)
    order = list(range(n))
    if relabel:
        perm = rng.permutation(n)
        edges = {(int(perm[u]), int(perm[v])) for u, v in edges}
        order = [int(perm[v]) for v in order]
    return Graph(n, sorted(edges), order)


def random_multi_hub_outerplanar(
    n: int, rng: np.random.Generator, hubs: int = 3, relabel: bool = True
) -> Graph:
    """Maximal outerplanar graph whose hubs each fan over one arc of the polygon.

    The hubs themselves form an inner polygon that is triangulated at random, so
    each hub has degree about n/hubs plus a few chords.
    """
    hubs = max(1, min(hubs, n // 3))
    cuts = sorted(int(x) for x in rng.choice(np.arange(1, n), size=hubs - 1, replace=False)) if hubs > 1 else []
    pos = [0] + cuts
    edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
    for a, b in zip(pos, pos[1:] + [n]):
        for x in range(a + 2, b + 1):
            edges.add((a, x % n) if a < x % n else (x % n, a))
    if len(pos) >= 3:
        _triangulate(list(pos), rng, edges)
    edges = {e for e in edges if e[0] != e[1]}
    order = list(range(n))
    if relabel:
        perm = rng.permutation(n)
        edges = {tuple(sorted((int(perm[u]), int(perm[v])))) for u, v in edges}
        order = [int(perm[v]) for v in order]
    return Graph(n, sorted(edges), order)


def random_planar_hubs(
    n: int, rng: np.random.Generator, hub_degrees: tuple[int, ...] = (), keep: float = 0.9
) -> Graph:
    """Planar graph with hubs of roughly the given degrees.

    The first hub sits outside a convex ring and sees all of it; the others sit
    at the centres of empty rings inside, so the Delaunay triangulation joins
    each to its whole ring.  Remaining points are uniform in the disc; a random
    fraction 1-keep of non-hub edges is removed.
    """
    from scipy.spatial import Delaunay

    hubs = list(hub_degrees)
    pts: list[tuple[float, float]] = []
    centres: list[int] = []
    outer = hubs[0] if hubs else 0
    ring_ids: list[list[int]] = []
    if outer:
        ang = np.sort(rng.random(outer)) * 2 * np.pi
        ids = []
        for a in ang:
            ids.append(len(pts))
            pts.append((np.cos(a), np.sin(a)))
        ring_ids.append(ids)
    holes = []
    for d in hubs[1:]:
        for _ in range(200):
            r = 0.08 + 0.1 * rng.random()
            c = (rng.random(2) * 2 - 1) * (0.85 - r)
            if np.hypot(*c) < 0.85 - r and all(np.hypot(*(c - c2)) > r + r2 + 0.02 for c2, r2 in holes):
                break
        holes.append((c, r))
        centres.append(len(pts))
        pts.append((float(c[0]), float(c[1])))
        ids = []
        for a in np.sort(rng.random(d)) * 2 * np.pi:
            ids.append(len(pts))
            pts.append((c[0] + r * np.cos(a), c[1] + r * np.sin(a)))
        ring_ids.append(ids)
    while len(pts) < n - (1 if outer else 0):
        p = (rng.random(2) * 2 - 1) * 0.97
        if np.hypot(*p) < 0.97 and all(np.hypot(*(p - c)) > r * 1.15 for c, r in holes):
            pts.append((float(p[0]), float(p[1])))
    arr = np.array(pts) + rng.normal(scale=1e-9, size=(len(pts), 2))
    tri = Delaunay(arr)
    es = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            es.add((int(min(u, v)), int(max(u, v))))
    protect = set(centres)
    out = [e for e in sorted(es) if e[0] in protect or e[1] in protect or rng.random() < keep]
    m = len(pts)
    if outer:
        out += [(i, m) for i in ring_ids[0]]
        m += 1
    perm = rng.permutation(m)
    return Graph(m, [(int(perm[u]), int(perm[v])) for u, v in out])
