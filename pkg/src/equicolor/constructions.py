"""Generators for the extremal families: stalactite chains, join gadgets and extender chains."""
from __future__ import annotations

from dataclasses import dataclass

from .graph_core import Graph


@dataclass(frozen=True)
class ConstructionCertificate:
    family: str
    params: tuple[int, ...]
    claimed_order: int
    claimed_max_degree: int
    claimed_class_profile: tuple[int, ...] | None


def _stalactite(base: int) -> dict:
    """Vertex ids of one stalactite: centre c, path x1..x4, apexes y1..y3."""
    return {"c": base, "x": [base + 1 + k for k in range(4)], "y": [base + 5 + k for k in range(3)]}


def stalactite_chain(i: int) -> tuple[Graph, ConstructionCertificate]:
    """G_i: a left-to-right chain of 2i-1 stalactites joined by connector edges v-w."""
    if i < 1:
        raise ValueError("index must be at least 1")
    k = 2 * i - 1
    parts = [_stalactite(8 * j) for j in range(k)]
    edges = []
    for st in parts:
        c, x, y = st["c"], st["x"], st["y"]
        edges += [(c, xx) for xx in x]
        edges += [(x[j], x[j + 1]) for j in range(3)]
        edges += [(y[j], x[j]) for j in range(3)] + [(y[j], x[j + 1]) for j in range(3)]
    nxt = 8 * k
    connectors = []
    for j in range(k - 1):
        left, right = parts[j], parts[j + 1]
        v, w = nxt, nxt + 1
        nxt += 2
        connectors.append((v, w))
        edges += [(v, w), (v, left["x"][3]), (v, right["x"][0])]
        edges += [(w, left["x"][3]), (w, left["y"][2]), (w, right["x"][0]), (w, right["y"][0])]
    order = []
    for j, st in enumerate(parts):
        order += [st["x"][0], st["c"], st["x"][3]]
        if j < k - 1:
            order.append(connectors[j][0])
    for j in range(k - 1, -1, -1):
        st = parts[j]
        order += [st["y"][2], st["x"][2], st["y"][1], st["x"][1], st["y"][0]]
        if j > 0:
            order.append(connectors[j - 1][1])
    n = nxt
    g = Graph(n, edges, order)
    cert = ConstructionCertificate("stalactite", (i,), 8 + 20 * (i - 1), 5, (n // 2, n // 4, n // 4))
    return g, cert


def planar_gadget(s: int) -> tuple[Graph, ConstructionCertificate]:
    """(K_2 join P_{s^2}) plus s isolated vertices; the two hubs are vertices 0 and 1."""
    if s < 2:
        raise ValueError("s must be at least 2")
    p = s * s
    n = p + s + 2
    path = list(range(2, 2 + p))
    edges = [(0, 1)] + [(h, v) for h in (0, 1) for v in path] + list(zip(path, path[1:]))
    cert = ConstructionCertificate("planar-gadget", (s,), n, p + 1, None)
    return Graph(n, edges), cert


def extender_chain(i: int) -> tuple[Graph, ConstructionCertificate]:
    """Extenders (K_2 join 2K_2) glued root edge to leaf edge, always on the oldest unused leaf edge."""
    if i < 1:
        raise ValueError("index must be at least 1")
    edges: list[tuple[int, int]] = []
    leaves: list[tuple[int, int]] = []
    count = [0]

    def extender(a: int, b: int) -> tuple[tuple[int, int], tuple[int, int]]:
        c, d, e, f = (count[0] + t for t in range(4))
        count[0] += 4
        edges.extend([(c, d), (e, f)] + [(r, x) for r in (a, b) for x in (c, d, e, f)])
        return (c, d), (e, f)

    count[0] = 2
    edges.append((0, 1))
    leaves.extend(extender(0, 1))
    used = 0
    for _ in range(i - 1):
        root = leaves[used]
        used += 1
        l1, l2 = extender(*root)
        leaves.extend(extender(*l1))
        leaves.extend(extender(*l2))
    n = count[0]
    cert = ConstructionCertificate("extender", (i,), 6 + 12 * (i - 1), 5 if i == 1 else 7, (n // 3, n // 3, n // 6, n // 6))
    return Graph(n, edges), cert


def degenerate_gadget(d: int, s: int) -> tuple[Graph, ConstructionCertificate]:
    """K_d joined to s^2+2s independent vertices, plus ds+d^2 isolated vertices."""
    if d < 1 or s < d:
        raise ValueError("need d >= 1 and s >= d")
    joined = s * s + 2 * s
    n = d + joined + d * s + d * d
    edges = [(a, b) for a in range(d) for b in range(a + 1, d)]
    edges += [(a, d + t) for a in range(d) for t in range(joined)]
    cert = ConstructionCertificate("degenerate", (d, s), n, joined + d - 1, None)
    return Graph(n, edges), cert
