"""Graph representation, outerplane embeddings and the structural helpers shared by every module."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import MissingEmbedding, NotMaximal, NotOuterplanar


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on vertices 0..n-1 with an optional outer cyclic order.

    Instances are treated as immutable; derived tables are built lazily and cached.
    """

    __slots__ = ("n", "edges", "outer_order", "_adj", "_degree", "_pos", "_csr")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), outer_order: Sequence[int] | None = None):
        if n < 0:
            raise ValueError("n must be non-negative")
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            es.add(_norm(u, v))
        self.n = n
        self.edges = frozenset(es)
        self.outer_order = tuple(int(x) for x in outer_order) if outer_order is not None else None
        self._adj = None
        self._degree = None
        self._pos = None
        self._csr = None

    @property
    def adj(self) -> list[set[int]]:
        if self._adj is None:
            adj = [set() for _ in range(self.n)]
            for u, v in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            self._adj = adj
        return self._adj

    @property
    def degree(self) -> tuple[int, ...]:
        if self._degree is None:
            self._degree = tuple(len(a) for a in self.adj)
        return self._degree

    @property
    def m(self) -> int:
        return len(self.edges)

    def max_degree(self) -> int:
        return max(self.degree, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    @property
    def position(self) -> list[int]:
        """Index of each vertex in the outer order."""
        if self.outer_order is None:
            raise MissingEmbedding("graph has no outer order")
        if self._pos is None:
            pos = [-1] * self.n
            for i, v in enumerate(self.outer_order):
                pos[v] = i
            self._pos = pos
        return self._pos

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Compressed adjacency (indptr, indices) with sorted neighbour lists."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            indptr[1:] = np.cumsum(self.degree)
            indices = np.empty(indptr[-1], dtype=np.int64)
            for v in range(self.n):
                indices[indptr[v]:indptr[v + 1]] = sorted(self.adj[v])
            self._csr = (indptr, indices)
        return self._csr

    def with_order(self, outer_order: Sequence[int] | None) -> "Graph":
        return Graph(self.n, self.edges, outer_order)

    def add_edges(self, extra: Iterable[tuple[int, int]], outer_order: Sequence[int] | None = None) -> "Graph":
        return Graph(self.n, set(self.edges) | {_norm(u, v) for u, v in extra}, outer_order)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to 0..k-1, plus the list mapping new ids to old ids."""
        old = sorted(set(vertices))
        new = {v: i for i, v in enumerate(old)}
        es = [(new[u], new[v]) for u, v in self.edges if u in new and v in new]
        order = None
        if self.outer_order is not None:
            order = [new[v] for v in self.outer_order if v in new]
        return Graph(len(old), es, order), old

    def to_networkx(self):
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges)
        return h

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, embedded={self.outer_order is not None})"


@dataclass(frozen=True)
class Coloring:
    """Assignment of colours 1..s to vertices, with the colour classes."""

    s: int
    assignment: tuple[int, ...]
    classes: tuple[frozenset, ...] = field(compare=False)

    @classmethod
    def from_assignment(cls, s: int, assignment: Sequence[int]) -> "Coloring":
        buckets = [set() for _ in range(s)]
        for v, c in enumerate(assignment):
            if not 1 <= c <= s:
                raise ValueError(f"vertex {v} has colour {c} outside 1..{s}")
            buckets[c - 1].add(v)
        return cls(s, tuple(int(c) for c in assignment), tuple(frozenset(b) for b in buckets))

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def coloring_problems(g: Graph, coloring: Coloring, equitable: bool = True) -> list[str]:
    """Everything wrong with a colouring; an empty list means it is proper (and equitable)."""
    out = []
    if len(coloring.assignment) != g.n:
        return [f"assignment covers {len(coloring.assignment)} vertices, graph has {g.n}"]
    a = coloring.assignment
    for u, v in g.edges:
        if a[u] == a[v]:
            out.append(f"edge {u}-{v} is monochromatic (colour {a[u]})")
    if equitable and coloring.s > 0:
        lo, hi = g.n // coloring.s, -(-g.n // coloring.s)
        for j, size in enumerate(coloring.sizes, 1):
            if not lo <= size <= hi:
                out.append(f"class {j} has size {size}, expected {lo}..{hi}")
    return out


def is_equitable_coloring(g: Graph, coloring: Coloring) -> bool:
    return not coloring_problems(g, coloring)


@dataclass(frozen=True)
class ValidationReport:
    is_outerplanar: bool
    is_maximal: bool
    violations: tuple[str, ...] = ()


def _crossing_pairs(g: Graph, limit: int = 10) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    pos = g.position
    iv = sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges)
    found = []
    for i, (a, b) in enumerate(iv):
        for c, d in iv[i + 1:]:
            if c >= b:
                break
            if a < c < b < d:
                o = g.outer_order
                found.append(((o[a], o[b]), (o[c], o[d])))
                if len(found) >= limit:
                    return found
    return found


def has_crossing(g: Graph) -> bool:
    """Stack check that the chord intervals of the outer order form a laminar family."""
    pos = g.position
    iv = sorted(((min(pos[u], pos[v]), -max(pos[u], pos[v])) for u, v in g.edges))
    stack: list[int] = []
    for a, nb in iv:
        b = -nb
        while stack and stack[-1] <= a:
            stack.pop()
        if stack and stack[-1] < b:
            return True
        stack.append(b)
    return False


def validate_embedding(g: Graph) -> ValidationReport:
    violations = []
    if g.outer_order is None:
        return ValidationReport(False, False, ("no outer order given",))
    order = g.outer_order
    seen = set(order)
    if len(order) != g.n or len(seen) != g.n or seen != set(range(g.n)):
        missing = sorted(set(range(g.n)) - seen)
        if missing:
            violations.append(f"vertices missing from outer order: {missing[:10]}")
        if len(order) != len(seen):
            violations.append("outer order repeats a vertex")
        if seen - set(range(g.n)):
            violations.append("outer order names unknown vertices")
        return ValidationReport(False, False, tuple(violations))
    if g.n >= 2 and g.m > 2 * g.n - 3:
        violations.append(f"{g.m} edges exceed the outerplanar bound {2 * g.n - 3}")
    if has_crossing(g):
        for (a, b), (c, d) in _crossing_pairs(g):
            violations.append(f"chords {a}-{b} and {c}-{d} cross")
    ok = not violations
    maximal = ok and g.n >= 3 and g.m == 2 * g.n - 3
    return ValidationReport(ok, maximal, tuple(violations))


def is_maximal_outerplanar(g: Graph) -> bool:
    return g.outer_order is not None and validate_embedding(g).is_maximal


def embed(g: Graph) -> Graph:
    """Return g with a valid outer order, computing one if absent.

    An apex joined to every vertex keeps the graph planar exactly when g is
    outerplanar, and the apex's rotation is then a valid outer order.
    """
    if g.outer_order is not None:
        if validate_embedding(g).is_outerplanar:
            return g
        raise NotOuterplanar("given outer order has crossing chords or is malformed")
    if g.n <= 2:
        return g.with_order(range(g.n))
    if g.m > 2 * g.n - 3:
        raise NotOuterplanar(f"{g.m} edges exceed {2 * g.n - 3}")
    import networkx as nx

    h = g.to_networkx()
    apex = g.n
    h.add_edges_from((apex, v) for v in range(g.n))
    planar, emb = nx.check_planarity(h)
    if not planar:
        raise NotOuterplanar("graph plus an apex is not planar")
    out = g.with_order(list(emb.neighbors_cw_order(apex)))
    if has_crossing(out):
        raise NotOuterplanar("embedding produced crossing chords")
    return out


def neighbors_in_rotation(g: Graph, v: int) -> list[int]:
    """Neighbours of v sorted by clockwise offset along the outer order."""
    if g.outer_order is None:
        raise MissingEmbedding("neighbors_in_rotation needs an outer order")
    pos, n = g.position, g.n
    pv = pos[v]
    return sorted(g.adj[v], key=lambda u: (pos[u] - pv) % n)


def neighborhood_paths(g: Graph, v: int) -> list[list[int]]:
    """Components of G[N(v)], each listed as a path from one end to the other."""
    nb = g.adj[v]
    if g.outer_order is not None:
        seq = neighbors_in_rotation(g, v)
    else:
        seq = sorted(nb)
    inner = {u: [w for w in g.adj[u] if w in nb] for u in seq}
    seen = set()
    paths = []
    for u in seq:
        if u in seen or len(inner[u]) > 1:
            continue
        path = [u]
        seen.add(u)
        prev, cur = None, u
        while True:
            nxt = [w for w in inner[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise NotOuterplanar(f"vertex {cur} has degree > 2 inside N({v})")
            prev, cur = cur, nxt[0]
            if cur in seen:
                raise NotOuterplanar(f"G[N({v})] contains a cycle")
            seen.add(cur)
            path.append(cur)
        paths.append(path)
    if len(seen) != len(nb):
        raise NotOuterplanar(f"G[N({v})] is not a disjoint union of paths")
    return paths


@dataclass(frozen=True)
class DualTree:
    nodes: tuple[tuple[int, int, int], ...]
    links: tuple[tuple[int, int], ...]
    face_of_edge: dict = field(compare=False)

    def adjacency(self) -> list[list[int]]:
        out = [[] for _ in self.nodes]
        for a, b in self.links:
            out[a].append(b)
            out[b].append(a)
        return out


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    adj = g.adj
    out = []
    for u, v in sorted(g.edges):
        for w in adj[u] & adj[v]:
            if w > v:
                out.append((u, v, w))
    out.sort()
    return out


def weak_dual(g: Graph) -> DualTree:
    """Tree of inner triangles of a maximal outerplanar graph, linked across shared edges."""
    if g.n < 3 or g.m != 2 * g.n - 3:
        raise NotMaximal(f"n={g.n}, m={g.m} is not maximal outerplanar")
    if g.outer_order is None:
        g = embed(g)
    elif has_crossing(g):
        raise NotMaximal("outer order has crossing chords")
    faces = triangles(g)
    if len(faces) != g.n - 2:
        raise NotMaximal(f"found {len(faces)} triangles, expected {g.n - 2}")
    face_of_edge: dict[tuple[int, int], list[int]] = {}
    for i, (a, b, c) in enumerate(faces):
        for e in ((a, b), (a, c), (b, c)):
            face_of_edge.setdefault(e, []).append(i)
    links = []
    for e, fs in face_of_edge.items():
        if len(fs) > 2:
            raise NotMaximal(f"edge {e} lies on {len(fs)} triangles")
        if len(fs) == 2:
            links.append(tuple(sorted(fs)))
    links.sort()
    return DualTree(tuple(faces), tuple(links), {e: tuple(fs) for e, fs in face_of_edge.items()})


def color_maximal_outerplanar(g: Graph) -> list[int]:
    """The 3-colouring (colours 1..3) of a maximal outerplanar graph by peeling 2-vertices."""
    n = g.n
    if n <= 3:
        return list(range(1, n + 1))
    adj = g.adj
    deg = list(g.degree)
    removed = [False] * n
    stack = [v for v in range(n) if deg[v] == 2]
    order = []
    while stack and len(order) < n - 2:
        v = stack.pop()
        if removed[v] or deg[v] != 2:
            continue
        removed[v] = True
        order.append(v)
        for u in adj[v]:
            if not removed[u]:
                deg[u] -= 1
                if deg[u] == 2:
                    stack.append(u)
    rest = [v for v in range(n) if not removed[v]]
    if len(rest) != 2:
        raise NotMaximal("peeling 2-vertices did not reach a single edge")
    colour = [0] * n
    colour[rest[0]], colour[rest[1]] = 1, 2
    for v in reversed(order):
        used = {colour[u] for u in adj[v] if colour[u]}
        if len(used) != 2:
            raise NotMaximal(f"vertex {v} did not see exactly two coloured neighbours")
        colour[v] = 6 - sum(used)
    return colour


def three_color_capped(g: Graph) -> Coloring:
    """Proper 3-colouring of an outerplanar graph with every class of size at most floor(n/2)."""
    from .partitioner import saturate_with_degree_control

    n = g.n
    if n == 0:
        return Coloring.from_assignment(3, [])
    if n <= 3:
        return Coloring.from_assignment(3, list(range(1, n + 1)))
    sat = saturate_with_degree_control(g).supergraph
    col = color_maximal_outerplanar(sat)
    result = Coloring.from_assignment(3, col)
    if coloring_problems(g, result, equitable=False) or max(result.sizes) > n // 2:
        raise NotOuterplanar("capped 3-colouring failed its own check")
    return result
