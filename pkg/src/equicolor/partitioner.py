"""Degree-controlled saturation, reducible configurations and half-degree forest equipartitions."""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import (
    InternalAssertionFailed,
    NoConfigAvoidingE,
    NotMaximal,
    NotOuterplanar,
    TooSmall,
)
from .graph_core import Graph, embed, has_crossing, weak_dual


def near_threshold(n: int) -> int:
    """Degree at which a vertex counts as bad during saturation: 2*ceil(n/6)+3."""
    return 2 * (-(-n // 6)) + 3


@dataclass(frozen=True)
class ForestPartition:
    parts: tuple[frozenset, ...]
    degree_caps: tuple[int, ...]
    certificate: tuple[dict, ...] = field(compare=False)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def part_of(self, n: int) -> list[int]:
        out = [-1] * n
        for i, p in enumerate(self.parts):
            for v in p:
                out[v] = i
        return out


def forest_parents(adj, part) -> dict | None:
    """Parent pointers of a BFS forest of G[part], or None when G[part] has a cycle."""
    part = set(part)
    parent: dict[int, int] = {}
    edges = sum(1 for v in part for u in adj[v] if u in part) // 2
    for root in sorted(part):
        if root in parent:
            continue
        parent[root] = -1
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u in part and u not in parent:
                    parent[u] = v
                    queue.append(u)
    roots = sum(1 for p in parent.values() if p == -1)
    if edges != len(part) - roots:
        return None
    return parent


def partition_problems(g: Graph, fp: ForestPartition, balanced: bool = True) -> list[str]:
    """Violations of partition, acyclicity, balance and degree caps against g."""
    out = []
    seen = set()
    for p in fp.parts:
        if seen & p:
            out.append("parts overlap")
        seen |= p
    if seen != set(range(g.n)):
        out.append("parts do not cover the vertex set")
    adj = g.adj
    for i, p in enumerate(fp.parts):
        if forest_parents(adj, p) is None:
            out.append(f"part {i} contains a cycle")
        for v in p:
            d = sum(1 for u in adj[v] if u in p)
            if fp.degree_caps and d > fp.degree_caps[v]:
                out.append(f"vertex {v} has degree {d} in part {i}, cap {fp.degree_caps[v]}")
    if balanced and fp.parts:
        sz = fp.sizes
        if max(sz) - min(sz) > 1:
            out.append(f"unbalanced sizes {sz}")
    return out


# ---------------------------------------------------------------- saturation


@dataclass(frozen=True)
class SaturationResult:
    supergraph: Graph
    added_edges: tuple[tuple[int, int], ...]
    exceptional: tuple[tuple[int, int], ...]
    phase_log: tuple[str, ...]
    bad_additions: int = 0


def _rotations(g: Graph) -> list[list[int]]:
    pos, n = g.position, g.n
    return [sorted(g.adj[v], key=lambda u, pv=pos[v]: (pos[u] - pv) % n) for v in range(n)]


def trace_faces(g: Graph) -> tuple[list[list[int]], list[list[int]]]:
    """Faces of an outer-embedded graph, split into (outer walks, inner faces).

    Each component contributes one outer walk; isolated vertices give one-vertex walks.
    """
    rot = _rotations(g)
    index = [{u: i for i, u in enumerate(r)} for r in rot]
    used = set()
    outer, inner = [], []
    starts = {(v, rot[v][0]) for v in range(g.n) if rot[v]}
    for v in range(g.n):
        if not rot[v]:
            outer.append([v])
            continue
        for u in rot[v]:
            if (v, u) in used:
                continue
            face, is_outer = [], False
            a, b = v, u
            while (a, b) not in used:
                used.add((a, b))
                is_outer = is_outer or (a, b) in starts
                face.append(a)
                r = rot[b]
                a, b = b, r[(index[b][a] + 1) % len(r)]
            (outer if is_outer else inner).append(face)
    return outer, inner


class _Walk:
    """Outer boundary walk kept as a doubly linked list of vertex occurrences."""

    def __init__(self, n: int):
        self.vert: list[int] = []
        self.nxt: list[int] = []
        self.prv: list[int] = []
        self.alive: list[bool] = []
        self.count = [0] * n
        self.some = [-1] * n

    def new(self, v: int) -> int:
        i = len(self.vert)
        self.vert.append(v)
        self.nxt.append(i)
        self.prv.append(i)
        self.alive.append(True)
        self.count[v] += 1
        self.some[v] = i
        return i

    def link(self, a: int, b: int) -> None:
        self.nxt[a] = b
        self.prv[b] = a

    def add_cycle(self, seq: Sequence[int]) -> None:
        ids = [self.new(v) for v in seq]
        for a, b in zip(ids, ids[1:] + ids[:1]):
            self.link(a, b)

    def splice(self, alpha: int, beta: int) -> None:
        """Join two walks through a new edge between the vertices at alpha and beta."""
        a_next = self.nxt[alpha]
        b_prev = self.prv[beta]
        single_a = a_next == alpha
        single_b = self.nxt[beta] == beta
        self.link(alpha, beta)
        tail = beta
        if not single_b:
            tail = self.new(self.vert[beta])
            self.link(b_prev, tail)
        if single_a:
            self.link(tail, alpha)
        else:
            ac = self.new(self.vert[alpha])
            self.link(tail, ac)
            self.link(ac, a_next)

    def drop(self, i: int) -> None:
        self.link(self.prv[i], self.nxt[i])
        self.alive[i] = False
        v = self.vert[i]
        self.count[v] -= 1
        if self.some[v] == i:
            self.some[v] = self.nxt[i]

    def sequence(self, start: int) -> list[int]:
        out, i = [], start
        while True:
            out.append(self.vert[i])
            i = self.nxt[i]
            if i == start:
                return out


def saturate_with_degree_control(g: Graph) -> SaturationResult:
    """Add edges until g is maximal outerplanar while keeping bad vertices nearly untouched.

    A vertex is bad once its current degree reaches 2*ceil(n/6)+3.  Connecting and
    2-connecting edges and face chords avoid bad vertices; at most one cut-vertex
    edge and one 4-face chord may touch them.
    """
    n = g.n
    g = embed(g)
    if n < 3:
        added = [(0, 1)] if n == 2 and g.m == 0 else []
        sup = g.add_edges(added, list(range(n)))
        return SaturationResult(sup, tuple(added), (), ("phase1",) if added else ())
    if g.m == 2 * n - 3:
        return SaturationResult(g, (), _exceptional(g.degree, n), ())
    tau = near_threshold(n)
    adj = [set(a) for a in g.adj]
    deg = [len(a) for a in adj]
    added: list[tuple[int, int]] = []
    log: list[str] = []
    bad_additions = 0

    def bad(v: int) -> bool:
        return deg[v] >= tau

    def add(u: int, v: int, phase: str) -> None:
        nonlocal bad_additions
        if bad(u) or bad(v):
            bad_additions += 1
        adj[u].add(v)
        adj[v].add(u)
        deg[u] += 1
        deg[v] += 1
        added.append((min(u, v), max(u, v)))
        if not log or log[-1] != phase:
            log.append(phase)

    outer, inner = trace_faces(g)
    walk = _Walk(n)
    comps = []
    for seq in outer:
        head = len(walk.vert)
        walk.add_cycle(seq)
        comps.append((head, sorted(set(seq))))
    comps.sort(key=lambda c: min(g.position[v] for v in c[1]))

    def pick(vertices, avoid=None):
        cands = [v for v in vertices if v != avoid]
        if not cands:
            cands = list(vertices)
        return min(cands, key=lambda v: (bad(v), deg[v], v))

    # connect components into one walk
    prev_out = None
    for head, verts in comps:
        if prev_out is None:
            prev_out = pick(verts)
            continue
        v_in = pick(verts)
        add(prev_out, v_in, "phase1")
        walk.splice(walk.some[prev_out], walk.some[v_in])
        prev_out = pick(verts, avoid=v_in)

    # 2-connect at cut-vertex occurrences
    heap: list = []

    def candidate(i: int, allow_bad: bool = False):
        if not walk.alive[i] or walk.count[walk.vert[i]] < 2:
            return None
        p, q = walk.vert[walk.prv[i]], walk.vert[walk.nxt[i]]
        if p == q or q in adj[p]:
            return None
        if not allow_bad and (bad(p) or bad(q)):
            return None
        return (bad(p) + bad(q), max(deg[p], deg[q]), min(deg[p], deg[q]), min(p, q), max(p, q))

    def push(i: int) -> None:
        key = candidate(i)
        if key is not None:
            heapq.heappush(heap, (key, i))

    def two_connect() -> None:
        for i in range(len(walk.vert)):
            push(i)
        while heap:
            key, i = heapq.heappop(heap)
            cur = candidate(i)
            if cur is None:
                continue
            if cur != key:
                heapq.heappush(heap, (cur, i))
                continue
            a, b = walk.prv[i], walk.nxt[i]
            add(walk.vert[a], walk.vert[b], "phase1")
            walk.drop(i)
            push(a)
            push(b)

    two_connect()

    # triangulate inner faces by ear cutting, ears with non-bad base vertices only
    stuck = []
    for face in inner:
        rest = _cut_ears(face, adj, deg, bad, add, allow_bad=False)
        if len(rest) > 3:
            stuck.append(rest)

    # phase 2: a cut vertex whose walk neighbours include a bad vertex
    while True:
        best = None
        for i in range(len(walk.vert)):
            key = candidate(i, allow_bad=True)
            if key is not None and (best is None or key < best[0]):
                best = (key, i)
        if best is None:
            break
        i = best[1]
        add(walk.vert[walk.prv[i]], walk.vert[walk.nxt[i]], "phase2")
        walk.drop(i)
        two_connect()

    # phase 3: 4-faces whose two bad vertices are consecutive
    touched: dict[int, int] = {}
    for face in stuck:
        while len(face) > 3:
            face = _cut_one(face, adj, deg, bad, add, touched)

    start = next(i for i in range(len(walk.vert)) if walk.alive[i])
    order = walk.sequence(start)
    if len(order) != n or len(set(order)) != n:
        raise InternalAssertionFailed("saturate", "outer walk is not a Hamiltonian cycle")
    sup = g.add_edges(added, order)
    if sup.m != 2 * n - 3 or has_crossing(sup):
        raise InternalAssertionFailed("saturate", f"result has {sup.m} edges or crossing chords")
    return SaturationResult(sup, tuple(added), _exceptional(sup.degree, n), tuple(log), bad_additions)


def _exceptional(degree: Sequence[int], n: int) -> tuple[tuple[int, int], ...]:
    tau = near_threshold(n)
    hi = sorted((v for v in range(n) if degree[v] >= tau), key=lambda v: (-degree[v], v))
    return tuple((v, degree[v]) for v in hi)


def _cut_ears(face, adj, deg, bad, add, allow_bad):
    """Add chords cutting ears off a face cycle; returns the face left over."""
    k = len(face)
    if k <= 3:
        return face
    nxt = {face[i]: face[(i + 1) % k] for i in range(k)}
    prv = {face[(i + 1) % k]: face[i] for i in range(k)}
    size = k

    def key(c):
        p, q = prv[c], nxt[c]
        if q in adj[p] or (not allow_bad and (bad(p) or bad(q))):
            return None
        return (max(deg[p], deg[q]), min(deg[p], deg[q]), c)

    heap = [(kk, c) for c in face if (kk := key(c)) is not None]
    heapq.heapify(heap)
    alive = set(face)
    while heap and size > 3:
        kk, c = heapq.heappop(heap)
        if c not in alive:
            continue
        cur = key(c)
        if cur is None:
            continue
        if cur != kk:
            heapq.heappush(heap, (cur, c))
            continue
        p, q = prv[c], nxt[c]
        add(p, q, "phase1")
        alive.discard(c)
        nxt[p], prv[q] = q, p
        size -= 1
        for x in (p, q):
            kx = key(x)
            if kx is not None:
                heapq.heappush(heap, (kx, x))
    start = next(iter(alive))
    out, c = [], start
    while True:
        out.append(c)
        c = nxt[c]
        if c == start:
            return out


def _cut_one(face, adj, deg, bad, add, touched):
    """One forced chord in a stuck face, spreading the load over the bad vertices."""
    k = len(face)
    best = None
    for i in range(k):
        p, c, q = face[i - 1], face[i], face[(i + 1) % k]
        if q in adj[p]:
            continue
        bads = [x for x in (p, q) if bad(x)]
        load = max((touched.get(x, 0) for x in bads), default=0)
        key = (len(bads), load, max(deg[p], deg[q]), i)
        if best is None or key < best[0]:
            best = (key, i)
    if best is None:
        raise InternalAssertionFailed("saturate", f"face {face} admits no chord")
    i = best[1]
    p, q = face[i - 1], face[(i + 1) % k]
    for x in (p, q):
        if bad(x):
            touched[x] = touched.get(x, 0) + 1
    add(p, q, "phase3")
    return face[:i] + face[i + 1:] if i else face[1:]


def saturation_problems(g: Graph, res: SaturationResult) -> list[str]:
    """Check the degree guarantees of a saturation against the original graph."""
    n = g.n
    sup = res.supergraph
    out = []
    if n >= 3 and not (sup.m == 2 * n - 3 and sup.outer_order is not None and not has_crossing(sup)):
        out.append("supergraph is not maximal outerplanar")
    if not g.edges <= sup.edges:
        out.append("supergraph lost original edges")
    tau = near_threshold(n)
    d0, d1 = g.degree, sup.degree
    hi = [v for v in range(n) if d1[v] > tau]
    exc = [v for v, _ in res.exceptional]
    if len(exc) > 2:
        out.append(f"{len(exc)} vertices reach degree {tau}")
    for v in hi:
        if v not in exc[:2]:
            out.append(f"vertex {v} has degree {d1[v]} > {tau}")
    tight = []
    for v in exc[:2]:
        cap = max(tau + 1, d0[v] + 1)
        if d1[v] > cap:
            out.append(f"exceptional {v} has degree {d1[v]} > {cap}")
        if d1[v] == cap:
            tight.append(v)
    if len(tight) == 2 and not sup.has_edge(*tight):
        out.append(f"both exceptional vertices tight but {tight[0]}-{tight[1]} is not an edge")
    if res.bad_additions > 2:
        out.append(f"{res.bad_additions} added edges touch bad vertices")
    return out


# --------------------------------------------------------- reducible configs


@dataclass(frozen=True)
class ReducibleConfig:
    """Kind 'A': vertices (x2, x1), x2 a 3-vertex with 2-neighbour x1.
    Kind 'B': vertices (v, x1, x2), v a 4-vertex with 2-neighbours x1, x2.
    Anchors (y1, y2): y1 is adjacent to x1 (and x2 for A), y2 to x2."""

    kind: str
    vertices: tuple[int, ...]
    anchors: tuple[int, int]


def _configs_at_tip(adj, deg, x1: int):
    """Configurations in which the 2-vertex x1 takes part as a 2-neighbour."""
    if deg[x1] != 2:
        return
    p, q = tuple(adj[x1])
    for x2, y1 in ((p, q), (q, p)):
        if deg[x2] == 3:
            rest = [u for u in adj[x2] if u != x1 and u != y1]
            if len(rest) == 1 and y1 in adj[x2]:
                yield ReducibleConfig("A", (x2, x1), (y1, rest[0]))
    for v, y1 in ((p, q), (q, p)):
        if deg[v] == 4 and y1 in adj[v]:
            for x2 in adj[v]:
                if x2 != x1 and x2 != y1 and deg[x2] == 2:
                    y2 = next(u for u in adj[x2] if u != v)
                    if y2 != y1 and y2 in adj[v] and y2 in adj[y1]:
                        yield ReducibleConfig("B", (v, x1, x2), (y1, y2))


def _dual_path_ends(h: Graph) -> list[tuple[int, int]]:
    """(leaf face, next face) pairs at both ends of a longest path in the weak dual."""
    dual = weak_dual(h)
    nbr = dual.adjacency()
    if len(nbr) == 1:
        return [(0, -1)]

    def farthest(src):
        dist = {src: 0}
        par = {src: -1}
        queue = deque([src])
        last = src
        while queue:
            x = queue.popleft()
            last = x
            for y in nbr[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    par[y] = x
                    queue.append(y)
        return last, par

    a, _ = farthest(0)
    b, par = farthest(a)
    path = [b]
    while par[path[-1]] != -1:
        path.append(par[path[-1]])
    return [(path[0], path[1]), (path[-1], path[-2])]


def _configs_from_end(h: Graph, faces, leaf: int) -> list[ReducibleConfig]:
    adj, deg = h.adj, h.degree
    tip = next(x for x in faces[leaf] if deg[x] == 2)
    return list(_configs_at_tip(adj, deg, tip))


def _config_key(cfg: ReducibleConfig):
    return (sorted(cfg.vertices[1:]) if cfg.kind == "B" else [cfg.vertices[1]], cfg.vertices)


def _all_configs(adj, deg, verts: Iterable[int]):
    for x in sorted(verts):
        if deg[x] == 2:
            yield from _configs_at_tip(adj, deg, x)


def find_reducible(h: Graph, e: tuple[int, int] | None = None) -> ReducibleConfig:
    """A 3-vertex with a 2-neighbour, or a 4-vertex with two 2-neighbours, avoiding e's ends."""
    if h.n < 4:
        raise TooSmall(f"need at least 4 vertices, got {h.n}")
    if e is not None and h.n < 5:
        raise TooSmall("avoiding an edge needs at least 5 vertices")
    if h.outer_order is None:
        h = embed(h)
    forbidden = set(e) if e is not None else set()
    faces = weak_dual(h).nodes
    found = [
        cfg
        for leaf, _ in _dual_path_ends(h)
        for cfg in _configs_from_end(h, faces, leaf)
        if not forbidden & set(cfg.vertices)
    ]
    if found:
        return min(found, key=_config_key)
    if e is None:
        raise NoConfigAvoidingE("no configuration at the ends of a longest dual path")
    w1, w2 = e
    adj = h.adj
    closed = {w1, w2} | adj[w1] | adj[w2]
    seen = set()
    for s in sorted(set(range(h.n)) - closed):
        if s in seen:
            continue
        comp, queue = {s}, [s]
        while queue:
            x = queue.pop()
            for y in adj[x]:
                if y not in closed and y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        if len(comp) < 2:
            continue
        att = sorted({y for x in comp for y in adj[x] if y in closed})
        if len(att) != 2 or att[1] not in adj[att[0]]:
            continue
        x1, x2 = att
        hub = next((w for w in (w1, w2) if x1 in adj[w] and x2 in adj[w]), None)
        if hub is None:
            continue
        sub, old = h.induced(comp | {hub, x1, x2})
        new = {v: i for i, v in enumerate(old)}
        try:
            cfg = find_reducible(sub, (new[x1], new[x2]))
        except (NoConfigAvoidingE, NotMaximal, TooSmall):
            continue
        return ReducibleConfig(cfg.kind, tuple(old[v] for v in cfg.vertices), tuple(old[v] for v in cfg.anchors))
    for cfg in _all_configs(adj, h.degree, range(h.n)):
        if not forbidden & set(cfg.vertices):
            return cfg
    raise NoConfigAvoidingE(f"no configuration avoids {e}")


# ------------------------------------------------ half-degree equipartition


def _base_partition(verts: list[int], adj, protected: set[int]) -> list[int] | None:
    """Exhaustive search of the base cases (at most 6 vertices); returns a part index per vertex."""
    k = len(verts)
    vs = set(verts)
    dh = {v: len(adj[v] & vs) for v in verts}
    for bits in product((0, 1), repeat=k):
        s1 = sum(bits)
        if abs(k - 2 * s1) > 1:
            continue
        part = dict(zip(verts, bits))
        ok = True
        for v in verts:
            d = sum(1 for u in adj[v] if u in vs and part[u] == part[v])
            cap = dh[v] // 2
            if v in protected and k >= 4:
                cap = (dh[v] - 1) // 2
            if d > cap:
                ok = False
                break
        if not ok:
            continue
        if all(forest_parents(adj, [v for v in verts if part[v] == i]) is not None for i in (0, 1)):
            return [part[v] for v in verts]
    return None


def forest_equipartition_halfdeg(h: Graph, e: tuple[int, int]) -> ForestPartition:
    """Balanced two-forest partition with d_F(v) <= d_H(v)/2, tighter at the ends of e."""
    n = h.n
    if n < 3 or h.m != 2 * n - 3:
        raise NotMaximal(f"n={n}, m={h.m} is not maximal outerplanar")
    if not h.has_edge(*e):
        raise ValueError(f"{e} is not an edge")
    adj = [set(a) for a in h.adj]
    deg = [len(a) for a in adj]
    protected = set(e)
    alive = set(range(n))
    stack: list[ReducibleConfig] = []

    queue = deque(v for v in range(n) if deg[v] == 2)

    def usable(cfg):
        return not protected & set(cfg.vertices)

    def next_config():
        while queue:
            x = queue.popleft()
            if x not in alive or deg[x] != 2:
                continue
            for cfg in _configs_at_tip(adj, deg, x):
                if usable(cfg):
                    queue.appendleft(x)
                    return cfg
        for cfg in _all_configs(adj, deg, alive):
            if usable(cfg):
                return cfg
        sub, old = _materialise(adj, alive, h)
        new = {v: i for i, v in enumerate(old)}
        cfg = find_reducible(sub, (new[e[0]], new[e[1]]))
        return ReducibleConfig(cfg.kind, tuple(old[v] for v in cfg.vertices), tuple(old[v] for v in cfg.anchors))

    while len(alive) >= 7:
        cfg = next_config()
        for x in cfg.vertices:
            alive.discard(x)
            for u in adj[x]:
                adj[u].discard(x)
                deg[u] -= 1
            adj[x] = set()
            deg[x] = 0
        stack.append(cfg)
        for y in cfg.anchors:
            if deg[y] == 2:
                queue.append(y)
            for u in adj[y]:
                if deg[u] == 2:
                    queue.append(u)

    verts = sorted(alive)
    bits = _base_partition(verts, adj, protected)
    if bits is None:
        raise InternalAssertionFailed("partition-base", f"no base partition for {verts}")
    part = [-1] * n
    size = [0, 0]
    for v, b in zip(verts, bits):
        part[v] = b
        size[b] += 1
    for cfg in reversed(stack):
        readd_config(cfg, part, size)
    caps = [d // 2 for d in h.degree]
    if n >= 4:
        for w in e:
            caps[w] = (h.degree[w] - 1) // 2
    fp = _make_partition(h, part, caps)
    bad = partition_problems(h, fp)
    if bad:
        raise InternalAssertionFailed("partition-halfdeg", "; ".join(bad[:3]))
    return fp


def readd_config(cfg: ReducibleConfig, part: list[int], size: list[int]) -> None:
    """Put a deleted configuration back into a two-part partition, keeping sizes within one."""
    y1, y2 = cfg.anchors
    if cfg.kind == "A":
        x2, x1 = cfg.vertices
        p = part[y2]
        part[x1], part[x2] = p, 1 - p
        size[0] += 1
        size[1] += 1
        return
    v, x1, x2 = cfg.vertices
    small = 0 if size[0] <= size[1] else 1
    big = 1 - small
    if part[y1] == small or part[y2] == small:
        part[x1] = part[x2] = small
        part[v] = big
    else:
        part[v] = part[x2] = small
        part[x1] = big
    size[small] += 2
    size[big] += 1


def _materialise(adj, alive, h: Graph):
    old = sorted(alive)
    new = {v: i for i, v in enumerate(old)}
    es = [(new[u], new[v]) for u in old for v in adj[u] if u < v]
    order = [new[v] for v in h.outer_order if v in new] if h.outer_order else None
    return Graph(len(old), es, order), old


def _make_partition(g: Graph, part: Sequence[int], caps: Sequence[int], k: int = 2) -> ForestPartition:
    parts = tuple(frozenset(v for v in range(g.n) if part[v] == i) for i in range(k))
    cert = tuple(forest_parents(g.adj, p) or {} for p in parts)
    return ForestPartition(parts, tuple(caps), cert)


def partition_caps(g: Graph) -> list[int]:
    base = -(-g.n // 6) + 1
    return [max(base, d // 2) for d in g.degree]


def choose_special_edge(sup: Graph, caps: Sequence[int], exceptional: Sequence[int]) -> tuple[int, int]:
    """Edge whose endpoints need the strengthened bound: w1w2, or any edge at w1."""
    needy = [v for v in range(sup.n) if sup.degree[v] // 2 > caps[v]]
    if len(needy) > 2:
        raise InternalAssertionFailed("partition", f"{len(needy)} vertices exceed their cap")
    if len(needy) == 2:
        a, b = needy
        if not sup.has_edge(a, b):
            raise InternalAssertionFailed("partition", f"vertices {a} and {b} need the edge between them")
        return (a, b)
    exc = list(exceptional)
    if needy:
        w = needy[0]
        other = [x for x in exc if x != w and sup.has_edge(w, x)]
        return (w, other[0] if other else min(sup.adj[w]))
    if len(exc) >= 2 and sup.has_edge(exc[0], exc[1]):
        return (exc[0], exc[1])
    if exc:
        return (exc[0], min(sup.adj[exc[0]]))
    return min(sup.edges)


def partition_lemma(g: Graph, saturation: SaturationResult | None = None) -> ForestPartition:
    """Balanced two-forest partition of an outerplanar graph with caps max(ceil(n/6)+1, d/2)."""
    n = g.n
    caps = partition_caps(g)
    if n < 3:
        part = [i % 2 for i in range(n)]
        return _make_partition(g, part, caps)
    res = saturation or saturate_with_degree_control(g)
    sup = res.supergraph
    e = choose_special_edge(sup, caps, [v for v, _ in res.exceptional])
    fp = forest_equipartition_halfdeg(sup, e)
    out = _make_partition(g, fp.part_of(n), caps)
    bad = partition_problems(g, out)
    if bad:
        raise InternalAssertionFailed("partition", "; ".join(bad[:3]))
    return out
