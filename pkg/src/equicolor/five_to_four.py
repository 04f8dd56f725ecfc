"""Experimental: peel one colour class so that an equitable 5-colouring reduces to 4 colours.

The residual's 4-colour hypothesis is certified exactly; the 4-colouring itself
comes from exhaustive search, since the four-colour case is open.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from .errors import HypothesisViolated, InternalAssertionFailed
from .graph_core import Coloring, Graph, coloring_problems
from .oracle import alpha_v_exact, exhaustive_equitable


@dataclass
class FiveToFourCertificate:
    case: str
    peel: frozenset[int]
    residual: Graph
    residual_ids: list[int]
    high_degree: list[int]
    notes: list[str] = field(default_factory=list)


def _ceil(a: int, b: int) -> int:
    return -(-a // b)


def _split_classes(adj, verts) -> tuple[list[int], list[int]]:
    """2-colour the (bipartite) graph induced on verts; returns (bigger, smaller)."""
    vs = set(verts)
    side: dict[int, int] = {}
    for r in sorted(vs):
        if r in side:
            continue
        side[r] = 0
        stack = [r]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in vs and y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
    a = sorted(x for x in vs if side[x] == 0)
    b = sorted(x for x in vs if side[x] == 1)
    if any(side[x] == side[y] for x in vs for y in adj[x] if y in vs):
        raise InternalAssertionFailed("five-to-four", "a neighbourhood is not bipartite")
    return (a, b) if (len(a), b) >= (len(b), a) else (b, a)


def _is_independent(g: Graph, vs) -> bool:
    return all(not (g.adj[x] & vs) for x in vs)


def _greedy_extend(g: Graph, chosen: set[int], k: int, avoid=frozenset()) -> set[int]:
    blocked = set(chosen) | set(avoid)
    for x in chosen:
        blocked |= g.adj[x]
    for u in sorted(range(g.n), key=lambda x: (g.degree[x], x)):
        if len(chosen) >= k:
            break
        if u not in blocked:
            chosen.add(u)
            blocked |= g.adj[u]
            blocked.add(u)
    return chosen


def _through(g: Graph, v: int, k: int, avoid: set[int] = frozenset()) -> set[int] | None:
    """Independent set of size k containing v, avoiding `avoid`; exact fallback."""
    cand = _greedy_extend(g, {v}, k, avoid)
    if len(cand) >= k:
        return cand
    keep = [x for x in range(g.n) if x not in avoid]
    h, ids = g.induced(keep)
    wit = alpha_v_exact(h, ids.index(v)).witness
    if len(wit) < k:
        return None
    rest = sorted((ids[x] for x in wit if ids[x] != v), key=lambda x: (-g.degree[x], x))
    return {v, *rest[: k - 1]}


def _short_path_neighbours(g: Graph, a: int, others) -> set[int]:
    """Neighbours of a lying on a path of length at most 3 to some vertex of `others`."""
    adj = g.adj
    out = set()
    for b in others:
        for x in adj[a]:
            if x == b or b in adj[x] or (adj[x] & adj[b]) - {a}:
                out.add(x)
    return out


def _steiner_order(dist, triple) -> int:
    a, b, c = triple
    best = None
    for m in dist[a]:
        if m in dist[b] and m in dist[c]:
            t = dist[a][m] + dist[b][m] + dist[c][m] + 1
            best = t if best is None else min(best, t)
    return best if best is not None else 10**9


def _case_three(g: Graph, high: list[int], k: int, notes: list[str]) -> tuple[str, set[int]]:
    adj = g.adj
    nxg = g.to_networkx()
    dist = {w: nx.single_source_shortest_path_length(nxg, w) for w in high}
    triple = min(combinations(sorted(high), 3), key=lambda t: (_steiner_order(dist, t), t))
    edges = sum(1 for a, b in combinations(triple, 2) if b in adj[a])
    shape = {3: "3-triangle", 2: "3-path", 1: "3-edge", 0: "3-apart"}[edges]
    ws = list(triple)
    if edges == 2:
        centre = next(w for w in ws if all(o in adj[w] for o in ws if o != w))
        ws = [centre] + [w for w in ws if w != centre]
    elif edges == 1:
        lone = next(w for w in ws if not any(o in adj[w] for o in ws if o != w))
        ws = [lone] + [w for w in ws if w != lone]
    sets = []
    for i, w in enumerate(ws):
        ban = set()
        for j, o in enumerate(ws):
            if j != i:
                ban |= adj[o] | {o}
        sets.append(set(adj[w]) - ban)
    # drop edges between the sets; with a centre, only its partners give way
    for i, j in combinations(range(3), 2):
        for x in sorted(sets[i]):
            hit = adj[x] & sets[j]
            if not hit:
                continue
            if shape == "3-path" and i == 0:
                sets[j] -= hit
            else:
                sets[i].discard(x)
                sets[j] -= hit
    bound = _ceil(g.n, 5)
    for w, s in zip(ws, sets):
        if len(s) < bound - 2:
            notes.append(f"|S| = {len(s)} at {w} is below ceil(n/5) - 2 = {bound - 2}")
    small = [_split_classes(adj, s)[1] for s in sets[1:]]
    peel = {ws[0], *small[0], *small[1]}
    if not _is_independent(g, peel):
        raise InternalAssertionFailed("five-to-four", f"case {shape} set is not independent")
    if len(peel) < k:
        notes.append(f"case {shape} set has {len(peel)} < {k} vertices; extended greedily")
        peel = _greedy_extend(g, peel, k)
    return shape, set(sorted(peel, key=lambda x: (x != ws[0], -g.degree[x], x))[:k])


def reduce_5_to_4(g: Graph) -> FiveToFourCertificate:
    """Peel one independent set so that the rest satisfies the 4-colour hypothesis.

    Raises HypothesisViolated if g fails the 5-colour hypothesis and
    InternalAssertionFailed if the residual fails the 4-colour one.
    """
    from .outerplanar_coloring import check_hypothesis

    n = g.n
    verdict = check_hypothesis(g, 5)
    if isinstance(verdict, HypothesisViolated):
        raise verdict
    k = n // 5
    adj = g.adj
    cut = _ceil(n, 5) + 4
    high = sorted((v for v in range(n) if g.degree[v] >= cut), key=lambda v: (-g.degree[v], v))
    notes: list[str] = []
    if k == 0:
        case, peel = "empty", set()
    elif len(high) <= 1:
        w = max(range(n), key=lambda v: (g.degree[v], -v))
        case, peel = "1", _through(g, w, k)
    elif len(high) == 2:
        w1, w2 = high
        both = None
        if k == 1:
            both = set()
        elif w2 not in adj[w1]:
            both = _through(g, w2, k - 1, avoid=adj[w1] | {w1})
        if both is not None:
            case, peel = "2-both", both | {w1}
        else:
            sets = {w1: _through(g, w1, k), w2: _through(g, w2, k)}
            case, peel = "", None
            for wi, wo in ((w1, w2), (w2, w1)):
                if len(adj[wi]) - len(adj[wi] & sets[wo]) <= cut - 1:
                    case, peel = "2-drop", sets[wo]
                    break
            if peel is None:
                case = "2-split"
                halves = []
                for wi, wo in ((w1, w2), (w2, w1)):
                    s = set(adj[wi]) - sets[wo] - _short_path_neighbours(g, wi, [wo])
                    if len(s) < _ceil(n, 5) + 2:
                        notes.append(f"|S'| = {len(s)} at {wi} is below ceil(n/5) + 2")
                    halves.append(_split_classes(adj, s)[0])
                peel = set(halves[0]) | set(halves[1])
                size = (n + 1) // 5
                if len(peel) < size:
                    notes.append(f"split set has {len(peel)} < {size} vertices; extended greedily")
                    peel = _greedy_extend(g, peel, size)
                peel = set(sorted(peel, key=lambda x: (-g.degree[x], x))[:size])
    else:
        case, peel = _case_three(g, high, k, notes)
    if peel is None or not _is_independent(g, peel):
        raise InternalAssertionFailed("five-to-four", f"case {case} produced no valid peel")
    residual, ids = g.induced(v for v in range(n) if v not in peel)
    res = check_hypothesis(residual, 4)
    if isinstance(res, HypothesisViolated):
        raise InternalAssertionFailed(
            "five-to-four", f"case {case}: residual vertex {ids[res.vertex]} has alpha {res.found} < {res.needed}"
        )
    return FiveToFourCertificate(case, frozenset(peel), residual, ids, high, notes)


def equitable_color_five(g: Graph, max_n: int = 24, budget_ms: float | None = None):
    """Equitable 5-colouring via the peel above plus exhaustive 4-colouring of the rest.

    Returns a Coloring, or the oracle's Infeasible for the residual (which would
    refute the four-colour conjecture for that residual).
    """
    cert = reduce_5_to_4(g)
    sub = exhaustive_equitable(cert.residual, 4, max_n=max_n, budget_ms=budget_ms)
    if not isinstance(sub, Coloring):
        return sub
    colour = [5] * g.n
    for i, old in enumerate(cert.residual_ids):
        colour[old] = sub.assignment[i]
    out = Coloring.from_assignment(5, colour)
    problems = coloring_problems(g, out)
    if problems:
        raise InternalAssertionFailed("five-to-four", "; ".join(problems))
    return out
