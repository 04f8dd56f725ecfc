"""Equitable s-colourings (s >= 40) of planar graphs from two witness independent sets.

Independent sets through a current maximum-degree vertex are peeled one colour
at a time; whenever the remaining colour count is a multiple of four and the
maximum degree is small enough, the rest is split into four balanced induced
forests and each forest is coloured equitably.
"""
from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import coo_matrix

from . import telemetry
from .errors import BudgetExceeded, Infeasible, InternalAssertionFailed, TooLarge, Unsolved, WitnessInvalid
from .forest_coloring import equitable_color_forest
from .graph_core import Coloring, Graph, coloring_problems
from .oracle import default_budget_ms, exhaustive_forest_partition
from .partitioner import ForestPartition, _make_partition, forest_parents

EXHAUSTIVE_LIMIT = 24


# ------------------------------------------------------------ forest partitions


def _degeneracy_order(g: Graph) -> list[int]:
    """Vertices so that each has few earlier neighbours (reverse smallest-last order)."""
    deg = list(g.degree)
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    gone = [False] * g.n
    out = []
    while heap:
        d, v = heapq.heappop(heap)
        if gone[v] or d != deg[v]:
            continue
        gone[v] = True
        out.append(v)
        for u in g.adj[v]:
            if not gone[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return out[::-1]


def _labels(adj, members: set[int]) -> dict[int, int]:
    lab: dict[int, int] = {}
    for r in members:
        if r in lab:
            continue
        lab[r] = r
        stack = [r]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in members and y not in lab:
                    lab[y] = r
                    stack.append(y)
    return lab


def _fits(adj, v: int, lab: dict[int, int]) -> bool:
    """v can join the forest labelled by lab without closing a cycle."""
    seen = set()
    for u in adj[v]:
        if u in lab:
            if lab[u] in seen:
                return False
            seen.add(lab[u])
    return True


def _heuristic_forests(g: Graph, k: int) -> ForestPartition:
    n, adj = g.n, g.adj
    rounds = 4 * n + 10
    hi = -(-n // k)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    part = [-1] * n
    size = [0] * k
    for v in _degeneracy_order(g):
        best = None
        for p in sorted(range(k), key=lambda p: (size[p], p)):
            roots = [find(u) for u in adj[v] if part[u] == p]
            if len(roots) == len(set(roots)):
                if size[p] < hi:
                    best = p
                    break
                if best is None:
                    best = p
        if best is None:
            raise Unsolved(f"vertex {v} closes a cycle in every part")
        part[v] = best
        size[best] += 1
        for u in adj[v]:
            if part[u] == best:
                parent[find(u)] = find(v)
    members = [set(v for v in range(n) if part[v] == p) for p in range(k)]
    for _ in range(rounds):
        big = max(range(k), key=lambda p: (len(members[p]), -p))
        small = min(range(k), key=lambda p: (len(members[p]), p))
        if len(members[big]) - len(members[small]) <= 1:
            break
        moved = False
        # each move lowers the sum of squared part sizes, so this terminates
        for dst in [small] + [p for p in range(k) if p not in (big, small)]:
            if len(members[dst]) + 1 > len(members[big]) - 1 and dst != small:
                continue
            lab = _labels(adj, members[dst])
            for v in sorted(members[big], key=lambda x: (g.degree[x], x)):
                if _fits(adj, v, lab):
                    members[big].discard(v)
                    members[dst].add(v)
                    moved = True
                    break
            if moved:
                break
        if not moved:
            raise Unsolved(f"could not rebalance part sizes {[len(m) for m in members]}")
    else:
        raise Unsolved("rebalancing did not converge")
    labels = [0] * n
    for p, ms in enumerate(members):
        for v in ms:
            labels[v] = p
    return _make_partition(g, labels, [n] * n, k)


def forest_four_partition(
    g: Graph, backend: str = "auto", budget_ms: float | None = None
) -> ForestPartition:
    """Balanced partition into four induced forests; always verified before return.

    backend: "exhaustive" (complete, n <= 24), "heuristic" (greedy acyclic
    assignment plus rebalancing moves; may raise Unsolved) or "auto".
    """
    n = g.n
    if n >= 3 and g.m > 3 * n - 6:
        raise ValueError(f"{g.m} edges exceeds 3n-6 = {3 * n - 6}; not planar")
    if backend == "auto":
        backend = "exhaustive" if n <= EXHAUSTIVE_LIMIT else "heuristic"
    if backend == "exhaustive":
        out = exhaustive_forest_partition(g, 4, max_n=EXHAUSTIVE_LIMIT, budget_ms=budget_ms)
        if isinstance(out, Infeasible):
            raise Unsolved("exhaustive search found no balanced 4-forest partition")
    elif backend == "heuristic":
        out = _heuristic_forests(g, 4)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    sizes = out.sizes
    if max(sizes) - min(sizes) > 1 or sum(sizes) != n:
        raise Unsolved(f"unbalanced parts {sizes}")
    for p in out.parts:
        if forest_parents(g.adj, p) is None:
            raise Unsolved("a part contains a cycle")
    return out


def lowdeg_applies(max_degree: int, n: int, s: int) -> bool:
    """Degree condition for an equitable 4s-colouring via four forests: 4s*Delta <= (s-2)*n."""
    return s >= 3 and 4 * s * max_degree <= (s - 2) * n


def equitable_color_planar_lowdeg(g: Graph, s: int, backend: str = "auto", check: bool = True) -> Coloring:
    """Equitable 4s-colouring: four balanced forests, s colours each, disjoint palettes."""
    if s < 3:
        raise ValueError("need s >= 3")
    delta = max(g.degree, default=0)
    if check and not lowdeg_applies(delta, g.n, s):
        raise TooLarge(f"max degree {delta} exceeds (s-2)/(4s) * n for n={g.n}, s={s}")
    parts = forest_four_partition(g, backend)
    colour = [0] * g.n
    for i, p in enumerate(parts.parts):
        h, ids = g.induced(p)
        sub = equitable_color_forest(h, s)
        for x, c in enumerate(sub.assignment):
            colour[ids[x]] = s * i + c
    out = Coloring.from_assignment(4 * s, colour)
    problems = coloring_problems(g, out)
    if problems:
        raise InternalAssertionFailed("planar-lowdeg", "; ".join(problems[:3]))
    return out


# ------------------------------------------------------------ witness sets


@dataclass(frozen=True)
class WitnessSets:
    I0: frozenset
    I1: frozenset
    w0: int
    w1: int
    method: str


def top_two(g: Graph) -> list[int]:
    """The two largest-degree vertices, ties broken by vertex index."""
    return sorted(range(g.n), key=lambda v: (-g.degree[v], v))[:2]


def _greedy_fill(g: Graph, chosen: set[int], k: int, forbid: set[int]) -> set[int] | None:
    if len(chosen) > k:
        return None
    blocked = set(forbid) | set(chosen)
    for x in chosen:
        if g.adj[x] & chosen:
            return None
        blocked |= g.adj[x]
    out = set(chosen)
    for u in sorted(range(g.n), key=lambda x: (g.degree[x], x)):
        if len(out) >= k:
            break
        if u not in blocked:
            out.add(u)
            blocked |= g.adj[u]
            blocked.add(u)
    return out if len(out) == k else None


def _patterns(g: Graph, ws: list[int]):
    """Ways to place the top vertices into (I0, I1)."""
    if len(ws) == 1:
        return [({ws[0]}, set()), (set(), {ws[0]})]
    a, b = ws
    out = [({a}, {b}), ({b}, {a})]
    if not g.has_edge(a, b):
        out += [({a, b}, set()), (set(), {a, b})]
    return out


def _counting_feasible(g: Graph, k0: int, k1: int, f0: set[int], f1: set[int]) -> bool:
    """Necessary condition: enough candidates outside the fixed vertices' neighbourhoods."""
    n = g.n
    fixed = f0 | f1
    c0 = set(range(n)) - fixed
    c1 = set(c0)
    for x in f0:
        c0 -= g.adj[x]
    for x in f1:
        c1 -= g.adj[x]
    need0, need1 = k0 - len(f0), k1 - len(f1)
    if need0 < 0 or need1 < 0:
        return False
    return len(c0) >= need0 and len(c1) >= need1 and len(c0 | c1) >= need0 + need1


def check_witnesses(g: Graph, s: int, wit: WitnessSets) -> None:
    n = g.n
    i0, i1 = set(wit.I0), set(wit.I1)
    problems = []
    if len(i0) != n // s or len(i1) != (n + 1) // s:
        problems.append(f"sizes {len(i0)}, {len(i1)} should be {n // s}, {(n + 1) // s}")
    if i0 & i1:
        problems.append("sets overlap")
    for name, st in (("I0", i0), ("I1", i1)):
        if any(g.adj[x] & st for x in st):
            problems.append(f"{name} is not independent")
    for w in top_two(g):
        if w not in i0 | i1:
            problems.append(f"top-degree vertex {w} is in neither set")
    if problems:
        raise WitnessInvalid("; ".join(problems))


def find_witness_sets(
    g: Graph, s: int, budget_ms: float | None = None, counting: bool = True
) -> WitnessSets | Infeasible:
    """Disjoint independent I0, I1 of sizes floor(n/s), floor((n+1)/s) covering the two top vertices.

    counting=False skips the candidate-count shortcut so that every placement
    goes through the greedy and exact searches.
    """
    n = g.n
    if n == 0:
        return Infeasible(s, "empty graph has no top-degree vertices")
    budget = default_budget_ms() if budget_ms is None else budget_ms
    k0, k1 = n // s, (n + 1) // s
    ws = top_two(g)
    w0, w1 = (ws + ws)[:2]
    pats = [(f0, f1) for f0, f1 in _patterns(g, ws) if not counting or _counting_feasible(g, k0, k1, f0, f1)]
    if not pats:
        return Infeasible(s, "not enough vertices outside the top vertices' neighbourhoods")
    for f0, f1 in pats:
        a = _greedy_fill(g, f0, k0, f1)
        b = _greedy_fill(g, f1, k1, a) if a is not None else None
        if b is not None:
            return WitnessSets(frozenset(a), frozenset(b), w0, w1, "greedy")
    t0 = time.perf_counter()
    for f0, f1 in pats:
        left = budget - (time.perf_counter() - t0) * 1000
        if left <= 0:
            raise BudgetExceeded("witness search ran out of time")
        pins = [(0, v) for v in f0] + [(1, v) for v in f1]
        sets = _milp_pinned(g, [k0, k1], pins, left)
        if sets is not None:
            return WitnessSets(frozenset(sets[0]), frozenset(sets[1]), w0, w1, "exact")
    return Infeasible(s, "exact search: no placement of the top vertices admits both sets")


def _milp_pinned(g: Graph, sizes: list[int], pins: list[tuple[int, int]], budget_ms: float):
    """Disjoint independent sets of the given sizes with (set, vertex) pins, by 0/1 programming.

    None when none exist; BudgetExceeded when the solver stops undecided.
    """
    n, k = g.n, len(sizes)
    nv = k * n
    lb = np.zeros(nv)
    ub = np.ones(nv)
    for t, v in pins:
        lb[t * n + v] = 1
    rows, cols, vals, lo, hi = [], [], [], [], []
    r = 0
    for t in range(k):
        base = t * n
        for u, v in g.edges:
            rows += [r, r]
            cols += [base + u, base + v]
            vals += [1, 1]
            lo.append(-np.inf)
            hi.append(1)
            r += 1
        rows += [r] * n
        cols += list(range(base, base + n))
        vals += [1] * n
        lo.append(sizes[t])
        hi.append(sizes[t])
        r += 1
    if k > 1:
        for v in range(n):
            rows += [r] * k
            cols += [t * n + v for t in range(k)]
            vals += [1] * k
            lo.append(-np.inf)
            hi.append(1)
            r += 1
    a = coo_matrix((vals, (rows, cols)), shape=(r, nv)).tocsr()
    res = milp(
        c=np.zeros(nv),
        constraints=LinearConstraint(a, lo, hi),
        integrality=np.ones(nv),
        bounds=Bounds(lb, ub),
        options={"time_limit": max(budget_ms / 1000.0, 0.01)},
    )
    if res.status == 2:
        return None
    if res.x is None:
        raise BudgetExceeded(f"exact set search stopped: {res.message}")
    x = np.round(res.x).astype(int)
    return [set(int(v) for v in np.flatnonzero(x[t * n : (t + 1) * n])) for t in range(k)]


# ------------------------------------------------------------ main loop


@dataclass
class PlanarLoopState:
    s: int
    n: int
    j: int = 0
    sizes: list[int] = field(default_factory=list)
    peels: list[frozenset] = field(default_factory=list)
    peeled_through: list[int] = field(default_factory=list)
    max_degrees: list[int] = field(default_factory=list)
    finish: str = ""
    finished_at: int = -1
    dichotomy: dict[int, bool] = field(default_factory=dict)
    lowdeg_failures: list[int] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def tail_start(self) -> int:
        """Index of the first graph in the final forty-colour window."""
        return self.s - 40


@dataclass
class PlanarRun:
    coloring: Coloring
    state: PlanarLoopState
    witnesses: WitnessSets | None


def _peel_through(g: Graph, alive: set[int], v: int, k: int, budget_ms: float) -> set[int]:
    adj = g.adj
    out = {v}
    blocked = {v} | adj[v]
    for u in sorted(alive, key=lambda x: (len(adj[x] & alive), x)):
        if len(out) >= k:
            break
        if u not in blocked:
            out.add(u)
            blocked |= adj[u]
            blocked.add(u)
    if len(out) >= k:
        return out
    telemetry.bump("planar.peel_exact")
    h, ids = g.induced(alive)
    found = _milp_pinned(h, [k], [(0, ids.index(v))], budget_ms)
    if found is None:
        raise InternalAssertionFailed("planar-peel", f"no independent set of size {k} through {v}")
    return {ids[x] for x in found[0]}


def equitable_color_planar_run(
    g: Graph,
    s: int,
    witnesses: WitnessSets | None = None,
    backend: str = "auto",
    budget_ms: float | None = None,
) -> PlanarRun:
    """Peel-and-split driver; every output is verified against g."""
    if s < 40:
        raise ValueError("the planar driver needs s >= 40")
    n = g.n
    if n >= 3 and g.m > 3 * n - 6:
        raise ValueError(f"{g.m} edges exceeds 3n-6; not planar")
    budget = default_budget_ms() if budget_ms is None else budget_ms
    if witnesses is None and n:
        found = find_witness_sets(g, s, budget)
        if isinstance(found, Infeasible):
            raise WitnessInvalid(f"no witness sets: {found.reason}")
        witnesses = found
    if witnesses is not None:
        check_witnesses(g, s, witnesses)
    st = PlanarLoopState(s, n)
    adj = g.adj
    alive = set(range(n))
    colour = [0] * n

    def degree(x: int) -> int:
        return len(adj[x] & alive)

    j = 0
    while j < s and alive:
        n_j = len(alive)
        w = max(alive, key=lambda x: (degree(x), -x))
        delta = degree(w)
        st.j = j
        st.sizes.append(n_j)
        st.max_degrees.append(delta)
        if 4 <= j <= s - 12 and 3 * delta > 2 * n_j:
            st.violations.append(f"j={j}: max degree {delta} > 2/3 of {n_j}")
        rest = s - j
        if rest % 4 == 0 and lowdeg_applies(delta, n_j, rest // 4):
            h, ids = g.induced(alive)
            try:
                sub = equitable_color_planar_lowdeg(h, rest // 4, backend)
            except Unsolved:
                telemetry.bump("planar.lowdeg_unsolved")
                st.lowdeg_failures.append(j)
            else:
                for x, c in enumerate(sub.assignment):
                    colour[ids[x]] = j + c
                alive.clear()
                st.finish, st.finished_at = "forests", j
                break
        k = (n + j) // s
        if j == 0:
            peel = set(witnesses.I0)
        elif j == 1:
            peel = set(witnesses.I1)
        else:
            if j == 2:
                st.dichotomy[2] = 3 * delta <= 2 * n
            elif j == 3:
                st.dichotomy[3] = 2 * delta <= n
            elif j <= s - 12 and 1 + -(-(n_j - delta - 1) // 4) < k:
                st.violations.append(f"j={j}: guaranteed set size below {k}")
            peel = _peel_through(g, alive, w, k, budget)
            st.peeled_through.append(w)
        if len(peel) != k or not peel <= alive:
            raise InternalAssertionFailed("planar-peel", f"step {j}: peel of size {len(peel)} should be {k}")
        for x in peel:
            colour[x] = j + 1
        alive -= peel
        st.peels.append(frozenset(peel))
        j += 1
        if j > s - 12 and alive and not st.lowdeg_failures:
            telemetry.bump("planar.past_s_minus_12")
    if alive:
        raise InternalAssertionFailed("planar-loop", f"{len(alive)} vertices left after {s} colours")
    if not st.finish:
        st.finish, st.finished_at = "peels", j
    out = Coloring.from_assignment(s, colour) if n else Coloring.from_assignment(s, [])
    problems = coloring_problems(g, out)
    if problems:
        raise InternalAssertionFailed("planar", "; ".join(problems[:3]))
    return PlanarRun(out, st, witnesses)


def equitable_color_planar(
    g: Graph, s: int, witnesses: WitnessSets | None = None, backend: str = "auto"
) -> Coloring:
    return equitable_color_planar_run(g, s, witnesses, backend).coloring


__all__ = [
    "PlanarLoopState",
    "PlanarRun",
    "WitnessSets",
    "check_witnesses",
    "equitable_color_planar",
    "equitable_color_planar_lowdeg",
    "equitable_color_planar_run",
    "find_witness_sets",
    "forest_four_partition",
    "lowdeg_applies",
    "top_two",
]
