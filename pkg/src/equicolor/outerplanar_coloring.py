"""Equitable s-colourings (s >= 6) of outerplanar graphs under the alpha_v hypothesis.

Structure (rotation order, second neighbourhoods, capped 3-colourings) is always
read from the degree-controlled maximal outerplanar supergraph; properness
checks in greedy steps use the input graph.  Every output is verified against
the input graph.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import telemetry
from .errors import (
    BudgetExceeded,
    HypothesisViolated,
    InternalAssertionFailed,
    NoConfigAvoidingE,
    NotAForest,
    NotMaximal,
    TooSmall,
)
from .forest_coloring import equitable_color_forest
from .graph_core import Coloring, Graph, coloring_problems, embed, neighbors_in_rotation, three_color_capped
from .partitioner import (
    ReducibleConfig,
    SaturationResult,
    find_reducible,
    forest_parents,
    near_threshold,
    partition_lemma,
    readd_config,
    saturate_with_degree_control,
)


def target_sizes(n: int, s: int = 6) -> tuple[int, ...]:
    """n_j = floor((n+j-1)/s) for j = 1..s; nondecreasing and summing to n."""
    return tuple((n + j - 1) // s for j in range(1, s + 1))


# ------------------------------------------------------------------ types


@dataclass
class ColorBudget:
    s: int
    n_j: tuple[int, ...]
    n_j_rem: list[int]
    n_j_blocked: list[int] = field(default_factory=list)

    @classmethod
    def from_partial(cls, n: int, colour: Sequence[int], s: int = 6) -> "ColorBudget":
        targets = target_sizes(n, s)
        used = [0] * s
        for c in colour:
            if c:
                used[c - 1] += 1
        return cls(s, targets, [t - u for t, u in zip(targets, used)], [0] * s)


@dataclass(frozen=True)
class DangerReport:
    threshold_dangerous: int
    threshold_near: int
    dangerous: tuple[int, ...]
    near: tuple[int, ...]


@dataclass
class ExtensionTrace:
    mode: str
    steps: int = 0
    six_steps: int = 0
    line6_fired: int = 0
    violations: list[str] = field(default_factory=list)


@dataclass
class TwoDangerousScratch:
    w1: int
    w2: int
    S1: list[int]
    S2: list[int]
    S1_run: list[int]
    S2_run: list[int]
    S1_alt: list[int]
    S2_alt: list[int]
    y_vertices: list[int]
    residual: list[int]
    notes: list[str] = field(default_factory=list)


@dataclass
class OneDangerousScratch:
    w: int
    T: set[int]
    t_paths: list[list[int]]
    alpha_T: int
    a: int = 0
    b: int = 0
    classes: tuple[frozenset, ...] = ()
    notes: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class HypothesisOk:
    needed: int
    checked_exactly: tuple[int, ...]

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Reduction:
    peels: tuple[frozenset, ...]
    residual: Graph
    residual_ids: tuple[int, ...]
    s_residual: int


@dataclass
class OuterplanarRun:
    coloring: Coloring
    route: str
    peels: tuple[frozenset, ...]
    scratch: object = None
    trace: ExtensionTrace | None = None
    fallbacks: list[str] = field(default_factory=list)


# ------------------------------------------------------------- hypothesis


def _cheap_alpha(g: Graph, v: int) -> int:
    """1 + ceil((n-d-1)/3): G - N[v] is outerplanar, hence 3-colourable."""
    return 1 + -(-(g.n - g.degree[v] - 1) // 3)


def check_hypothesis(g: Graph, s: int) -> HypothesisOk | HypothesisViolated:
    """Whether alpha_v >= floor(n/s) for all v; returned, not raised."""
    from .oracle import alpha_v_exact

    n = g.n
    need = n // s
    exact = []
    for v in sorted(range(n), key=lambda x: (-g.degree[x], x)):
        if _cheap_alpha(g, v) >= need:
            break
        exact.append(v)
        wit = alpha_v_exact(g, v)
        alt = s >= -(-(n + 1) // (wit.size + 1))
        if alt != (wit.size >= need):
            raise InternalAssertionFailed("hypothesis", f"the two forms of the hypothesis disagree at {v}")
        if wit.size < need:
            return HypothesisViolated(v, need, wit.size, tuple(sorted(wit.witness)))
    return HypothesisOk(need, tuple(exact))


def _independent_with(g: Graph, v: int, k: int) -> frozenset | None:
    """Independent set of exactly k vertices containing v: greedy first, then exact."""
    adj = g.adj
    if k <= 0:
        return frozenset()
    chosen = {v}
    blocked = set(adj[v]) | {v}
    for u in sorted(range(g.n), key=lambda x: (g.degree[x], x)):
        if len(chosen) >= k:
            break
        if u not in blocked:
            chosen.add(u)
            blocked |= adj[u]
            blocked.add(u)
    if len(chosen) >= k:
        return frozenset(chosen)
    from .oracle import independent_through

    return independent_through(g, v, k)


def reduce_color_count(g: Graph, s: int, check: bool = True) -> Reduction:
    """Peel independent sets through a maximum-degree vertex until six colours remain."""
    if s < 6:
        raise ValueError("colour-count reduction needs s >= 6")
    if check:
        res = check_hypothesis(g, s)
        if isinstance(res, HypothesisViolated):
            raise res
    ids = list(range(g.n))
    cur = g
    peels = []
    k = s
    while k > 6:
        q = cur.n // k
        if q:
            v = max(range(cur.n), key=lambda x: (cur.degree[x], -x))
            ind = _independent_with(cur, v, q)
            if ind is None:
                raise InternalAssertionFailed("reduce", f"no independent set of size {q} through {ids[v]}")
            peels.append(frozenset(ids[x] for x in ind))
            keep = [x for x in range(cur.n) if x not in ind]
            cur, old = cur.induced(keep)
            ids = [ids[x] for x in old]
        else:
            peels.append(frozenset())
        k -= 1
        res = check_hypothesis(cur, k)
        if isinstance(res, HypothesisViolated):
            raise InternalAssertionFailed("reduce", f"residual fails the hypothesis at {k} colours: {res}")
    return Reduction(tuple(peels), cur, tuple(ids), k)


# ------------------------------------------------------------ classification


def classify_danger(g: Graph) -> DangerReport:
    n = g.n
    near_t = near_threshold(n)
    order = sorted(range(n), key=lambda x: (-g.degree[x], x))
    near = tuple(v for v in order if g.degree[v] >= near_t)
    dangerous = tuple(v for v in near if g.degree[v] >= near_t + 1)
    if len(near) > 2:
        raise InternalAssertionFailed("classify", f"{len(near)} vertices of degree >= {near_t}")
    return DangerReport(near_t + 1, near_t, dangerous, near)


def second_neighbourhood(g: Graph, w: int) -> set[int]:
    """T = N[N(w)] minus N[w]."""
    adj = g.adj
    nw = adj[w]
    out: set[int] = set()
    for x in nw:
        out |= adj[x]
    return out - nw - {w}


def linear_forest_paths(g: Graph, verts: set[int]) -> list[list[int]]:
    """Components of G[verts], each a path listed end to end, in order of smallest member."""
    adj = g.adj
    inner = {v: adj[v] & verts for v in verts}
    seen: set[int] = set()
    paths = []
    for v in sorted(verts):
        if v in seen or len(inner[v]) > 1:
            continue
        path, prev, cur = [v], None, v
        seen.add(v)
        while True:
            nxt = [u for u in inner[cur] if u != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise InternalAssertionFailed("t-paths", f"vertex {cur} has degree > 2 in G[T]")
            prev, cur = cur, nxt[0]
            seen.add(cur)
            path.append(cur)
        paths.append(path)
    if len(seen) != len(verts):
        raise InternalAssertionFailed("t-paths", "G[T] contains a cycle")
    paths.sort(key=min)
    return paths


# ----------------------------------------------------------- shared pieces


def _capped_classes(sup: Graph, verts: Sequence[int]) -> list[list[int]]:
    """Capped 3-colouring of sup[verts]; classes sorted by size (desc, ties by class index)."""
    if not verts:
        return [[], [], []]
    sub, old = sup.induced(verts)
    col = three_color_capped(sub)
    classes = [sorted(old[x] for x in cls) for cls in col.classes]
    return sorted(classes, key=len, reverse=True)


def _finish(g: Graph, colour: Sequence[int], step: str) -> Coloring:
    col = Coloring.from_assignment(6, list(colour))
    bad = coloring_problems(g, col)
    if bad:
        raise InternalAssertionFailed(step, "; ".join(bad[:3]))
    return col


def _rotation_path(sup: Graph, w: int) -> list[int]:
    xs = neighbors_in_rotation(sup, w)
    if len(xs) > 2 and sup.has_edge(xs[0], xs[-1]):
        raise InternalAssertionFailed("rotation", f"first and last neighbours of {w} are adjacent")
    return xs


# ----------------------------------------------------------- zero dangerous


def color_zero_dangerous(g: Graph, saturation: SaturationResult | None = None) -> Coloring:
    """Two-forest partition with degree caps, then an equitable 3-colouring of each forest."""
    n = g.n
    fp = partition_lemma(g, saturation)
    colour = [0] * n
    for offset, part in ((0, fp.parts[0]), (3, fp.parts[1])):
        verts = sorted(part)
        if not verts:
            continue
        sub, old = g.induced(verts)
        try:
            col = equitable_color_forest(sub, 3)
        except (HypothesisViolated, NotAForest) as exc:
            raise InternalAssertionFailed("zero-dangerous", f"forest colouring failed: {exc}") from exc
        for i, c in enumerate(col.assignment):
            colour[old[i]] = c + offset
    return _finish(g, colour, "zero-dangerous")


# ------------------------------------------------------------ two dangerous


def _route_two(g: Graph, sup: Graph, w1: int, w2: int) -> tuple[Coloring, TwoDangerousScratch]:
    n = sup.n
    adj, gadj = sup.adj, g.adj
    nj = target_sizes(n)
    n1, _, _, n4, n5, n6 = nj

    def pruned(wi: int, wo: int) -> list[int]:
        ban: set[int] = set()
        for x in adj[wo] - {wi}:
            ban |= adj[x]
            ban.add(x)
        return [x for x in neighbors_in_rotation(sup, wi) if x not in ban]

    S1, S2 = pruned(w1, w2), pruned(w2, w1)
    L1, L2 = n1 + n5 - 1, n4 + n6 - 1
    notes = []
    for S, wi, L in ((S1, w1, L1), (S2, w2, L2)):
        if len(S) < sup.degree[wi] - 5:
            raise InternalAssertionFailed("two-dangerous", f"|S| = {len(S)} < d - 5 at {wi}")
        if len(S) < sup.degree[wi] - 3:
            notes.append(f"|S| = {len(S)} < d - 3 = {sup.degree[wi] - 3} at {wi}")
        if len(S) < L:
            raise InternalAssertionFailed("two-dangerous", f"|S| = {len(S)} is shorter than the run length {L}")
    fixed = {w1, w2}

    def heavy(alt: set[int]) -> list[int]:
        count: dict[int, int] = {}
        for x in alt:
            for y in adj[x]:
                count[y] = count.get(y, 0) + 1
        return sorted(y for y, c in count.items() if c > 1 and y not in fixed)

    choice = None
    for a in range(len(S1) - L1 + 1):
        run1 = S1[a : a + L1]
        for b in range(len(S2) - L2 + 1):
            run2 = S2[b : b + L2]
            alt = set(run1[0::2]) | set(run2[0::2])
            ys = [y for y in heavy(alt) if y not in run1 and y not in run2]
            if len(ys) <= 1:
                choice = (run1, run2, ys)
                break
        if choice:
            break
    if choice is None:
        raise InternalAssertionFailed("two-dangerous", "no window pair leaves at most one heavy vertex")
    run1, run2, ys = choice
    alt1, alt2 = run1[0::2], run2[0::2]
    colour = [0] * n
    colour[w2] = 5
    colour[w1] = 6
    for x in run1[1::2]:
        colour[x] = 5
    for x in run2[1::2]:
        colour[x] = 6
    taken = set(run1) | set(run2) | fixed
    residual = [v for v in range(n) if v not in taken]
    classes = _capped_classes(sup, residual)
    for c, cls in zip((3, 2, 1), classes):
        for v in cls:
            colour[v] = c
    pool = alt1 + alt2
    for j in (1, 2, 3):
        need = nj[j - 1] - sum(1 for c in colour if c == j)
        if need < 0:
            raise InternalAssertionFailed("two-dangerous", f"colour {j} already over quota")
        for _ in range(need):
            z = next((x for x in pool if not colour[x] and all(colour[u] != j for u in gadj[x])), None)
            if z is None:
                raise InternalAssertionFailed("two-dangerous", f"greedy stalled on colour {j}")
            colour[z] = j
    for x in pool:
        if not colour[x]:
            colour[x] = 4
    scratch = TwoDangerousScratch(w1, w2, S1, S2, run1, run2, alt1, alt2, ys, residual, notes)
    return _finish(g, colour, "two-dangerous"), scratch


def color_two_dangerous(g: Graph, w1: int, w2: int, sup: Graph | None = None) -> Coloring:
    sup = sup or saturate_with_degree_control(embed(g)).supergraph
    return _route_two(g, sup, w1, w2)[0]


# ------------------------------------------------------ colour extension


def algorithm1_extend(
    g: Graph,
    xs: Sequence[int],
    colour: list[int],
    budget: ColorBudget | None = None,
    mode: str = "line6",
    tracked: set[int] | None = None,
) -> ExtensionTrace:
    """Colour xs (the neighbours of w in rotation order) in place, cycling through colours 1..6.

    `tracked` is the pre-coloured region whose vertices count as blockers n_j''
    (default: every pre-coloured vertex).  A blocker u counts for colour j while
    some neighbour x_h of u still has its colour-j attempt ahead of it and colour
    j still has quota.  Mode
    "highdeg" also checks n_5' = n_6' after the first step except right after a
    colour-5 step, and that the skip-to-6 rule never changes the colour.
    """
    n = g.n
    adj = g.adj
    budget = budget or ColorBudget.from_partial(n, colour)
    rem = budget.n_j_rem
    nj = budget.n_j
    trace = ExtensionTrace(mode)
    pos = {x: i for i, x in enumerate(xs)}
    hits: dict[int, list[int]] = {}
    for x in xs:
        for u in adj[x]:
            if u not in pos and colour[u] and (tracked is None or u in tracked):
                hits.setdefault(u, []).append(pos[x])
    tried_here: set[int] = set()

    def blocked(i: int) -> list[int]:
        out = [0] * 6
        for u, hs in hits.items():
            c = colour[u]
            if any(h > i or (h == i and c not in tried_here) for h in hs):
                out[c - 1] += 1
        return out

    i = 0
    j = 1 if nj[5] == nj[4] else 6
    fails = 0
    last_success = 0
    d = len(xs)
    while i < d:
        trace.steps += 1
        if mode == "highdeg" and trace.steps > 1 and last_success != 5 and rem[4] != rem[5]:
            trace.violations.append(f"step {trace.steps}: n5'={rem[4]} differs from n6'={rem[5]}")
        x = xs[i]
        ok = rem[j - 1] > 0 and all(colour[u] != j for u in adj[x])
        if ok and j == 6:
            trace.six_steps += 1
            blk = blocked(i)
            budget.n_j_blocked[:] = blk
            for jj in range(5):
                # an exhausted colour is refused on quota, so its blockers no longer matter
                if rem[jj] and rem[jj] + blk[jj] > rem[5]:
                    trace.violations.append(
                        f"step {trace.steps}: n{jj + 1}'+n{jj + 1}''={rem[jj]}+{blk[jj]} > n6'={rem[5]}"
                    )
        tried_here.add(j)
        if ok:
            colour[x] = j
            rem[j - 1] -= 1
            last_success = j
            fails = 0
            tried_here = set()
        else:
            fails += 1
            if fails > 12:
                raise InternalAssertionFailed("colour-extension", f"no colour fits neighbour {x} (position {i})")
        j = j % 6 + 1
        if sum(rem[2:5]) < rem[5] and j != 6:
            j = 6
            trace.line6_fired += 1
            if mode == "highdeg":
                trace.violations.append(f"step {trace.steps}: skip-to-6 rule fired in high-degree mode")
        if ok:
            i += 1
    if any(rem):
        raise InternalAssertionFailed("colour-extension", f"quotas left over: {rem}")
    return trace


# ------------------------------------------------------------ one dangerous


def _route_highdeg(g: Graph, sup: Graph, w: int) -> tuple[Coloring, OneDangerousScratch, ExtensionTrace]:
    n = sup.n
    nj = target_sizes(n)
    n1 = nj[0]
    ind = _independent_with(sup, w, n1)
    if ind is None:
        telemetry.bump("outerplanar.i1_from_input_graph")
        ind = _independent_with(g, w, n1)
        if ind is None:
            from .oracle import alpha_v_exact

            wit = alpha_v_exact(g, w)
            raise HypothesisViolated(w, n1, wit.size, tuple(sorted(wit.witness)))
    xs = _rotation_path(sup, w)
    if set(xs) & ind:
        raise InternalAssertionFailed("high-degree", "I_1 meets N(w)")
    scratch = OneDangerousScratch(w, set(), [], 0)
    k, ell = divmod(n, 6)
    rest = [v for v in range(n) if v not in ind and v not in sup.adj[w]]
    if len(rest) > 2 * k + ell // 2:
        scratch.notes.append(f"|G'| = {len(rest)} exceeds 2k + floor(l/2) = {2 * k + ell // 2}")
    colour = [0] * n
    for v in ind:
        colour[v] = 1
    for c, cls in zip((4, 3, 2), _capped_classes(sup, rest)):
        for v in cls:
            colour[v] = c
    budget = ColorBudget.from_partial(n, colour)
    if min(budget.n_j_rem) < 0:
        raise InternalAssertionFailed("high-degree", f"over quota before extension: {budget.n_j_rem}")
    trace = algorithm1_extend(g, xs, colour, budget, mode="highdeg", tracked=set(rest))
    return _finish(g, colour, "high-degree"), scratch, trace


def color_one_dangerous_highdeg(g: Graph, w: int, sup: Graph | None = None) -> Coloring:
    sup = sup or saturate_with_degree_control(embed(g)).supergraph
    return _route_highdeg(g, sup, w)[0]


def _alpha_of_paths(paths: list[list[int]]) -> int:
    return sum((len(p) + 1) // 2 for p in paths)


def _route_small_t(g: Graph, sup: Graph, w: int) -> tuple[Coloring, OneDangerousScratch, ExtensionTrace]:
    n = sup.n
    nj = target_sizes(n)
    T = second_neighbourhood(sup, w)
    paths = linear_forest_paths(sup, T)
    scratch = OneDangerousScratch(w, T, paths, _alpha_of_paths(paths))
    outside = [v for v in range(n) if v != w and v not in sup.adj[w]]
    C1, C2, C3 = _capped_classes(sup, outside)
    scratch.classes = (frozenset(C1), frozenset(C2), frozenset(C3))

    def pick(cls: list[int], size: int) -> list[int]:
        inT = [v for v in cls if v in T]
        if len(inT) > size:
            raise InternalAssertionFailed("small-T", f"{len(inT)} T-vertices in a class capped at {size}")
        return inT + [v for v in cls if v not in T][: size - len(inT)]

    colour = [0] * n
    colour[w] = 1
    I1 = pick(C1, nj[0] - 1)
    if len(I1) < nj[0] - 1:
        raise InternalAssertionFailed("small-T", f"C_1 has only {len(C1)} vertices")
    for v in C1:
        colour[v] = 1 if v in set(I1) else 4
    for cls, lo, hi, cap in ((C2, 2, 5, nj[1]), (C3, 3, 6, nj[2])):
        keep = set(pick(cls, cap)) if len(cls) > cap else set(cls)
        for v in cls:
            colour[v] = lo if v in keep else hi
    budget = ColorBudget.from_partial(n, colour)
    rem = budget.n_j_rem
    if min(rem) < 0:
        raise InternalAssertionFailed("small-T", f"over quota before extension: {rem}")
    if any(rem[5] < rem[j] for j in range(5)):
        scratch.notes.append(f"initial n6' = {rem[5]} is below some n_j': {rem}")
    g2 = [v for v in outside if colour[v] not in (1, 2)]
    bound = nj[2] + nj[3] + nj[4] - nj[5] - 3
    if len(g2) > bound:
        scratch.notes.append(f"|G''| = {len(g2)} exceeds n3+n4+n5-n6-3 = {bound}")
    xs = _rotation_path(sup, w)
    trace = algorithm1_extend(g, xs, colour, budget, mode="line6", tracked=set(outside))
    return _finish(g, colour, "small-T"), scratch, trace


def color_one_dangerous_smallT(g: Graph, w: int, sup: Graph | None = None) -> Coloring:
    sup = sup or saturate_with_degree_control(embed(g)).supergraph
    return _route_small_t(g, sup, w)[0]


def _reduce_far_components(sup: Graph, w: int, near: set[int]) -> tuple[set[int], list[ReducibleConfig], set[int]]:
    """Delete configurations beyond distance 2 from w until only isolated far vertices remain."""
    adj = [set(a) for a in sup.adj]
    alive = set(range(sup.n))
    stack: list[ReducibleConfig] = []
    nw = sup.adj[w]
    while True:
        far = alive - near
        comp = None
        seen: set[int] = set()
        for s in sorted(far):
            if s in seen:
                continue
            c, queue = {s}, [s]
            while queue:
                x = queue.pop()
                for y in adj[x]:
                    if y in far and y not in c:
                        c.add(y)
                        queue.append(y)
            seen |= c
            if len(c) >= 2:
                comp = c
                break
        if comp is None:
            return alive, stack, far
        att = sorted({y for x in comp for y in adj[x] if y not in comp})
        if len(att) != 2 or att[1] not in adj[att[0]]:
            raise InternalAssertionFailed("big-T", f"far component attaches to {att}")
        y1, y2 = att
        hub = sorted(adj[y1] & adj[y2] & nw)
        if not hub:
            raise InternalAssertionFailed("big-T", f"{y1}-{y2} has no common neighbour in N(w)")
        members = sorted(comp | {hub[0], y1, y2})
        sub_edges = [(u, v) for u in members for v in adj[u] if u < v and v in set(members)]
        rank = {v: i for i, v in enumerate(members)}
        order = [rank[v] for v in sup.outer_order if v in rank]
        h = Graph(len(members), [(rank[u], rank[v]) for u, v in sub_edges], order)
        try:
            cfg = find_reducible(h, (rank[y1], rank[y2]))
        except (NoConfigAvoidingE, NotMaximal, TooSmall) as exc:
            raise InternalAssertionFailed("big-T", f"no configuration in far component: {exc}") from exc
        cfg = ReducibleConfig(cfg.kind, tuple(members[v] for v in cfg.vertices), tuple(members[v] for v in cfg.anchors))
        if set(cfg.vertices) & near:
            raise InternalAssertionFailed("big-T", f"configuration {cfg} touches N[N[w]]")
        for x in cfg.vertices:
            alive.discard(x)
            for u in adj[x]:
                adj[u].discard(x)
            adj[x] = set()
        stack.append(cfg)


def _route_big_t(g: Graph, sup: Graph, w: int) -> tuple[Coloring, OneDangerousScratch]:
    n = sup.n
    adj = sup.adj
    nw = adj[w]
    T = second_neighbourhood(sup, w)
    paths = linear_forest_paths(sup, T)
    scratch = OneDangerousScratch(w, T, paths, _alpha_of_paths(paths))
    near = T | nw | {w}
    alive, configs, far = _reduce_far_components(sup, w, near)

    # pare every T-path down to order 3, 1 or 0, remembering how to restore it
    undo: list[tuple] = []
    pared: list[list[int]] = []
    for p in paths:
        apexes = [i for i, t in enumerate(p) if len(adj[t] & nw) == 2]
        if len(apexes) != 1:
            raise InternalAssertionFailed("big-T", f"T-path {p} has {len(apexes)} apex vertices")
        p = list(p)
        while len(p) >= 4:
            c = next(i for i, t in enumerate(p) if len(adj[t] & nw) == 2)
            if c >= len(p) - 1 - c:
                e, f, g_ = p[0], p[1], p[2]
                p = p[2:]
            else:
                e, f, g_ = p[-1], p[-2], p[-3]
                p = p[:-2]
            undo.append(("pair", e, f, g_))
        if len(p) == 2:
            t = p[0] if len(adj[p[0]] & nw) == 2 else p[1]
            a1 = p[1] if t == p[0] else p[0]
            lone = [x for x in adj[t] & nw if a1 not in adj[x]]
            if len(lone) != 1:
                raise InternalAssertionFailed("big-T", f"order-2 path {p} has no lone attachment")
            undo.append(("two", t, a1, lone[0]))
            p = []
        if p:
            pared.append(p)
    a = sum(1 for p in pared if len(p) == 3)
    b = sum(1 for p in pared if len(p) == 1)
    scratch.a, scratch.b = a, b
    xs = _rotation_path(sup, w)
    part = [-1] * n
    part[w] = 0
    if 3 * (3 * a + b) >= n:
        k1 = (a + b) // 2
        for idx, p in enumerate(pared):
            extra = 0 if idx < k1 else 1
            for pos, t in enumerate(p):
                part[t] = extra if pos % 2 == 0 else 1 - extra
        for i, x in enumerate(xs):
            part[x] = 1 if i % 2 == 0 else 0
    else:
        reserved: set[int] = set()
        for p in pared:
            for pos, t in enumerate(p):
                part[t] = 0 if pos % 2 == 0 else 1
            if len(p) == 3:
                reserved |= adj[p[1]] & nw
        free = [x for x in xs if x not in reserved]
        if len(free) < a + b + 1:
            raise InternalAssertionFailed("big-T", f"only {len(free)} unreserved neighbours for {a + b + 1}")
        for x in free[: a + b + 1]:
            part[x] = 1
        rest = [x for x in xs if part[x] < 0]
        for i, x in enumerate(rest):
            part[x] = 1 if i % 2 == 0 else 0
    for kind, *vs in reversed(undo):
        if kind == "pair":
            e, f, g_ = vs
            part[f] = 1 - part[g_]
            part[e] = 1 - part[f]
        else:
            t, a1, lone = vs
            part[t] = 1 - part[lone]
            part[a1] = 1 - part[t]
    size = [part.count(0), part.count(1)]
    for z in sorted(far):
        side = 0 if size[0] <= size[1] else 1
        part[z] = side
        size[side] += 1
    for cfg in reversed(configs):
        readd_config(cfg, part, size)
    if -1 in part:
        raise InternalAssertionFailed("big-T", "some vertices were never assigned")
    if abs(size[0] - size[1]) > 1:
        raise InternalAssertionFailed("big-T", f"unbalanced parts {size}")
    for i in (0, 1):
        if forest_parents(adj, [v for v in range(n) if part[v] == i]) is None:
            raise InternalAssertionFailed("big-T", f"part {i + 1} contains a cycle")
    for x in range(n):
        if x == w:
            continue
        dd = sum(1 for u in adj[x] if part[u] == part[x])
        if dd > (sup.degree[x] + 1) // 2:
            scratch.notes.append(f"vertex {x} has {dd} neighbours in its part")
    colour = [0] * n
    for i, offset in ((0, 0), (1, 3)):
        verts = [v for v in range(n) if part[v] == i]
        sub, old = g.induced(verts)
        try:
            col = equitable_color_forest(sub, 3)
        except HypothesisViolated as exc:
            raise InternalAssertionFailed("big-T", f"forest {i + 1} fails the hypothesis: {exc}") from exc
        for k, c in enumerate(col.assignment):
            colour[old[k]] = c + offset
    return _finish(g, colour, "big-T"), scratch


def color_one_dangerous_bigT(g: Graph, w: int, sup: Graph | None = None) -> Coloring:
    sup = sup or saturate_with_degree_control(embed(g)).supergraph
    return _route_big_t(g, sup, w)[0]


# ------------------------------------------------------------------ driver


def _six_routes(g: Graph, res: SaturationResult) -> list[tuple[str, Callable]]:
    sup = res.supergraph
    n = g.n
    danger = classify_danger(sup)
    routes: list[tuple[str, Callable]] = []
    if len(danger.near) >= 2:
        w1, w2 = danger.near[:2]
        routes.append(("two-dangerous", lambda: _route_two(g, sup, w1, w2)))
    elif danger.dangerous:
        w = danger.dangerous[0]
        if 2 * sup.degree[w] >= n:
            routes.append(("high-degree", lambda: _route_highdeg(g, sup, w)))
        else:
            paths = linear_forest_paths(sup, second_neighbourhood(sup, w))
            if _alpha_of_paths(paths) <= n // 6 - 1:
                routes.append(("small-T", lambda: _route_small_t(g, sup, w)))
            else:
                routes.append(("big-T", lambda: _route_big_t(g, sup, w)))
    else:
        routes.append(("zero-dangerous", lambda: (color_zero_dangerous(g, res), None)))
    primary = routes[0][0]
    if primary != "zero-dangerous":
        routes.append(("zero-dangerous", lambda: (color_zero_dangerous(g, res), None)))
    if n <= 20:
        routes.append(("exhaustive", lambda: (_exhaustive_six(g), None)))
    return routes


def _exhaustive_six(g: Graph) -> Coloring:
    from .oracle import exhaustive_equitable

    res = exhaustive_equitable(g, 6)
    if not res:
        raise InternalAssertionFailed("exhaustive", "no equitable 6-colouring exists")
    return res


def _color_six(g: Graph) -> OuterplanarRun:
    n = g.n
    if n <= 6:
        return OuterplanarRun(Coloring.from_assignment(6, list(range(6 - n + 1, 7))), "trivial", ())
    res = saturate_with_degree_control(g)
    fallbacks: list[str] = []
    last_exc: Exception | None = None
    for name, run in _six_routes(g, res):
        try:
            out = run()
        except (InternalAssertionFailed, BudgetExceeded) as exc:
            telemetry.bump(f"outerplanar.{name}.failed")
            fallbacks.append(f"{name}: {exc}")
            last_exc = exc
            continue
        if fallbacks:
            telemetry.bump("outerplanar.fallback_used")
        col, scratch, trace = (*out, None)[:3]
        return OuterplanarRun(col, name, (), scratch, trace, fallbacks)
    raise InternalAssertionFailed("outerplanar", f"every route failed; last: {last_exc}")


def equitable_color_outerplanar_run(g: Graph, s: int, check: bool = True) -> OuterplanarRun:
    """Full pipeline with the route taken, scratch data and the colour-extension trace."""
    if s < 6:
        raise ValueError("the outerplanar pipeline needs s >= 6")
    g = embed(g)
    if check:
        res = check_hypothesis(g, s)
        if isinstance(res, HypothesisViolated):
            raise res
    red = reduce_color_count(g, s, check=False)
    run = _color_six(red.residual)
    assignment = [0] * g.n
    for i, c in enumerate(run.coloring.assignment):
        assignment[red.residual_ids[i]] = c
    for k, peel in enumerate(red.peels):
        for v in peel:
            assignment[v] = s - k
    col = Coloring.from_assignment(s, assignment)
    bad = coloring_problems(g, col)
    if bad:
        raise InternalAssertionFailed("outerplanar", "; ".join(bad[:3]))
    run.coloring = col
    run.peels = red.peels
    return run


def equitable_color_outerplanar(g: Graph, s: int) -> Coloring:
    """Equitable s-colouring (s >= 6) of an outerplanar graph with alpha_v >= floor(n/s) everywhere."""
    return equitable_color_outerplanar_run(g, s).coloring


__all__ = [
    "ExtensionTrace",
    "ColorBudget",
    "DangerReport",
    "HypothesisOk",
    "OneDangerousScratch",
    "OuterplanarRun",
    "Reduction",
    "TwoDangerousScratch",
    "algorithm1_extend",
    "check_hypothesis",
    "classify_danger",
    "color_one_dangerous_bigT",
    "color_one_dangerous_highdeg",
    "color_one_dangerous_smallT",
    "color_two_dangerous",
    "color_zero_dangerous",
    "equitable_color_outerplanar",
    "equitable_color_outerplanar_run",
    "linear_forest_paths",
    "reduce_color_count",
    "second_neighbourhood",
    "target_sizes",
]


from .five_to_four import FiveToFourCertificate, equitable_color_five, reduce_5_to_4  # noqa: E402
