"""Weighted Group Feedback Vertex/Edge Set and Subset FVS/FES.

Iterative compression hands a set ``X`` with ``G - X`` free of non-null
cycles. After untangling, vertices forced by a large fan in ``F(v, x)`` are
deleted, the external-path label sets are bounded, and every reasonable
labeling of ``X`` is tried as a Multiway Cut instance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from .graph import INF, Graph, InputError, connected_components, fresh_name, max_disjoint_fan
from .groups import LabeledGraph, Z2R, consistent_labeling, untangle
from .instances import GroupFVSInstance, MultiwayCutInstance, SolveOutcome, SubsetFVSInstance
from .multicut import set_partitions, solve_multiway_cut


def gamma_cap(k: int) -> int:
    """Smallest ``|Gamma(x, y)|`` that rules out a solution of size ``k``."""
    return k ** 3 * (k + 1) ** 2 + 2


@dataclass
class GfvsState:
    """Untangled disjoint-compression instance.

    ``dead`` holds vertices absent from the current graph: not yet added,
    guessed into the solution, or forced out.
    """

    g: LabeledGraph
    weight: tuple
    X: frozenset[int]
    dead: set[int]
    k: int
    W: Any
    deleted: list[int] = field(default_factory=list)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        for e, (u, v) in enumerate(self.g.base.edges):
            if u not in self.dead and v not in self.dead:
                yield e, u, v

    def outside(self) -> list[int]:
        return [v for v in range(self.g.base.n) if v not in self.dead and v not in self.X]

    def outside_adjacency(self) -> dict[int, set[int]]:
        adj = {v: set() for v in self.outside()}
        for _, u, v in self.edges():
            if u in adj and v in adj:
                adj[u].add(v)
                adj[v].add(u)
        return adj


def _elem(grp, a) -> tuple[str, str]:
    return ("elem", grp.canonical(a))


def flow_graph(st: GfvsState, x: int) -> tuple[dict, set]:
    """``F(., x)``: ``G - X`` plus one vertex per element of ``Gamma_x``."""
    grp = st.g.group
    adj: dict = st.outside_adjacency()
    targets = set()
    for e, u, v in st.edges():
        for a, b in ((u, v), (v, u)):
            if a == x and b not in st.X:
                node = _elem(grp, st.g.psi(e, b))
                targets.add(node)
                adj.setdefault(node, set()).add(b)
                adj[b].add(node)
    return adj, targets


def force_vertices(st: GfvsState) -> GfvsState | None:
    """Delete every vertex with a ``(k+2)``-fan to distinct ``Gamma_x``
    elements, repeating to a fixpoint. None when a forced vertex cannot be
    paid for."""
    st = GfvsState(st.g, st.weight, st.X, set(st.dead), st.k, st.W, list(st.deleted))
    changed = True
    while changed:
        changed = False
        for x in sorted(st.X):
            adj, targets = flow_graph(st, x)
            if len(targets) < st.k + 2:
                continue
            for v in st.outside():
                if max_disjoint_fan(adj, v, targets) >= st.k + 2:
                    if st.weight[v] == INF or st.k < 1 or st.weight[v] > st.W:
                        return None
                    st.dead.add(v)
                    st.deleted.append(v)
                    st.k -= 1
                    st.W -= st.weight[v]
                    changed = True
                    break
            if changed:
                break
    return st


def external_values(st: GfvsState) -> dict[tuple[int, int], list]:
    """``Gamma(x, y)`` for ordered pairs of distinct ``X`` vertices.

    In an untangled instance a path's value depends only on its first and
    last edge, so it is enough to pair up edges leaving ``x`` and entering
    ``y`` at vertices of one component of ``G - X``. Elements come back in
    canonical-string order.
    """
    grp = st.g.group
    comp_of = {}
    for i, comp in enumerate(connected_components(st.outside_adjacency())):
        for v in comp:
            comp_of[v] = i
    pairs: dict[tuple[int, int], dict[str, Any]] = {
        (x, y): {} for x in st.X for y in st.X if x != y}
    leave: dict[int, list] = {x: [] for x in st.X}
    enter: dict[int, list] = {x: [] for x in st.X}
    for e, u, v in st.edges():
        for a, b in ((u, v), (v, u)):
            if a in st.X and b in st.X:
                g = st.g.psi(e, a)
                pairs[(a, b)][grp.canonical(g)] = g
            elif a in st.X:
                leave[a].append((b, st.g.psi(e, a)))
                enter[a].append((b, st.g.psi(e, b)))
    for (x, y), seen in pairs.items():
        for u, first in leave[x]:
            for w, last in enter[y]:
                if comp_of[u] == comp_of[w]:
                    g = grp.op(first, last)
                    seen[grp.canonical(g)] = g
    return {key: [seen[c] for c in sorted(seen)] for key, seen in pairs.items()}


def chain_values(st: GfvsState, block: list[int], gamma: dict) -> dict[int, list]:
    """Values ``x`` can take relative to ``block[0]`` set to the identity.

    A path inside one component of ``G - Z`` between two block members may
    pass through other members, so values are summed over simple chains of
    external paths within the block.
    """
    grp = st.g.group
    root = block[0]
    found: dict[int, dict[str, Any]] = {x: {} for x in block[1:]}

    def walk(at: int, acc, used: set) -> None:
        for nxt in block:
            if nxt in used:
                continue
            for g in gamma[(at, nxt)]:
                val = grp.op(acc, g)
                found[nxt][grp.canonical(val)] = val
                walk(nxt, val, used | {nxt})

    walk(root, grp.identity(), {root})
    return {x: [found[x][c] for c in sorted(found[x])] for x in block[1:]}


def enumerate_labelings(st: GfvsState) -> Iterator[dict[int, Any]]:
    """Reasonable labelings of ``X``: one guess per partition of ``X`` into
    future components, the block minimum fixed to the identity."""
    grp = st.g.group
    gamma = external_values(st)
    comp_of = {}
    full_adj = {v: set() for v in range(st.g.base.n) if v not in st.dead}
    for _, u, v in st.edges():
        full_adj[u].add(v)
        full_adj[v].add(u)
    for i, comp in enumerate(connected_components(full_adj)):
        for v in comp:
            comp_of[v] = i
    seen: set = set()
    for blocks in set_partitions(sorted(st.X)):
        if any(len({comp_of[x] for x in b}) > 1 for b in blocks):
            continue
        options = []
        for b in blocks:
            vals = chain_values(st, b, gamma)
            options.append([(b[0], grp.identity())])
            for x in b[1:]:
                options.append([(x, g) for g in vals[x]])
        for combo in itertools.product(*options):
            phi0 = dict(combo)
            key = tuple(sorted((x, grp.canonical(g)) for x, g in phi0.items()))
            if key in seen:
                continue
            seen.add(key)
            yield phi0


@dataclass(frozen=True)
class ExtensionProblem:
    """Multiway Cut instance for one ``phi0``; ``vertex_of[i]`` maps back."""

    instance: MultiwayCutInstance
    vertex_of: tuple[int, ...]


def labeling_to_mwc(st: GfvsState, phi0: dict[int, Any]) -> ExtensionProblem | None:
    """The Multiway Cut instance of the extension step, or None when an edge
    inside ``X`` already contradicts ``phi0``."""
    grp, g = st.g.group, st.g
    for e, u, v in st.edges():
        if u in st.X and v in st.X and not grp.eq(phi0[v], grp.op(phi0[u], g.psi(e, u))):
            return None
    outside = st.outside()
    local = {v: i for i, v in enumerate(outside)}
    names = [g.base.names[v] for v in outside]
    weights = [st.weight[v] for v in outside]
    taken = set(names)
    term_of: dict[str, int] = {}
    edges = []
    for e, u, v in st.edges():
        if u in local and v in local:
            edges.append((local[u], local[v]))
            continue
        for a, b in ((u, v), (v, u)):
            if a in st.X and b in local:
                val = grp.op(phi0[a], g.psi(e, a))
                key = grp.canonical(val)
                if key not in term_of:
                    term_of[key] = len(names)
                    names.append(fresh_name(taken, f"[{key}]"))
                    weights.append(INF)
                edges.append((term_of[key], local[b]))
    H = Graph(tuple(names), tuple(edges), vertex_weights=tuple(weights))
    terminals = tuple(term_of[c] for c in sorted(term_of))
    inst = MultiwayCutInstance(H, terminals, st.k, st.W, "vertex")
    return ExtensionProblem(inst, tuple(outside))


def default_mwc_solver(inst: MultiwayCutInstance) -> SolveOutcome:
    return solve_multiway_cut(inst)


def extend_labeling(st: GfvsState, phi0: dict[int, Any],
                    mwc_solver: Callable = default_mwc_solver,
                    on_mwc: Callable | None = None) -> list[int] | None:
    """Deletions (beyond ``st.deleted``) letting ``phi0`` extend, or None."""
    prob = labeling_to_mwc(st, phi0)
    if prob is None:
        return None
    out = mwc_solver(prob.instance)
    if on_mwc is not None:
        on_mwc(st, phi0, prob, out)
    if not out.yes:
        return None
    return [prob.vertex_of[v] for v in out.cut]


@dataclass
class GfvsHooks:
    mwc_solver: Callable = default_mwc_solver
    on_mwc: Callable | None = None
    stats: dict = field(default_factory=lambda: {
        "compressions": 0, "forced": 0, "labelings": 0, "gamma_cutoffs": 0})


def solve_disjoint(g: LabeledGraph, weight: tuple, X: frozenset[int], dead: set[int],
                   k: int, W, hooks: GfvsHooks) -> list[int] | None:
    """Solution of ``g - dead`` avoiding ``X`` (``G - X`` must be null-free)."""
    st = GfvsState(untangle(g, X, dead), weight, X, set(dead), k, W)
    forced = force_vertices(st)
    if forced is None:
        return None
    hooks.stats["forced"] += len(forced.deleted)
    st = forced
    cap = gamma_cap(st.k)
    if any(len(vals) >= cap for vals in external_values(st).values()):
        hooks.stats["gamma_cutoffs"] += 1
        return None
    for phi0 in enumerate_labelings(st):
        hooks.stats["labelings"] += 1
        extra = extend_labeling(st, phi0, hooks.mwc_solver, hooks.on_mwc)
        if extra is not None:
            return st.deleted + extra
    return None


def solve_gfvs(inst: GroupFVSInstance, *, mwc_solver: Callable = default_mwc_solver,
               on_mwc: Callable | None = None) -> SolveOutcome:
    if inst.deletion == "edge":
        sub, edge_of = subdivide_labeled(inst.labeled)
        vinst = GroupFVSInstance(sub, inst.k, inst.W, "vertex")
        out = solve_gfvs(vinst, mwc_solver=mwc_solver, on_mwc=on_mwc)
        if not out.yes:
            return out
        return SolveOutcome.found([edge_of(v) for v in out.cut], inst.weight_of, **out.stats)

    lg = inst.labeled
    n = lg.base.n
    weight = tuple(lg.base.vertex_weight(v) for v in range(n))
    hooks = GfvsHooks(mwc_solver, on_mwc)
    Z: list[int] = []
    for i in range(n):
        dead = set(range(i + 1, n))
        if consistent_labeling(lg, removed=dead | set(Z)).ok:
            continue
        hooks.stats["compressions"] += 1
        X = sorted(Z + [i])
        found = None
        for size in range(len(X) + 1):
            for Y in itertools.combinations(X, size):
                wy = sum(weight[y] for y in Y)
                if size > inst.k or wy > inst.W:
                    continue
                rest = frozenset(X) - set(Y)
                found = solve_disjoint(lg, weight, rest, dead | set(Y),
                                       inst.k - size, inst.W - wy, hooks)
                if found is not None:
                    found = list(Y) + found
                    break
            if found is not None:
                break
        if found is None:
            return SolveOutcome.no(**hooks.stats)
        Z = sorted(found)
    return SolveOutcome.found(Z, inst.weight_of, **hooks.stats)


def subdivide_labeled(lg: LabeledGraph) -> tuple[LabeledGraph, Callable[[int], int]]:
    """Edge-to-vertex transformation with labels.

    Edge ``e = uv`` becomes ``u - x_e - v``; the half ``u x_e`` carries the
    label of ``e`` and ``x_e v`` the identity.
    """
    g, grp = lg.base, lg.group
    if g.edge_weights is None:
        raise InputError("edge-deletion instance needs edge weights")
    taken = set(g.names)
    names = list(g.names)
    weights = [INF] * g.n
    edges, labels = [], []
    for e, (u, v) in enumerate(g.edges):
        x = len(names)
        names.append(fresh_name(taken, f"x_{g.names[u]}_{g.names[v]}@{e}"))
        weights.append(g.edge_weight(e))
        edges += [(u, x), (x, v)]
        a, b = lg.labels[e]
        labels += [(a, b), (grp.identity(), grp.identity())]
    sub = LabeledGraph(Graph(tuple(names), tuple(edges), vertex_weights=tuple(weights)),
                       grp, tuple(labels))
    n0 = g.n
    return sub, lambda v: v - n0


def subset_labels(g: Graph) -> LabeledGraph:
    """``Z_2^R`` labels: red edge number ``i`` gets unit ``i`` at both ends."""
    red = sorted(g.red)
    grp = Z2R(len(red))
    unit = {e: grp.unit(i) for i, e in enumerate(red)}
    labels = tuple((unit.get(e, 0), unit.get(e, 0)) for e in range(g.m))
    plain = Graph(g.names, g.edges, g.vertex_weights, g.edge_weights)
    return LabeledGraph(plain, grp, labels)


def solve_sfvs(inst: SubsetFVSInstance, **kw) -> SolveOutcome:
    lg = subset_labels(inst.graph)
    out = solve_gfvs(GroupFVSInstance(lg, inst.k, inst.W, inst.deletion), **kw)
    if not out.yes:
        return out
    return SolveOutcome.found(out.cut, inst.weight_of, **out.stats)


solve_sfes = solve_sfvs
