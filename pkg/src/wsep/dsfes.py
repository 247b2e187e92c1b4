"""Weighted Directed Subset Feedback Edge/Vertex Set and Skew Multicut.

After red arcs are made undeletable, iterative compression supplies a vertex
set ``X`` with no red cycle in ``G - X``. We guess which vertices of ``X``
share a strong component of ``G - Z`` (and identify them) and a topological
order of the rest, then solve the layered GDPC instance built from
``2|X| + 1`` copies of ``G``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

from .gdpc import Bundle, GdpcInstance, exact_solve
from .graph import INF, Digraph, InputError, fresh_name, reachable_from
from .instances import DSFESInstance, SkewMulticutInstance, SolveOutcome
from .multicut import set_partitions
from .transforms import make_red_undeletable, vertex_split_directed


def red_cycle_free(g: Digraph, deleted=(), absent=()) -> bool:
    """No surviving red arc ``(u, v)`` has a ``v -> u`` path."""
    deleted, absent = set(deleted), set(absent)
    for e in sorted(g.red):
        u, v = g.edges[e]
        if e in deleted or u in absent or v in absent:
            continue
        if u in reachable_from(g, v, deleted=deleted, removed_vertices=absent or None):
            return False
    return True


def ordered_partitions(X: list[int]) -> Iterator[list[list[int]]]:
    """Partitions in restricted-growth order, each followed by every block order."""
    for blocks in set_partitions(sorted(X)):
        for perm in itertools.permutations(range(len(blocks))):
            yield [blocks[i] for i in perm]


@dataclass(frozen=True)
class LayeredReduction:
    instance: GdpcInstance
    bundle_arc: tuple[int, ...]
    layers: int


def build_layered_gdpc(g: Digraph, order: list[list[int]], k: int, W,
                       present: set[int] | None = None) -> LayeredReduction:
    """GDPC instance for a guessed ordered partition of ``X``.

    ``order[a]`` is the block that becomes ``x_{a+1}``; its members are
    identified. Only vertices in ``present`` (default all) take part. Red
    arcs, infinite arcs and arcs parallel to one of them are crisp or
    dropped; every other arc gets a bundle holding its ``2|X| + 1`` copies.
    """
    n = g.n
    present = set(range(n)) if present is None else set(present)
    rep = {v: v for v in present}
    for block in order:
        for v in block:
            rep[v] = block[0]
    xs = [block[0] for block in order]
    L = 2 * len(xs) + 1
    verts = sorted({rep[v] for v in present})
    taken: set[str] = set()
    names: list[str] = []
    node: dict[tuple[int, int], int] = {}
    for a in range(1, L + 1):
        for v in verts:
            node[(v, a)] = len(names)
            names.append(fresh_name(taken, f"{g.names[v]}^{a}"))
    s = len(names)
    names.append(fresh_name(taken, "s"))
    t = len(names)
    names.append(fresh_name(taken, "t"))

    live = [e for e, (u, v) in enumerate(g.edges) if u in present and v in present]
    image = {e: (rep[g.edges[e][0]], rep[g.edges[e][1]]) for e in live}
    crisp_ends = {image[e] for e in live if e in g.red or g.edge_weight(e) == INF}
    arcs: list[tuple[int, int]] = []
    bundles: list[Bundle] = []
    owner: list[int] = []
    for e in live:
        u, v = image[e]
        copies = [(node[(u, a)], node[(v, a)]) for a in range(1, L + 1)]
        if e in g.red or g.edge_weight(e) == INF:
            arcs += copies
        elif (u, v) not in crisp_ends:
            first = len(arcs)
            arcs += copies
            bundles.append(Bundle(g.edge_weight(e), tuple(range(first, first + L))))
            owner.append(e)
    for v in verts:
        for a in range(1, L + 1):
            for b in range(a + 1, L + 1):
                arcs.append((node[(v, b)], node[(v, a)]))
    for e in sorted(g.red):
        if e in image:
            u, v = image[e]
            for a in range(1, len(xs) + 1):
                arcs.append((node[(u, 2 * a)], node[(v, 2 * a + 1)]))
    for a, x in enumerate(xs, start=1):
        for b in range(1, L + 1):
            if 2 * a >= b:
                arcs.append((s, node[(x, b)]))
            else:
                arcs.append((node[(x, b)], t))
    inst = GdpcInstance(tuple(names), s, t, tuple(arcs), (), tuple(bundles), k, W)
    return LayeredReduction(inst, tuple(owner), L)


def _compress(g: Digraph, present: set[int], Z: list[int], v_new: int, k: int, W,
              gdpc_solver: Callable, on_gdpc: Callable | None, stats: dict) -> list[int] | None:
    X = sorted({g.edges[e][0] for e in Z} | {v_new})
    absent = set(range(g.n)) - present
    for order in ordered_partitions(X):
        stats["guesses"] += 1
        red = build_layered_gdpc(g, order, k, W, present)
        if on_gdpc is not None:
            on_gdpc(red.instance, red)
        out = gdpc_solver(red.instance)
        if not out.yes:
            continue
        found = sorted(red.bundle_arc[b] for b in out.violated)
        assert red_cycle_free(g, found, absent), "layered witness leaves a red cycle"
        return found
    return None


def solve_dsfes(inst: DSFESInstance, *, gdpc_solver: Callable = exact_solve,
                on_gdpc: Callable | None = None) -> SolveOutcome:
    """Edge deletion; vertex-deletion instances are routed to :func:`solve_dsfvs`."""
    if inst.deletion == "vertex":
        return solve_dsfvs(inst, gdpc_solver=gdpc_solver, on_gdpc=on_gdpc)
    pre, origin = make_red_undeletable(inst)
    g = pre.graph
    if any(g.edge_weight(e) != INF for e in g.red):
        raise AssertionError("red arc with finite weight after preprocessing")
    stats = {"compressions": 0, "guesses": 0}
    Z: list[int] = []
    present: set[int] = set()
    for v in range(g.n):
        present.add(v)
        if red_cycle_free(g, Z, set(range(g.n)) - present):
            continue
        stats["compressions"] += 1
        found = _compress(g, present, Z, v, inst.k, inst.W, gdpc_solver, on_gdpc, stats)
        if found is None:
            return SolveOutcome.no(**stats)
        Z = found
    return SolveOutcome.found([origin[e] for e in Z], inst.weight_of, **stats)


def solve_dsfvs(inst: DSFESInstance, *, gdpc_solver: Callable = exact_solve,
                on_gdpc: Callable | None = None) -> SolveOutcome:
    if inst.deletion != "vertex":
        raise InputError("solve_dsfvs expects a vertex-deletion instance")
    split, smap = vertex_split_directed(inst.graph)
    out = solve_dsfes(DSFESInstance(split, inst.k, inst.W, "edge"),
                      gdpc_solver=gdpc_solver, on_gdpc=on_gdpc)
    if not out.yes:
        return out
    return SolveOutcome.found([smap.vertex_of(e) for e in out.cut], inst.weight_of, **out.stats)


def skew_to_dsfes(inst: SkewMulticutInstance) -> DSFESInstance:
    """Add a red arc ``(t_j, s_i)`` for every ``i <= j``.

    Edge deletion: the new arcs weigh ``W + 1`` so the budget can never pay
    for one. Vertex deletion: their weight is irrelevant.
    """
    g = inst.graph
    extra = [(t, s) for s, t in inst.skew_pairs()]
    arcs = g.edges + tuple(extra)
    red = set(range(g.m, g.m + len(extra)))
    if inst.deletion == "edge":
        heavy = INF if inst.W == INF else inst.W + 1
        weights = g.edge_weights + (heavy,) * len(extra)
        new = Digraph(g.names, arcs, g.vertex_weights, weights, frozenset(red))
    else:
        weights = None if g.edge_weights is None else g.edge_weights + (INF,) * len(extra)
        new = Digraph(g.names, arcs, g.vertex_weights, weights, frozenset(red))
    return DSFESInstance(new, inst.k, inst.W, inst.deletion)


def solve_skew_multicut(inst: SkewMulticutInstance, **kw) -> SolveOutcome:
    out = solve_dsfes(skew_to_dsfes(inst), **kw)
    if not out.yes:
        return out
    return SolveOutcome.found(out.cut, inst.weight_of, **out.stats)
