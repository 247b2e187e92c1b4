"""Brute-force reference solvers.

Each oracle scans deletion sets by size, then lexicographically by id, and
applies the problem's feasibility predicate literally. No pruning beyond the
budgets. Only graph primitives and the labeling routine are shared with the
pipelines.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator

from .graph import INF, Graph, InputError, reachable_from, total_weight
from .groups import LabeledGraph, consistent_labeling
from .instances import (DSFESInstance, GroupFVSInstance, MulticutInstance, MultiwayCutInstance,
                        PointAlgebraInstance, SkewMulticutInstance, SolveOutcome,
                        SubsetFVSInstance, SymMulticutInstance)

DEFAULT_CAP = 12


class OracleRefused(InputError):
    """Instance too large for exhaustive enumeration."""


def _guard(n: int, cap: int) -> None:
    if n > cap:
        raise OracleRefused(f"oracle refuses n={n} (cap {cap}); raise --max-n to force")


def deletion_sets(count: int, weight_of: Callable, k: int, W) -> Iterator[tuple[int, ...]]:
    """Subsets of finite-weight ids with at most ``k`` members and weight at most ``W``."""
    ids = [i for i in range(count) if weight_of(i) != INF]
    for size in range(min(k, len(ids)) + 1):
        for Z in itertools.combinations(ids, size):
            if total_weight(weight_of(i) for i in Z) <= W:
                yield Z


def _search(inst, count: int, feasible: Callable[[set], bool]) -> SolveOutcome:
    tried = 0
    for Z in deletion_sets(count, inst.weight_of, inst.k, inst.W):
        tried += 1
        if feasible(set(Z)):
            return SolveOutcome.found(Z, inst.weight_of, candidates=tried)
    return SolveOutcome.no(candidates=tried)


def _objects(inst) -> int:
    return inst.graph.n if inst.deletion == "vertex" else inst.graph.m


def _reach(g: Graph, src: int, Z: set, deletion: str) -> frozenset[int]:
    if deletion == "vertex":
        return reachable_from(g, src, removed_vertices=Z)
    return reachable_from(g, src, deleted=Z)


def _separated(g: Graph, s: int, t: int, Z: set, deletion: str) -> bool:
    if deletion == "vertex" and (s in Z or t in Z):
        return True
    return t not in _reach(g, s, Z, deletion)


def oracle_multicut(inst: MulticutInstance, cap: int = DEFAULT_CAP) -> SolveOutcome:
    _guard(inst.graph.n, cap)
    g, mode = inst.graph, inst.deletion
    return _search(inst, _objects(inst),
                   lambda Z: all(_separated(g, s, t, Z, mode) for s, t in inst.pairs))


def oracle_multiway_cut(inst: MultiwayCutInstance, cap: int = DEFAULT_CAP) -> SolveOutcome:
    _guard(inst.graph.n, cap)
    g, mode = inst.graph, inst.deletion

    def feasible(Z):
        alive = [v for v in inst.terminals if not (mode == "vertex" and v in Z)]
        return all(b not in _reach(g, a, Z, mode) for a, b in itertools.combinations(alive, 2))

    return _search(inst, _objects(inst), feasible)


def _without_edges(lg: LabeledGraph, Z: set) -> LabeledGraph:
    keep = [e for e in range(lg.base.m) if e not in Z]
    base = Graph(lg.base.names, tuple(lg.base.edges[e] for e in keep))
    return LabeledGraph(base, lg.group, tuple(lg.labels[e] for e in keep))


def oracle_gfvs(inst: GroupFVSInstance, cap: int = DEFAULT_CAP) -> SolveOutcome:
    _guard(inst.graph.n, cap)
    lg = inst.labeled
    if inst.deletion == "vertex":
        return _search(inst, lg.base.n, lambda Z: consistent_labeling(lg, removed=Z).ok)
    return _search(inst, lg.base.m, lambda Z: consistent_labeling(_without_edges(lg, Z)).ok)


def oracle_sfvs(inst: SubsetFVSInstance, cap: int = DEFAULT_CAP) -> SolveOutcome:
    """No cycle through a red edge: each surviving red edge is a bridge of G - Z."""
    _guard(inst.graph.n, cap)
    g, vertex = inst.graph, inst.deletion == "vertex"

    def feasible(Z):
        for e in g.red:
            u, v = g.edges[e]
            if (u in Z or v in Z) if vertex else e in Z:
                continue
            dead_edges = {e} if vertex else Z | {e}
            if v in reachable_from(g, u, deleted=dead_edges, removed_vertices=Z if vertex else None):
                return False
        return True

    return _search(inst, _objects(inst), feasible)


def oracle_dsfes(inst: DSFESInstance, cap: int = DEFAULT_CAP) -> SolveOutcome:
    """For every surviving red arc (u, v) there is no v -> u path in G - Z."""
    _guard(inst.graph.n, cap)
    g, vertex = inst.graph, inst.deletion == "vertex"

    def feasible(Z):
        for e in g.red:
            u, v = g.edges[e]
            if (u in Z or v in Z) if vertex else e in Z:
                continue
            if u in _reach(g, v, Z, inst.deletion):
                return False
        return True

    return _search(inst, _objects(inst), feasible)


def oracle_dsfvs(inst: DSFESInstance, cap: int = DEFAULT_CAP) -> SolveOutcome:
    if inst.deletion != "vertex":
        raise InputError("oracle_dsfvs expects a vertex-deletion instance")
    return oracle_dsfes(inst, cap)


def oracle_skew(inst: SkewMulticutInstance, cap: int = DEFAULT_CAP) -> SolveOutcome:
    _guard(inst.graph.n, cap)
    g, mode = inst.graph, inst.deletion
    return _search(inst, _objects(inst),
                   lambda Z: all(_separated(g, s, t, Z, mode) for s, t in inst.skew_pairs()))


def oracle_symcut(inst: SymMulticutInstance, cap: int = DEFAULT_CAP) -> SolveOutcome:
    """Per pair: ``Z`` cuts every u -> v path or every v -> u path."""
    _guard(inst.graph.n, cap)
    g = inst.graph

    def feasible(Z):
        return all(v not in reachable_from(g, u, deleted=Z) or u not in reachable_from(g, v, deleted=Z)
                   for u, v in inst.pairs)

    return _search(inst, g.m, feasible)


def oracle_gdpc_naive(inst, cap: int = 20) -> SolveOutcome:
    """Every subset of bundle arcs touching at most ``k`` bundles, checked from
    the definition with a private search. Returns arc ids as the cut."""
    from .gdpc import GdpcInstance
    assert isinstance(inst, GdpcInstance)
    _guard(sum(len(b.arcs) for b in inst.bundles), cap)
    owner = {a: i for i, b in enumerate(inst.bundles) for a in b.arcs}
    cowner = {c: i for i, b in enumerate(inst.bundles) for c in b.clauses}
    tried = 0
    for Z in _arc_sets_within_k_bundles(inst):
        tried += 1
        seen = {inst.s}
        todo = [inst.s]
        while todo:
            u = todo.pop()
            for a, (x, y) in enumerate(inst.arcs):
                if x == u and a not in Z and y not in seen:
                    seen.add(y)
                    todo.append(y)
        if inst.t in seen:
            continue
        hit = [c for c, (x, y) in enumerate(inst.clauses) if x in seen and y in seen]
        if any(c not in cowner for c in hit):
            continue
        bad = {owner[a] for a in Z} | {cowner[c] for c in hit}
        weight = sum(inst.bundles[b].weight for b in bad)
        if len(bad) <= inst.k and weight <= inst.W:
            return SolveOutcome(True, tuple(sorted(Z)), weight,
                                stats={"candidates": tried, "violated": tuple(sorted(bad))})
    return SolveOutcome.no(candidates=tried)


def _arc_sets_within_k_bundles(inst) -> Iterator[set]:
    # a set touching more than k bundles violates more than k of them
    for r in range(inst.k + 1):
        for chosen in itertools.combinations(range(len(inst.bundles)), r):
            parts = [[c for size in range(1, len(inst.bundles[b].arcs) + 1)
                      for c in itertools.combinations(inst.bundles[b].arcs, size)]
                     for b in chosen]
            for pick in itertools.product(*parts):
                yield {a for part in pick for a in part}


def weak_orders(items: list) -> Iterator[dict]:
    """Every map from ``items`` onto levels ``0..r-1`` (ordered set partitions)."""
    n = len(items)
    for r in range(1, n + 1):
        for levels in itertools.product(range(r), repeat=n):
            if len(set(levels)) == r:
                yield dict(zip(items, levels))
    if n == 0:
        yield {}


_HOLDS = {
    "eq": lambda a, b: a == b,
    "neq": lambda a, b: a != b,
    "lt": lambda a, b: a < b,
    "leq": lambda a, b: a <= b,
}


def oracle_maxsat_pa(inst: PointAlgebraInstance, cap: int = 6) -> SolveOutcome:
    """Minimum violated multiplicity over all weak orders of the variables.

    The cut lists the indices of violated constraints; weight is their total
    multiplicity, and the answer is YES iff that is at most ``k``.
    """
    _guard(len(inst.variables), cap)
    best = None
    for alpha in weak_orders(list(inst.variables)):
        bad = tuple(i for i, c in enumerate(inst.constraints)
                    if not _HOLDS[c.rel](alpha[c.x], alpha[c.y]))
        cost = sum(inst.constraints[i].mult for i in bad)
        if best is None or (cost, bad) < best:
            best = (cost, bad)
    cost, bad = best
    if cost <= inst.k:
        return SolveOutcome(True, bad, cost, stats={"optimum": cost})
    return SolveOutcome.no(optimum=cost)

