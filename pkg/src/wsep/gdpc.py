"""Generalized Digraph Pair Cut: instances, cut semantics, structure checks and
an exact bounded-search solver.

A cut ``Z`` is a set of arc ids drawn from bundles that leaves no ``s``-``t``
path. It violates its own arcs and every clause whose two endpoints stay
reachable from ``s``; a bundle is violated when any member is.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .graph import ArcIndex, InputError


@dataclass(frozen=True)
class Bundle:
    weight: int
    arcs: tuple[int, ...] = ()
    clauses: tuple[int, ...] = ()


@dataclass(frozen=True, eq=False)
class GdpcInstance:
    names: tuple[str, ...]
    s: int
    t: int
    arcs: tuple[tuple[int, int], ...]
    clauses: tuple[tuple[int, int], ...]
    bundles: tuple[Bundle, ...]
    k: int
    W: int

    problem = "gdpc"

    def __post_init__(self):
        n = len(self.names)
        if not (0 <= self.s < n and 0 <= self.t < n) or self.s == self.t:
            raise InputError("s and t must be distinct vertices")
        for u, v in self.arcs + self.clauses:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"endpoint out of range in {(u, v)}")
        seen_arcs: set[int] = set()
        seen_clauses: set[int] = set()
        for i, b in enumerate(self.bundles):
            if isinstance(b.weight, bool) or not isinstance(b.weight, int) or b.weight < 1:
                raise InputError(f"bundle {i} needs a positive integer weight")
            for a in b.arcs:
                if not 0 <= a < len(self.arcs):
                    raise InputError(f"bundle {i} references unknown arc {a}")
                if a in seen_arcs:
                    raise InputError(f"arc {a} lies in two bundles (bundles must be pairwise disjoint)")
                seen_arcs.add(a)
            for c in b.clauses:
                if not 0 <= c < len(self.clauses):
                    raise InputError(f"bundle {i} references unknown clause {c}")
                if c in seen_clauses:
                    raise InputError(f"clause {c} lies in two bundles (bundles must be pairwise disjoint)")
                seen_clauses.add(c)
            ends = [self.arcs[a] for a in b.arcs]
            if len(set(ends)) != len(ends):
                raise InputError(f"bundle {i} contains two copies of one arc")
            pairs = [frozenset(self.clauses[c]) for c in b.clauses]
            if len(set(pairs)) != len(pairs):
                raise InputError(f"bundle {i} contains two copies of one clause")

    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def arc_bundle(self) -> dict[int, int]:
        return {a: i for i, b in enumerate(self.bundles) for a in b.arcs}

    @cached_property
    def clause_bundle(self) -> dict[int, int]:
        return {c: i for i, b in enumerate(self.bundles) for c in b.clauses}

    @cached_property
    def arc_index(self) -> ArcIndex:
        return ArcIndex.build(self.n, self.arcs)

    def crisp(self, a: int) -> bool:
        return a not in self.arc_bundle

    @cached_property
    def deletable(self) -> frozenset[int]:
        """Soft arcs without a crisp parallel copy."""
        crisp_ends = {self.arcs[a] for a in range(len(self.arcs)) if self.crisp(a)}
        return frozenset(a for a in self.arc_bundle if self.arcs[a] not in crisp_ends)


@dataclass(frozen=True)
class CutEvaluation:
    cut: frozenset[int]
    reach: frozenset[int]
    violated_bundles: frozenset[int]
    violated_clauses: frozenset[int]
    unbundled_violations: frozenset[int]

    def weight(self, inst: GdpcInstance) -> int:
        return sum(inst.bundles[b].weight for b in self.violated_bundles)


def evaluate_cut(inst: GdpcInstance, Z: Iterable[int]) -> CutEvaluation | None:
    """Violation accounting for ``Z``, or ``None`` when ``Z`` is not a cut."""
    Z = frozenset(Z)
    for a in Z:
        if not 0 <= a < len(inst.arcs):
            raise InputError(f"unknown arc id {a}")
    if any(a not in inst.arc_bundle for a in Z):
        return None
    mask = bytearray(len(inst.arcs))
    for a in Z:
        mask[a] = 1
    seen = inst.arc_index.reach(inst.s, mask)
    if seen[inst.t]:
        return None
    clauses = frozenset(c for c, (u, v) in enumerate(inst.clauses) if seen[u] and seen[v])
    bundles = {inst.arc_bundle[a] for a in Z}
    bundles.update(inst.clause_bundle[c] for c in clauses if c in inst.clause_bundle)
    unbundled = frozenset(c for c in clauses if c not in inst.clause_bundle)
    reach = frozenset(i for i, b in enumerate(seen) if b)
    return CutEvaluation(Z, reach, frozenset(bundles), clauses, unbundled)


def is_solution(inst: GdpcInstance, Z: Iterable[int]) -> bool:
    ev = evaluate_cut(inst, Z)
    return (ev is not None and not ev.unbundled_violations
            and len(ev.violated_bundles) <= inst.k and ev.weight(inst) <= inst.W)


@dataclass(frozen=True)
class GdpcOutcome:
    yes: bool
    cut: frozenset[int] = frozenset()
    violated: frozenset[int] = frozenset()
    stats: dict = field(default_factory=dict, compare=False, repr=False)


def exact_solve(inst: GdpcInstance) -> GdpcOutcome:
    """Deterministic exact search over bundle sets.

    Candidate sets ``S`` are scanned by (size, weight, ids); each is tried
    with ``Z`` = every arc of ``S``. Saturating a solution's violated bundles
    never breaks it, so this is complete.
    """
    order = range(len(inst.bundles))
    tried = 0
    for size in range(inst.k + 1):
        layer = [S for S in itertools.combinations(order, size)
                 if sum(inst.bundles[i].weight for i in S) <= inst.W]
        layer.sort(key=lambda S: (sum(inst.bundles[i].weight for i in S), S))
        for S in layer:
            tried += 1
            Z = [a for i in S for a in inst.bundles[i].arcs]
            ev = evaluate_cut(inst, Z)
            if ev is None or ev.unbundled_violations:
                continue
            if len(ev.violated_bundles) <= inst.k and ev.weight(inst) <= inst.W:
                return GdpcOutcome(True, ev.cut, ev.violated_bundles, {"candidates": tried})
    return GdpcOutcome(False, stats={"candidates": tried})


def bundle_graph(inst: GdpcInstance, b: int) -> dict[int, set[int]]:
    """``G_B``: vertices of the bundle minus s, t; an edge per arc or clause."""
    bundle = inst.bundles[b]
    ends = [inst.arcs[a] for a in bundle.arcs] + [inst.clauses[c] for c in bundle.clauses]
    skip = {inst.s, inst.t}
    adj: dict[int, set[int]] = {}
    for u, v in ends:
        for x in (u, v):
            if x not in skip:
                adj.setdefault(x, set())
        if u != v and u not in skip and v not in skip:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def check_2k2_free(inst: GdpcInstance) -> list[bool]:
    """Per bundle: ``G_B`` has no induced pair of independent edges."""
    out = []
    for b in range(len(inst.bundles)):
        adj = bundle_graph(inst, b)
        ok = True
        for w, x, y, z in itertools.combinations(sorted(adj), 4):
            for (p, q), (r, s) in (((w, x), (y, z)), ((w, y), (x, z)), ((w, z), (x, y))):
                if (q in adj[p] and s in adj[r] and r not in adj[p] and s not in adj[p]
                        and r not in adj[q] and s not in adj[q]):
                    ok = False
                    break
            if not ok:
                break
        out.append(ok)
    return out


def bundle_vertices(inst: GdpcInstance, b: int) -> set[int]:
    bundle = inst.bundles[b]
    vs: set[int] = set()
    for a in bundle.arcs:
        vs.update(inst.arcs[a])
    for c in bundle.clauses:
        vs.update(inst.clauses[c])
    return vs


def check_b_bounded(inst: GdpcInstance, b: int) -> bool:
    return all(len(bundle_vertices(inst, i)) <= b for i in range(len(inst.bundles)))


def deletable_counts(inst: GdpcInstance) -> list[int]:
    return [sum(1 for a in bundle.arcs if a in inst.deletable) for bundle in inst.bundles]


def check_pairwise_linked(inst: GdpcInstance, directed: bool = False) -> bool:
    """Every two deletable arcs of a bundle (away from s and t) are linked
    through that bundle's arcs and crisp arcs.

    Undirected connectivity by default; ``directed=True`` asks for a directed
    path from an endpoint of one arc to an endpoint of the other, in either
    order.
    """
    crisp = [a for a in range(len(inst.arcs)) if inst.crisp(a)]
    for bundle in inst.bundles:
        cands = [a for a in bundle.arcs if a in inst.deletable
                 and inst.s not in inst.arcs[a] and inst.t not in inst.arcs[a]]
        if len(cands) < 2:
            continue
        allowed = [inst.arcs[a] for a in list(bundle.arcs) + crisp]
        index = ArcIndex.build(inst.n, allowed, both_ways=not directed)
        reach = {}
        for a in cands:
            for x in inst.arcs[a]:
                if x not in reach:
                    reach[x] = index.reach(x)
        for a1, a2 in itertools.combinations(cands, 2):
            e1, e2 = inst.arcs[a1], inst.arcs[a2]
            linked = any(reach[x][y] for x in e1 for y in e2) or \
                any(reach[y][x] for x in e1 for y in e2)
            if not linked:
                return False
    return True
