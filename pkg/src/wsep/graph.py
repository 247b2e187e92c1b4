"""Weighted (multi)graphs and the connectivity primitives shared by all solvers.

Vertices and edges are dense integer ids; ``names`` keeps the user-facing
vocabulary. Weights are positive integers or :data:`INF` (undeletable).
"""

from __future__ import annotations

import math
from array import array
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping

from . import kernels

INF = math.inf


class InputError(ValueError):
    """Malformed instance or query."""


def is_finite(w) -> bool:
    return w != INF


def check_weight(w):
    if w == INF:
        return INF
    if isinstance(w, bool) or not isinstance(w, int) or w < 1:
        raise InputError(f"weight must be a positive integer or inf, got {w!r}")
    return w


def total_weight(weights: Iterable) -> int | float:
    return sum(weights, 0)


def fresh_name(taken: set[str], base: str) -> str:
    """Return ``base`` (or ``base#i``) not yet in ``taken``, and reserve it."""
    name, i = base, 1
    while name in taken:
        name = f"{base}#{i}"
        i += 1
    taken.add(name)
    return name


@dataclass(frozen=True, eq=False)
class ArcIndex:
    """CSR adjacency over arcs; undirected edges contribute both directions."""

    indptr: array
    heads: array
    arc_ids: array

    @classmethod
    def build(cls, n: int, arcs: Iterable[tuple[int, int]], both_ways: bool = False) -> "ArcIndex":
        out: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(arcs):
            out[u].append((v, i))
            if both_ways and u != v:
                out[v].append((u, i))
        indptr, heads, ids = array("i", [0]), array("i"), array("i")
        for lst in out:
            for v, i in lst:
                heads.append(v)
                ids.append(i)
            indptr.append(len(heads))
        return cls(indptr, heads, ids)

    def reach(self, source: int, arc_blocked=None, vertex_blocked=None) -> bytearray:
        return kernels.reach(self.indptr, self.heads, self.arc_ids, source,
                             arc_blocked, vertex_blocked)


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected multigraph with optional vertex/edge weights and red edges."""

    names: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    vertex_weights: tuple | None = None
    edge_weights: tuple | None = None
    red: frozenset[int] = field(default_factory=frozenset)

    directed = False

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise InputError("duplicate vertex name")
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge endpoint out of range: {(u, v)}")
        if self.vertex_weights is not None:
            if len(self.vertex_weights) != n:
                raise InputError("vertex weight count mismatch")
            object.__setattr__(self, "vertex_weights",
                               tuple(check_weight(w) for w in self.vertex_weights))
        if self.edge_weights is not None:
            if len(self.edge_weights) != len(self.edges):
                raise InputError("edge weight count mismatch")
            object.__setattr__(self, "edge_weights",
                               tuple(check_weight(w) for w in self.edge_weights))
        object.__setattr__(self, "red", frozenset(self.red))
        for e in self.red:
            if not 0 <= e < len(self.edges):
                raise InputError(f"red edge id out of range: {e}")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def name_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self.name_index[name]
        except KeyError:
            raise InputError(f"unknown vertex {name!r}") from None

    @cached_property
    def arc_index(self) -> ArcIndex:
        return ArcIndex.build(self.n, self.edges, both_ways=not self.directed)

    def adjacency(self) -> dict[int, set[int]]:
        """Simple adjacency: parallel edges merged, self-loops dropped."""
        adj: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            if u != v:
                adj[u].add(v)
                if not self.directed:
                    adj[v].add(u)
        return adj

    def vertex_weight(self, v: int):
        return self.vertex_weights[v] if self.vertex_weights is not None else INF

    def edge_weight(self, e: int):
        return self.edge_weights[e] if self.edge_weights is not None else INF


@dataclass(frozen=True, eq=False)
class Digraph(Graph):
    """Directed multigraph; ``edges`` are arcs ``(tail, head)``."""

    directed = True


def _mask(size: int, ids: Iterable[int] | None, what: str) -> bytearray | None:
    if ids is None:
        return None
    mask = bytearray(size)
    for i in ids:
        if not 0 <= i < size:
            raise InputError(f"unknown {what} id {i}")
        mask[i] = 1
    return mask


def reachable_from(g: Graph, source: int, deleted: Iterable[int] = (),
                   removed_vertices: Iterable[int] | None = None) -> frozenset[int]:
    """Vertices reachable from ``source`` avoiding ``deleted`` edge ids.

    For an undirected :class:`Graph` this is the connected component.
    """
    if not 0 <= source < g.n:
        raise InputError(f"unknown source vertex {source}")
    deleted = list(deleted)
    arc_mask = _mask(g.m, deleted, "edge") if deleted else None
    vmask = _mask(g.n, removed_vertices, "vertex")
    seen = g.arc_index.reach(source, arc_mask, vmask)
    return frozenset(i for i, b in enumerate(seen) if b)


def strong_components(g: Graph, deleted: Iterable[int] = ()) -> list[list[int]]:
    """Strongly connected components in topological order of the condensation.

    Iterative Tarjan; components come out in reverse topological order and
    are flipped before returning.
    """
    dead = set(deleted)
    out: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        if i not in dead:
            out[u].append(v)
    index = [-1] * g.n
    low = [0] * g.n
    on_stack = [False] * g.n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(g.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(out[v]):
                work[-1] = (v, i + 1)
                w = out[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    comps.reverse()
    return comps


def connected_components(adj: Mapping[Hashable, Iterable[Hashable]],
                         within: Iterable[Hashable] | None = None) -> list[list]:
    """Components of the subgraph induced by ``within`` (default: all keys).

    Output is canonical: each component sorted, components ordered by their
    smallest vertex.
    """
    alive = set(adj) if within is None else set(within)
    seen: set = set()
    comps = []
    for s in sorted(alive):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w in alive and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def _as_adjacency(g) -> Mapping[Hashable, Iterable[Hashable]]:
    return g.adjacency() if isinstance(g, Graph) else g


def _max_flow(cap: dict, source, sink, limit: int) -> int:
    """Edmonds-Karp on a dict-of-dicts residual network, stopping at ``limit``."""
    flow = 0
    while flow < limit:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            u = queue.popleft()
            for v, c in cap[u].items():
                if c > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if sink not in parent:
            break
        push = limit - flow
        v = sink
        while parent[v] is not None:
            push = min(push, cap[parent[v]][v])
            v = parent[v]
        v = sink
        while parent[v] is not None:
            u = parent[v]
            cap[u][v] -= push
            cap[v][u] = cap[v].get(u, 0) + push
            v = u
        flow += push
    return flow


def _split_network(adj, big: int, vertex_cap):
    """Vertex-split network: (v, 0) -> (v, 1) carries the vertex capacity."""
    cap: dict = {}
    for v in adj:
        cap.setdefault((v, 0), {})[(v, 1)] = vertex_cap(v)
        cap.setdefault((v, 1), {})
    for u in adj:
        for w in adj[u]:
            if u != w:
                cap[(u, 1)][(w, 0)] = big
    return cap


def max_disjoint_fan(g, hub, targets: Iterable) -> int:
    """Maximum number of hub-to-distinct-target paths sharing only the hub."""
    adj = _as_adjacency(g)
    targets = set(targets)
    if hub in targets:
        raise InputError("hub must not be a target")
    if hub not in adj:
        raise InputError(f"unknown hub {hub!r}")
    targets &= set(adj)
    if not targets:
        return 0
    big = len(adj) + 1
    cap = _split_network(adj, big, lambda v: big if v == hub else 1)
    sink = ("sink",)
    cap[sink] = {}
    for t in targets:
        cap[(t, 1)][sink] = 1
    return _max_flow(cap, (hub, 1), sink, len(targets))


def min_vertex_cut_size(g, side_a: Iterable, side_b: Iterable, threshold: int) -> int:
    """Minimum number of vertices outside both sides separating them.

    The result is capped at ``threshold + 1``, which also stands for "no
    vertex cut exists" (an edge joins the two sides).
    """
    adj = _as_adjacency(g)
    a, b = set(side_a), set(side_b)
    if a & b:
        raise InputError("sides must be disjoint")
    cap_value = threshold + 1
    if not a or not b:
        return 0
    if any(w in b for u in a for w in adj[u]):
        return cap_value
    big = len(adj) + 1
    cap = _split_network(adj, big, lambda v: big if v in a or v in b else 1)
    src, sink = ("src",), ("sink",)
    cap[src] = {(v, 0): big for v in a}
    cap[sink] = {}
    for v in b:
        cap[(v, 1)][sink] = big
    return min(_max_flow(cap, src, sink, cap_value), cap_value)
