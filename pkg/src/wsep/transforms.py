"""Answer-preserving problem transformations used as preprocessing.

Every transformation returns the new object together with the id mapping
needed to translate a witness back to the input's vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import INF, Digraph, Graph, fresh_name
from .instances import DSFESInstance, MulticutInstance


@dataclass(frozen=True)
class SplitMap:
    """``split_arc[v]`` is the arc ``v- -> v+``; ``arc_image[e]`` the image of arc ``e``."""

    split_arc: tuple[int, ...]
    arc_image: tuple[int, ...]

    def vertex_of(self, arc: int) -> int | None:
        return arc if arc < len(self.split_arc) else None


def vertex_split_directed(g: Digraph) -> tuple[Digraph, SplitMap]:
    """Replace every vertex ``v`` by an arc ``v- -> v+`` of weight w(v).

    Vertex ``v`` becomes ``2v`` (minus) and ``2v+1`` (plus); arc ``e = (u, v)``
    becomes ``(u+, v-)`` of infinite weight, carrying its red mark.
    """
    taken: set[str] = set()
    names = []
    for name in g.names:
        names.append(fresh_name(taken, f"{name}-"))
        names.append(fresh_name(taken, f"{name}+"))
    arcs = [(2 * v, 2 * v + 1) for v in range(g.n)]
    weights = [g.vertex_weight(v) for v in range(g.n)]
    red = set()
    for e, (u, v) in enumerate(g.edges):
        if e in g.red:
            red.add(len(arcs))
        arcs.append((2 * u + 1, 2 * v))
        weights.append(INF)
    split = Digraph(tuple(names), tuple(arcs), edge_weights=tuple(weights), red=frozenset(red))
    return split, SplitMap(tuple(range(g.n)), tuple(range(g.n, g.n + g.m)))


@dataclass(frozen=True)
class SubdivisionMap:
    """``vertex_of_edge[e]`` is the subdivision vertex placed on edge ``e``."""

    n_original: int
    vertex_of_edge: tuple[int, ...]

    def edge_of(self, v: int) -> int | None:
        return v - self.n_original if v >= self.n_original else None


def edge_subdivide_undirected(g: Graph) -> tuple[Graph, SubdivisionMap]:
    """Put a vertex ``x_e`` on every edge; it inherits the edge weight.

    Original vertices become undeletable. Edge ``e = uv`` becomes edges
    ``2e = u x_e`` and ``2e+1 = x_e v``; a red ``e`` marks ``2e`` red.
    """
    taken = set(g.names)
    names = list(g.names)
    weights = [INF] * g.n
    edges = []
    red = set()
    for e, (u, v) in enumerate(g.edges):
        x = len(names)
        names.append(fresh_name(taken, f"x_{g.names[u]}_{g.names[v]}@{e}"))
        weights.append(g.edge_weight(e))
        if e in g.red:
            red.add(len(edges))
        edges.append((u, x))
        edges.append((x, v))
    sub = Graph(tuple(names), tuple(edges), vertex_weights=tuple(weights), red=frozenset(red))
    return sub, SubdivisionMap(g.n, tuple(range(g.n, g.n + g.m)))


def isolate_terminals(inst: MulticutInstance) -> tuple[MulticutInstance, dict[int, int]]:
    """Attach a fresh undeletable pendant ``s'`` to every terminal ``s``.

    Pairs are rewritten onto the pendants, so the terminal set becomes an
    independent set of undeletable vertices. One pendant is shared by all
    pairs using the same terminal. Returns the new instance and the map
    pendant -> original terminal.
    """
    if inst.deletion != "vertex":
        raise ValueError("isolate_terminals expects a vertex-deletion instance")
    g = inst.graph
    taken = set(g.names)
    names = list(g.names)
    weights = list(g.vertex_weights)
    edges = list(g.edges)
    pendant: dict[int, int] = {}
    for pair in inst.pairs:
        for s in pair:
            if s not in pendant:
                p = len(names)
                names.append(fresh_name(taken, f"{g.names[s]}'"))
                weights.append(INF)
                edges.append((s, p))
                pendant[s] = p
    new_graph = Graph(tuple(names), tuple(edges), vertex_weights=tuple(weights))
    pairs = tuple((pendant[s], pendant[t]) for s, t in inst.pairs)
    iso = MulticutInstance(new_graph, pairs, inst.k, inst.W, "vertex")
    return iso, {p: s for s, p in pendant.items()}


def make_red_undeletable(inst: DSFESInstance) -> tuple[DSFESInstance, tuple[int, ...]]:
    """Subdivide every finite-weight red arc ``u -> v`` into ``u -> x_e -> v``.

    ``u -> x_e`` keeps the id of ``e``, stays red and gets weight inf;
    ``x_e -> v`` is plain, appended at the end, and carries w(e). Red arcs
    that are already undeletable are left alone, which makes the
    transformation idempotent. Returns the instance and, per new arc, the
    original arc it stands for.
    """
    if inst.deletion != "edge":
        raise ValueError("make_red_undeletable expects an edge-deletion instance")
    g = inst.graph
    taken = set(g.names)
    names = list(g.names)
    arcs = list(g.edges)
    weights = list(g.edge_weights)
    origin = list(range(g.m))
    for e in sorted(g.red):
        if weights[e] == INF:
            continue
        u, v = g.edges[e]
        x = len(names)
        names.append(fresh_name(taken, f"x_{g.names[u]}_{g.names[v]}@{e}"))
        arcs[e] = (u, x)
        arcs.append((x, v))
        weights.append(weights[e])
        weights[e] = INF
        origin.append(e)
    new_graph = Digraph(tuple(names), tuple(arcs), edge_weights=tuple(weights), red=g.red)
    return DSFESInstance(new_graph, inst.k, inst.W, "edge"), tuple(origin)
