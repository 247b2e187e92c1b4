"""Problem instances and solver outcomes.

Each instance class carries its problem tag in ``problem``; together they
form the tagged union consumed by :mod:`wsep.io` and :mod:`wsep.cli`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .graph import INF, Digraph, Graph, InputError, total_weight


@dataclass(frozen=True)
class SolveOutcome:
    """YES with a witness cutset (vertex or edge ids), or NO."""

    yes: bool
    cut: tuple[int, ...] = ()
    weight: Any = 0
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def cardinality(self) -> int:
        return len(self.cut)

    @classmethod
    def no(cls, **stats) -> "SolveOutcome":
        return cls(False, stats=stats)

    @classmethod
    def found(cls, cut, weight_of, **stats) -> "SolveOutcome":
        cut = tuple(sorted(set(cut)))
        return cls(True, cut, total_weight(weight_of(x) for x in cut), stats=stats)


def _check_budget(k, W):
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise InputError(f"k must be a non-negative integer, got {k!r}")
    if W != INF and (isinstance(W, bool) or not isinstance(W, int) or W < 0):
        raise InputError(f"W must be a non-negative integer, got {W!r}")


def _deletion_weights(graph: Graph, deletion: str):
    if deletion == "vertex":
        if graph.vertex_weights is None:
            raise InputError("vertex-deletion instance needs vertex weights")
    elif deletion == "edge":
        if graph.edge_weights is None:
            raise InputError("edge-deletion instance needs edge weights")
    else:
        raise InputError(f"unknown deletion mode {deletion!r}")


class _Weighted:
    graph: Graph
    deletion: str

    def weight_of(self, x: int):
        if self.deletion == "vertex":
            return self.graph.vertex_weight(x)
        return self.graph.edge_weight(x)

    def cut_names(self, cut) -> list[str]:
        g = self.graph
        if self.deletion == "vertex":
            return [g.names[v] for v in cut]
        return [edge_label(g, e) for e in cut]


def edge_label(g: Graph, e: int) -> str:
    u, v = g.edges[e]
    sep = "->" if g.directed else "-"
    return f"{g.names[u]}{sep}{g.names[v]}#{e}"


@dataclass(frozen=True, eq=False)
class MulticutInstance(_Weighted):
    graph: Graph
    pairs: tuple[tuple[int, int], ...]
    k: int
    W: Any
    deletion: str = "vertex"

    def __post_init__(self):
        if self.graph.directed:
            raise InputError("multicut is defined on undirected graphs")
        _check_budget(self.k, self.W)
        _deletion_weights(self.graph, self.deletion)
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        for s, t in self.pairs:
            if not (0 <= s < self.graph.n and 0 <= t < self.graph.n):
                raise InputError(f"terminal out of range in pair {(s, t)}")
            if s == t:
                raise InputError(f"terminal pair with equal endpoints: {self.graph.names[s]}")

    @property
    def problem(self) -> str:
        return "multicut" if self.deletion == "vertex" else "multicut-edge"


@dataclass(frozen=True, eq=False)
class MultiwayCutInstance(_Weighted):
    graph: Graph
    terminals: tuple[int, ...]
    k: int
    W: Any
    deletion: str = "vertex"

    def __post_init__(self):
        if self.graph.directed:
            raise InputError("multiway cut is defined on undirected graphs")
        _check_budget(self.k, self.W)
        _deletion_weights(self.graph, self.deletion)
        object.__setattr__(self, "terminals", tuple(self.terminals))
        if len(set(self.terminals)) != len(self.terminals):
            raise InputError("duplicate terminal")
        for v in self.terminals:
            if not 0 <= v < self.graph.n:
                raise InputError(f"terminal out of range: {v}")

    @property
    def problem(self) -> str:
        return "mwc" if self.deletion == "vertex" else "mwc-edge"

    def as_multicut(self) -> MulticutInstance:
        ts = self.terminals
        pairs = tuple((ts[i], ts[j]) for i in range(len(ts)) for j in range(i + 1, len(ts)))
        return MulticutInstance(self.graph, pairs, self.k, self.W, self.deletion)


@dataclass(frozen=True, eq=False)
class GroupFVSInstance(_Weighted):
    """Group feedback vertex/edge set; ``labeled`` is a :class:`LabeledGraph`."""

    labeled: Any
    k: int
    W: Any
    deletion: str = "vertex"

    def __post_init__(self):
        _check_budget(self.k, self.W)
        _deletion_weights(self.labeled.base, self.deletion)

    @property
    def graph(self) -> Graph:
        return self.labeled.base

    @property
    def problem(self) -> str:
        return "gfvs" if self.deletion == "vertex" else "gfes"


@dataclass(frozen=True, eq=False)
class SubsetFVSInstance(_Weighted):
    """Undirected subset feedback vertex/edge set; red edges in ``graph.red``."""

    graph: Graph
    k: int
    W: Any
    deletion: str = "vertex"

    def __post_init__(self):
        if self.graph.directed:
            raise InputError("subset FVS/FES here is undirected")
        _check_budget(self.k, self.W)
        _deletion_weights(self.graph, self.deletion)
        for u, v in self.graph.edges:
            if u == v:
                raise InputError("self-loops are not supported in undirected instances")

    @property
    def problem(self) -> str:
        return "sfvs" if self.deletion == "vertex" else "sfes"


@dataclass(frozen=True, eq=False)
class DSFESInstance(_Weighted):
    """Directed subset feedback edge (or vertex) set; red arcs in ``graph.red``."""

    graph: Digraph
    k: int
    W: Any
    deletion: str = "edge"

    def __post_init__(self):
        if not self.graph.directed:
            raise InputError("directed subset feedback set needs a digraph")
        _check_budget(self.k, self.W)
        _deletion_weights(self.graph, self.deletion)

    @property
    def problem(self) -> str:
        return "dsfes" if self.deletion == "edge" else "dsfvs"


@dataclass(frozen=True, eq=False)
class SkewMulticutInstance(_Weighted):
    graph: Digraph
    sources: tuple[int, ...]
    sinks: tuple[int, ...]
    k: int
    W: Any
    deletion: str = "edge"

    def __post_init__(self):
        if not self.graph.directed:
            raise InputError("skew multicut needs a digraph")
        _check_budget(self.k, self.W)
        _deletion_weights(self.graph, self.deletion)
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "sinks", tuple(self.sinks))
        if len(self.sources) != len(self.sinks):
            raise InputError("skew multicut needs equally many sources and sinks")
        for v in self.sources + self.sinks:
            if not 0 <= v < self.graph.n:
                raise InputError(f"terminal out of range: {v}")

    @property
    def problem(self) -> str:
        return "skew" if self.deletion == "edge" else "skew-vertex"

    def skew_pairs(self) -> list[tuple[int, int]]:
        ell = len(self.sources)
        return [(self.sources[i], self.sinks[j]) for i in range(ell) for j in range(i, ell)]


@dataclass(frozen=True, eq=False)
class SymMulticutInstance(_Weighted):
    """Directed symmetric multicut; ``multiplicity`` annotates batched pairs."""

    graph: Digraph
    pairs: tuple[tuple[int, int], ...]
    k: int
    W: Any
    multiplicity: tuple[int, ...] | None = None
    deletion = "edge"

    def __post_init__(self):
        if not self.graph.directed:
            raise InputError("symmetric multicut needs a digraph")
        _check_budget(self.k, self.W)
        _deletion_weights(self.graph, "edge")
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        for u, v in self.pairs:
            if u == v:
                raise InputError("symmetric multicut pairs need distinct endpoints")
            if not (0 <= u < self.graph.n and 0 <= v < self.graph.n):
                raise InputError(f"pair out of range: {(u, v)}")
        if self.multiplicity is not None and len(self.multiplicity) != len(self.pairs):
            raise InputError("multiplicity annotation length mismatch")

    @property
    def problem(self) -> str:
        return "symcut"

    @property
    def unweighted(self) -> bool:
        return all(w == 1 for w in self.graph.edge_weights) and self.W >= self.k


RELATIONS = ("eq", "neq", "lt", "leq")


@dataclass(frozen=True)
class Constraint:
    rel: str
    x: str
    y: str
    mult: int = 1


@dataclass(frozen=True, eq=False)
class PointAlgebraInstance:
    """Max SAT over the point algebra {=, !=, <, <=}; ``mult`` counts copies."""

    variables: tuple[str, ...]
    constraints: tuple[Constraint, ...]
    k: int

    def __post_init__(self):
        _check_budget(self.k, 0)
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if len(set(self.variables)) != len(self.variables):
            raise InputError("duplicate variable")
        known = set(self.variables)
        for c in self.constraints:
            if c.rel not in RELATIONS:
                raise InputError(f"unknown relation {c.rel!r}")
            if c.x not in known or c.y not in known:
                raise InputError(f"undeclared variable in {c.rel} {c.x} {c.y}")
            if c.mult < 1:
                raise InputError("constraint multiplicity must be positive")

    @property
    def problem(self) -> str:
        return "maxsat-pa"

    def weight_of(self, i: int) -> int:
        return self.constraints[i].mult
