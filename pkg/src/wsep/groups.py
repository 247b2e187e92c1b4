"""Group oracles and group-labeled graphs.

A group is only ever touched through ``op``, ``inv``, ``identity``, ``eq`` and
``canonical``; nothing assumes commutativity. Walk sums are left-to-right
products.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Sequence

from .graph import Graph, InputError


class GroupOracle:
    """Abstract group. Subclasses define the five oracle operations."""

    spec: str = ""

    def op(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def identity(self):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return self.canonical(a) == self.canonical(b)

    def canonical(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def is_identity(self, a) -> bool:
        return self.eq(a, self.identity())

    def sub(self, a, b):
        """``a - b`` in additive notation, i.e. ``a + inv(b)``."""
        return self.op(a, self.inv(b))

    def total(self, elems: Iterable):
        acc = self.identity()
        for g in elems:
            acc = self.op(acc, g)
        return acc


class ZMod(GroupOracle):
    def __init__(self, m: int):
        if m < 1:
            raise InputError("Z_m needs m >= 1")
        self.m = m
        self.spec = f"zm {m}"

    def op(self, a, b):
        return (a + b) % self.m

    def inv(self, a):
        return (-a) % self.m

    def identity(self):
        return 0

    def canonical(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        try:
            a = int(text)
        except ValueError:
            raise InputError(f"bad Z_{self.m} element {text!r}") from None
        if not 0 <= a < self.m:
            raise InputError(f"Z_{self.m} element out of range: {a}")
        return a

    def random_element(self, rng):
        return rng.randrange(self.m)


class Z2R(GroupOracle):
    """Bitvectors of length ``r`` under XOR; bit ``i`` is character ``i``."""

    def __init__(self, r: int):
        if r < 0:
            raise InputError("Z2^r needs r >= 0")
        self.r = r
        self.spec = f"z2r {r}"

    def op(self, a, b):
        return a ^ b

    def inv(self, a):
        return a

    def identity(self):
        return 0

    def unit(self, i: int) -> int:
        return 1 << i

    def canonical(self, a) -> str:
        return "".join("1" if a >> i & 1 else "0" for i in range(self.r)) or "e"

    def parse(self, text: str):
        if self.r == 0 and text == "e":
            return 0
        if len(text) != self.r or set(text) - {"0", "1"}:
            raise InputError(f"bad Z2^{self.r} element {text!r}")
        return sum(1 << i for i, ch in enumerate(text) if ch == "1")

    def random_element(self, rng):
        return rng.getrandbits(self.r) if self.r else 0


class Sym(GroupOracle):
    """Permutations of ``0..n-1`` as tuples; ``op(a, b)`` applies ``b`` first.

    Literals are one-line notation, 1-based, comma separated (``2,3,1``).
    """

    def __init__(self, n: int):
        if n < 1:
            raise InputError("S_n needs n >= 1")
        self.n = n
        self.spec = f"sym {n}"

    def op(self, a, b):
        return tuple(a[b[i]] for i in range(self.n))

    def inv(self, a):
        out = [0] * self.n
        for i, ai in enumerate(a):
            out[ai] = i
        return tuple(out)

    def identity(self):
        return tuple(range(self.n))

    def canonical(self, a) -> str:
        return ",".join(str(x + 1) for x in a)

    def parse(self, text: str):
        try:
            a = tuple(int(x) - 1 for x in text.split(","))
        except ValueError:
            raise InputError(f"bad S_{self.n} element {text!r}") from None
        if sorted(a) != list(range(self.n)):
            raise InputError(f"not a permutation of 1..{self.n}: {text!r}")
        return a

    def random_element(self, rng):
        a = list(range(self.n))
        rng.shuffle(a)
        return tuple(a)


def group_from_spec(kind: str, param: int) -> GroupOracle:
    kinds = {"zm": ZMod, "z2r": Z2R, "sym": Sym}
    if kind not in kinds:
        raise InputError(f"unknown group kind {kind!r}")
    return kinds[kind](param)


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """Undirected multigraph with labels ``psi(e, endpoint)``.

    ``labels[e] = (psi(e, u), psi(e, v))`` for ``edges[e] = (u, v)``; the two
    must be mutually inverse.
    """

    base: Graph
    group: GroupOracle
    labels: tuple[tuple[Any, Any], ...]

    def __post_init__(self):
        if self.base.directed:
            raise InputError("group labels live on undirected graphs")
        if len(self.labels) != self.base.m:
            raise InputError("one label pair per edge required")
        object.__setattr__(self, "labels", tuple(tuple(p) for p in self.labels))
        for e, ((u, v), (a, b)) in enumerate(zip(self.base.edges, self.labels)):
            if u == v:
                raise InputError("self-loops are not supported in group-labeled graphs")
            if not self.group.is_identity(self.group.op(a, b)):
                raise InputError(f"labels of edge {e} are not mutually inverse")

    def psi(self, e: int, at: int):
        u, v = self.base.edges[e]
        if at == u:
            return self.labels[e][0]
        if at == v:
            return self.labels[e][1]
        raise InputError(f"vertex {at} is not an endpoint of edge {e}")

    def other(self, e: int, at: int) -> int:
        u, v = self.base.edges[e]
        return v if at == u else u

    def incidence(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.base.n)]
        for e, (u, v) in enumerate(self.base.edges):
            inc[u].append(e)
            inc[v].append(e)
        return inc

    def relabel(self, labels) -> "LabeledGraph":
        return LabeledGraph(self.base, self.group, tuple(labels))


def walk_sum(g: LabeledGraph, walk: Sequence[int]):
    """Sum of ``psi(e_i, v_i)`` over the walk ``[v0, e0, v1, e1, ..., v_l]``."""
    if len(walk) % 2 != 1:
        raise InputError("a walk alternates vertices and edges and ends at a vertex")
    acc = g.group.identity()
    for i in range(0, len(walk) - 1, 2):
        v, e, w = walk[i], walk[i + 1], walk[i + 2]
        if not 0 <= e < g.base.m or {v, w} != set(g.base.edges[e]):
            raise InputError(f"edge {e} does not join {v} and {w}")
        acc = g.group.op(acc, g.psi(e, v))
    return acc


@dataclass(frozen=True)
class LabelingResult:
    """Either a consistent labeling ``phi`` or a non-null closed walk."""

    phi: dict | None
    cycle: list | None

    @property
    def ok(self) -> bool:
        return self.phi is not None


def consistent_labeling(g: LabeledGraph, removed: Iterable[int] = ()) -> LabelingResult:
    """Labeling of ``g - removed`` with ``phi(v) = phi(u) + psi(e, u)``.

    Spanning-forest propagation; a failing non-tree edge yields a cycle
    through the two tree paths to their lowest common ancestor.
    """
    dead = set(removed)
    grp = g.group
    inc = g.incidence()
    phi: dict[int, Any] = {}
    parent: dict[int, tuple[int, int] | None] = {}
    depth: dict[int, int] = {}
    for root in range(g.base.n):
        if root in dead or root in phi:
            continue
        phi[root] = grp.identity()
        parent[root] = None
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for e in inc[u]:
                w = g.other(e, u)
                if w in dead or w in phi:
                    continue
                phi[w] = grp.op(phi[u], g.psi(e, u))
                parent[w] = (u, e)
                depth[w] = depth[u] + 1
                queue.append(w)
    for e, (u, v) in enumerate(g.base.edges):
        if u in dead or v in dead:
            continue
        if not grp.eq(phi[v], grp.op(phi[u], g.psi(e, u))):
            return LabelingResult(None, _tree_cycle(parent, depth, u, v, e))
    return LabelingResult(phi, None)


def _tree_cycle(parent, depth, u, v, e) -> list:
    """Closed walk ``a .. u, e, v .. a`` where ``a`` is the LCA of u and v."""
    up_u, up_v = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = parent[a][0]
        up_u.append(a)
    while depth[b] > depth[a]:
        b = parent[b][0]
        up_v.append(b)
    while a != b:
        a = parent[a][0]
        b = parent[b][0]
        up_u.append(a)
        up_v.append(b)
    # walk: lca -> ... -> u, e, v -> ... -> lca
    down_u = list(reversed(up_u))
    walk: list = [down_u[0]]
    for y in down_u[1:]:
        walk += [parent[y][1], y]
    walk += [e, v]
    for x, y in zip(up_v, up_v[1:]):
        walk += [parent[x][1], y]
    return walk


def untangle(g: LabeledGraph, X: Iterable[int], removed: Iterable[int] = ()) -> LabeledGraph:
    """Relabel so every edge of ``g - X`` carries the identity at both ends.

    Edges into ``X`` absorb the potential of their outside endpoint; the
    null/non-null status of every closed walk is unchanged.
    """
    X = set(X)
    dead = set(removed)
    res = consistent_labeling(g, removed=X | dead)
    if not res.ok:
        raise InputError("g - X contains a non-null cycle")
    phi, grp = res.phi, g.group
    labels = list(g.labels)
    for e, (u, v) in enumerate(g.base.edges):
        if u in dead or v in dead:
            continue
        a, b = labels[e]
        if u not in X and v not in X:
            labels[e] = (grp.sub(grp.op(phi[u], a), phi[v]), grp.sub(grp.op(phi[v], b), phi[u]))
        elif u in X and v not in X:
            labels[e] = (grp.sub(a, phi[v]), grp.op(phi[v], b))
        elif v in X and u not in X:
            labels[e] = (grp.op(phi[u], a), grp.sub(b, phi[u]))
    return g.relabel(labels)


def group_elements(grp: GroupOracle, limit: int = 10_000) -> list:
    """All elements of a small built-in group (for tests and generators)."""
    if isinstance(grp, ZMod):
        return list(range(grp.m))
    if isinstance(grp, Z2R):
        if 1 << grp.r > limit:
            raise ValueError("group too large to enumerate")
        return list(range(1 << grp.r))
    if isinstance(grp, Sym):
        return [tuple(p) for p in itertools.permutations(range(grp.n))]
    raise ValueError("cannot enumerate an abstract group")


def canonical_key(grp: GroupOracle, a) -> Hashable:
    return grp.canonical(a)
