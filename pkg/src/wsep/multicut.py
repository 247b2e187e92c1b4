"""Weighted vertex-deletion Multicut and Multiway Cut.

Pipeline: isolate terminals, iterative compression with terminals first,
guess the deleted part of the compression set and how the rest splits into
components, then a branching routine driven by reduction rules. Leaves that
are bipedal (every component of ``G - X`` sees at most two vertices of
``X``) are handed to a GDPC solver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .gdpc import Bundle, GdpcInstance, exact_solve
from .graph import INF, connected_components, max_disjoint_fan, min_vertex_cut_size
from .instances import MulticutInstance, MultiwayCutInstance, SolveOutcome
from .transforms import edge_subdivide_undirected, isolate_terminals


@dataclass
class BranchState:
    """Working instance of the branching routine.

    ``X`` is independent-to-be and undeletable; the solution sought must also
    be a multiway cut for ``X``. ``deleted`` accumulates the witness.
    """

    adj: dict[int, set[int]]
    weight: dict[int, object]
    pairs: list[tuple[int, int]]
    X: set[int]
    k: int
    W: object
    deleted: list[int] = field(default_factory=list)

    def copy(self) -> "BranchState":
        return BranchState({v: set(ns) for v, ns in self.adj.items()}, dict(self.weight),
                           list(self.pairs), set(self.X), self.k, self.W, list(self.deleted))

    def remove(self, vs: Iterable[int]) -> None:
        vs = set(vs)
        for v in vs:
            for w in self.adj.pop(v):
                if w not in vs:
                    self.adj[w].discard(v)
            self.weight.pop(v)
            self.X.discard(v)

    def delete(self, v: int) -> None:
        """Put ``v`` into the solution."""
        self.k -= 1
        self.W -= self.weight[v]
        self.deleted.append(v)
        self.remove([v])

    def merge(self, v: int, into: int) -> None:
        """Contract ``v`` onto ``into``; the merged vertex keeps ``into``'s name."""
        if v == into:
            return
        for w in self.adj.pop(v):
            self.adj[w].discard(v)
            if w != into:
                self.adj[w].add(into)
                self.adj[into].add(w)
        self.weight.pop(v)
        self.X.discard(v)
        self.pairs = [(into if a == v else a, into if b == v else b) for a, b in self.pairs]

    def outside_components(self) -> list[list[int]]:
        return connected_components(self.adj, within=set(self.adj) - self.X)

    def legs(self, comp: Iterable[int]) -> set[int]:
        """``N(C)``: vertices of ``X`` adjacent to the component."""
        return {w for v in comp for w in self.adj[v] if w in self.X}

    def x_independent(self) -> bool:
        return all(not (self.adj[x] & self.X) for x in self.X)

    def pairs_separated(self) -> bool:
        label = {}
        for i, comp in enumerate(connected_components(self.adj)):
            for v in comp:
                label[v] = i
        return all(a != b and label[a] != label[b] for a, b in self.pairs)


def nontrivial_count(st: BranchState) -> int:
    return sum(1 for c in st.outside_components() if len(st.legs(c)) > 1)


def progress_measure(st: BranchState) -> int:
    """Nontrivial components plus X-vertices touching one."""
    count, touched = 0, set()
    for c in st.outside_components():
        legs = st.legs(c)
        if len(legs) > 1:
            count += 1
            touched |= legs
    return count + len(touched)


def immediate_verdict(st: BranchState) -> tuple[str, int] | None:
    """Verdict of the first four rules, if one of them fires."""
    if st.k >= 0 and st.W >= 0 and st.pairs_separated():
        return "yes", 1
    if st.k <= 0 or st.W <= 0 or not st.x_independent():
        return "no", 2
    if nontrivial_count(st) > st.k:
        return "no", 3
    if len(st.X) > 1:
        for x in sorted(st.X):
            if min_vertex_cut_size(st.adj, {x}, st.X - {x}, st.k) > st.k:
                return "no", 4
    return None


@dataclass
class RuleOutcome:
    kind: str  # "yes", "no", "bipedal" or "branch"
    state: BranchState
    fired: list[int]


@dataclass
class RuleStep:
    rule: int | None
    kind: str  # "yes", "no", "reduced", "bipedal" or "branch"
    state: BranchState


def reduction_step(st: BranchState) -> RuleStep:
    """Apply the first applicable rule once; a reduced state is a fresh copy."""
    verdict = immediate_verdict(st)
    if verdict is not None:
        return RuleStep(verdict[1], verdict[0], st)
    forced = _rule5_vertex(st)
    if forced is not None:
        if st.weight[forced] == INF:
            return RuleStep(5, "no", st)
        child = st.copy()
        child.delete(forced)
        return RuleStep(5, "reduced", child)
    dead = _rule6_components(st)
    if dead:
        doomed = set(dead)
        child = st.copy()
        child.pairs = [(a, b) for a, b in child.pairs if a not in doomed and b not in doomed]
        child.remove(doomed)
        return RuleStep(6, "reduced", child)
    if len(st.X) > st.k * (st.k + 1):
        return RuleStep(7, "no", st)
    if all(len(st.legs(c)) <= 2 for c in st.outside_components()):
        return RuleStep(8, "bipedal", st)
    return RuleStep(None, "branch", st)


def apply_reduction_rules(state: BranchState) -> RuleOutcome:
    """Apply the first applicable rule until one resolves or none applies.

    Works on a copy. Rules 5 and 6 modify the instance and restart the scan.
    """
    st = state.copy()
    fired: list[int] = []
    while True:
        step = reduction_step(st)
        if step.rule is not None:
            fired.append(step.rule)
        if step.kind != "reduced":
            return RuleOutcome(step.kind, step.state, fired)
        st = step.state


def _rule5_vertex(st: BranchState) -> int | None:
    if not st.X:
        return None
    for v in sorted(set(st.adj) - st.X):
        if len(st.adj[v]) >= st.k + 2 and max_disjoint_fan(st.adj, v, st.X) >= st.k + 2:
            return v
    return None


def _rule6_components(st: BranchState) -> list[int]:
    doomed: list[int] = []
    for comp in connected_components(st.adj):
        cs = set(comp)
        if len(cs & st.X) > 1:
            continue
        if any(a in cs and b in cs for a, b in st.pairs):
            continue
        doomed += comp
    return doomed


def merged(st: BranchState, B: tuple[int, ...], f: tuple[int, ...]) -> BranchState:
    """Instance ``I_f``: every ``v`` in ``B`` merged onto ``f(v)``."""
    child = st.copy()
    for v, x in zip(B, f):
        child.merge(v, x)
    return child


@dataclass(frozen=True)
class ShatteringCertificate:
    component: tuple[int, ...]
    B: tuple[int, ...]
    verdicts: tuple[tuple[tuple[int, ...], str], ...]
    fallback: bool = False


def check_shattering(st: BranchState, comp: Iterable[int], B: tuple[int, ...]
                     ) -> tuple[bool, tuple]:
    """Replay the shattering definition for ``B`` over every ``f: B -> N(C)``."""
    legs = sorted(st.legs(comp))
    base = nontrivial_count(st)
    verdicts = []
    for f in itertools.product(legs, repeat=len(B)):
        child = merged(st, B, f)
        if not child.x_independent():
            verdicts.append((f, "rule2"))
            continue
        if nontrivial_count(child) > base:
            verdicts.append((f, "more-nontrivial"))
            continue
        verdict = immediate_verdict(child)
        if verdict is None:
            return False, tuple(verdicts)
        verdicts.append((f, f"rule{verdict[1]}"))
    return True, tuple(verdicts)


def find_shattering_set(st: BranchState, comp: list[int]) -> ShatteringCertificate:
    """Smallest shattering ``B`` of size at most ``min(3k, |C|)``.

    Exhaustive search in increasing size, validated by
    :func:`check_shattering`. Should no such set exist, the whole component
    is returned; it always shatters a component with three or more legs.
    """
    limit = min(3 * st.k, len(comp))
    for size in range(1, limit + 1):
        for B in itertools.combinations(comp, size):
            ok, verdicts = check_shattering(st, comp, B)
            if ok:
                return ShatteringCertificate(tuple(comp), B, verdicts)
    B = tuple(comp)
    ok, verdicts = check_shattering(st, comp, B)
    assert ok, "a component with three legs is always shattered by itself"
    return ShatteringCertificate(tuple(comp), B, verdicts, fallback=True)


@dataclass
class EngineContext:
    gdpc_solver: Callable = exact_solve
    on_gdpc: Callable | None = None
    on_node: Callable | None = None
    names: list[str] | None = None
    depth_cap: int | None = None
    stats: dict = field(default_factory=lambda: {
        "nodes": 0, "max_depth": 0, "gdpc_calls": 0, "shatter_fallbacks": 0})


def _depth_cap(k: int) -> int:
    # per budget value j the progress measure climbs through at most j + j(j+1) + 1 values
    return sum(j + j * (j + 1) + 1 for j in range(1, k + 1))


def branch_engine(state: BranchState, ctx: EngineContext, depth: int = 0) -> list[int] | None:
    """Solve a compression instance; returns the accumulated deletions or None."""
    stats = ctx.stats
    stats["nodes"] += 1
    stats["max_depth"] = max(stats["max_depth"], depth)
    if ctx.depth_cap is None:
        ctx.depth_cap = _depth_cap(state.k)
    assert depth <= ctx.depth_cap, f"branching depth {depth} exceeds {ctx.depth_cap}"
    if ctx.on_node is not None:
        ctx.on_node(state, depth)

    res = apply_reduction_rules(state)
    st = res.state
    if res.kind == "yes":
        return st.deleted
    if res.kind == "no":
        return None
    if res.kind == "bipedal":
        return _solve_bipedal(st, ctx)

    comp = next(c for c in st.outside_components() if len(st.legs(c)) > 2)
    cert = find_shattering_set(st, comp)
    if cert.fallback:
        stats["shatter_fallbacks"] += 1
    B = cert.B
    base = progress_measure(st)

    for v in B:
        if st.weight[v] == INF or st.weight[v] > st.W:
            continue
        child = st.copy()
        child.delete(v)
        found = branch_engine(child, ctx, depth + 1)
        if found is not None:
            return found
    for f in itertools.product(sorted(st.legs(comp)), repeat=len(B)):
        child = merged(st, B, f)
        _assert_progress(child, base)
        found = branch_engine(child, ctx, depth + 1)
        if found is not None:
            return found
    for v in B:
        child = st.copy()
        child.X.add(v)
        child.weight[v] = INF
        _assert_progress(child, base)
        found = branch_engine(child, ctx, depth + 1)
        if found is not None:
            return found
    return None


def _assert_progress(child: BranchState, base: int) -> None:
    if immediate_verdict(child) is None:
        assert progress_measure(child) > base, "branching step made no progress"


@dataclass(frozen=True)
class BipedalReduction:
    instance: GdpcInstance
    bundle_vertex: tuple[int, ...]


def bipedal_to_gdpc(st: BranchState, names: list[str] | None = None) -> BipedalReduction | None:
    """GDPC instance equivalent to a bipedal state; None if trivially infeasible.

    Each vertex ``v`` of a component gets ``v_s-, v_s+, v_t-, v_t+``; its
    bundle holds the arcs ``v_s- -> v_s+``, ``v_t- -> v_t+`` and the clause
    ``{v_s+, v_t+}``. Undeletable vertices keep the arcs crisp and the clause
    unbundled. A pair with one end in ``X`` becomes a one-vertex clause.
    """
    label = (lambda v: names[v]) if names is not None else str
    vnames: list[str] = []
    index: dict = {}

    def vid(key) -> int:
        if key not in index:
            index[key] = len(vnames)
            vnames.append(key if isinstance(key, str) else f"{label(key[0])}_{key[1]}")
        return index[key]

    s, t = vid("s"), vid("t")
    arcs: list[tuple[int, int]] = []
    clauses: list[tuple[int, int]] = []
    bundles: list[Bundle] = []
    owner: list[int] = []
    comp_of: dict[int, int] = {}
    side_of: list[dict[int, str]] = []
    comps = st.outside_components()
    for ci, comp in enumerate(comps):
        legs = sorted(st.legs(comp))
        if not 1 <= len(legs) <= 2:
            raise AssertionError("bipedal_to_gdpc needs a bipedal instance")
        sides = {legs[0]: "s"}
        if len(legs) == 2:
            sides[legs[1]] = "t"
        side_of.append(sides)
        for v in comp:
            comp_of[v] = ci
            a1 = len(arcs)
            arcs.append((vid((v, "s-")), vid((v, "s+"))))
            arcs.append((vid((v, "t-")), vid((v, "t+"))))
            c = len(clauses)
            clauses.append((vid((v, "s+")), vid((v, "t+"))))
            if st.weight[v] != INF:
                bundles.append(Bundle(st.weight[v], (a1, a1 + 1), (c,)))
                owner.append(v)
        members = set(comp)
        for u in comp:
            for w in sorted(st.adj[u]):
                if w in members and u < w:
                    arcs.append((vid((u, "s+")), vid((w, "s-"))))
                    arcs.append((vid((w, "s+")), vid((u, "s-"))))
                    arcs.append((vid((u, "t+")), vid((w, "t-"))))
                    arcs.append((vid((w, "t+")), vid((u, "t-"))))
        for v in comp:
            for x, side in sides.items():
                if x in st.adj[v]:
                    other = "t" if side == "s" else "s"
                    arcs.append((s, vid((v, f"{side}-"))))
                    arcs.append((vid((v, f"{other}+")), t))
    for a, b in st.pairs:
        if a == b:
            return None
        if a in st.X and b in st.X:
            continue
        if a in st.X or b in st.X:
            x, w = (a, b) if a in st.X else (b, a)
            side = side_of[comp_of[w]].get(x)
            if side is not None:
                node = vid((w, f"{side}-"))
                clauses.append((node, node))
            continue
        ca, cb = comp_of[a], comp_of[b]
        assert ca != cb, "terminal pair inside one component of G - X"
        for x in sorted(set(side_of[ca]) & set(side_of[cb])):
            clauses.append((vid((a, f"{side_of[ca][x]}-")), vid((b, f"{side_of[cb][x]}-"))))
    inst = GdpcInstance(tuple(vnames), s, t, tuple(arcs), tuple(clauses), tuple(bundles),
                        st.k, st.W)
    return BipedalReduction(inst, tuple(owner))


def _solve_bipedal(st: BranchState, ctx: EngineContext) -> list[int] | None:
    red = bipedal_to_gdpc(st, ctx.names)
    if red is None:
        return None
    ctx.stats["gdpc_calls"] += 1
    if ctx.on_gdpc is not None:
        ctx.on_gdpc(red.instance, st)
    out = ctx.gdpc_solver(red.instance)
    if not out.yes:
        return None
    chosen = [red.bundle_vertex[b] for b in sorted(out.violated)]
    after = st.copy()
    after.remove(chosen)
    assert after.pairs_separated() and _multiway(after), "GDPC witness does not pull back"
    return st.deleted + chosen


def _multiway(st: BranchState) -> bool:
    return all(len(set(c) & st.X) <= 1 for c in connected_components(st.adj))


def set_partitions(items: list) -> Iterator[list[list]]:
    """Set partitions in restricted-growth-string order."""
    n = len(items)
    if n == 0:
        yield []
        return
    rgs = [0] * n

    def rec(i: int, top: int):
        if i == n:
            blocks: list[list] = [[] for _ in range(top + 1)]
            for item, b in zip(items, rgs):
                blocks[b].append(item)
            yield blocks
            return
        for b in range(top + 2):
            rgs[i] = b
            yield from rec(i + 1, max(top, b))

    rgs[0] = 0
    yield from rec(1, 0)


def compression_states(adj, weight, pairs, X: list[int], k, W) -> Iterator[tuple[list[int], BranchState]]:
    """Disjoint-compression branches: deleted part ``Y`` of ``X``, then a
    partition of ``X - Y`` into co-resident blocks, each merged to one vertex.
    Partitions that merge adjacent vertices of different blocks are skipped.
    """
    for size in range(len(X) + 1):
        for Y in itertools.combinations(sorted(X), size):
            wy = sum(weight[y] for y in Y)
            if size > k or wy > W:
                continue
            rest = [x for x in sorted(X) if x not in Y]
            base = BranchState({v: set(ns) for v, ns in adj.items()}, dict(weight),
                               list(pairs), set(rest), k - size, W - wy, list(Y))
            base.remove(Y)
            for x in rest:
                base.weight[x] = INF
            for blocks in set_partitions(rest):
                st = base.copy()
                for block in blocks:
                    for x in block[1:]:
                        st.merge(x, block[0])
                if not st.x_independent():
                    continue
                yield list(Y), st


def _restrict(adj: dict[int, set[int]], keep: set[int]) -> dict[int, set[int]]:
    return {v: adj[v] & keep for v in keep}


def solve_multicut(inst: MulticutInstance, *, gdpc_solver: Callable = exact_solve,
                   on_gdpc: Callable | None = None,
                   on_node: Callable | None = None) -> SolveOutcome:
    """Weighted Multicut (vertex or edge deletion).

    ``on_node(state, depth)`` sees every branching node before its rules run.
    """
    if inst.deletion == "edge":
        sub, smap = edge_subdivide_undirected(inst.graph)
        out = solve_multicut(MulticutInstance(sub, inst.pairs, inst.k, inst.W, "vertex"),
                             gdpc_solver=gdpc_solver, on_gdpc=on_gdpc, on_node=on_node)
        if not out.yes:
            return out
        return SolveOutcome.found([smap.edge_of(v) for v in out.cut], inst.weight_of, **out.stats)

    iso, _ = isolate_terminals(inst)
    g = iso.graph
    full = g.adjacency()
    weight = dict(enumerate(g.vertex_weights))
    pairs = list(iso.pairs)
    terminals = sorted({v for p in pairs for v in p})
    rest = [v for v in range(g.n) if v not in set(terminals)]
    totals = {"nodes": 0, "max_depth": 0, "gdpc_calls": 0, "shatter_fallbacks": 0,
              "compressions": 0}
    present = set(terminals)
    Z: list[int] = []
    for v in rest:
        present.add(v)
        probe = BranchState(_restrict(full, present - set(Z)), {}, pairs, set(), 0, 0)
        if probe.pairs_separated():
            continue
        totals["compressions"] += 1
        sub_adj = _restrict(full, present)
        found = None
        for Y, st in compression_states(sub_adj, {u: weight[u] for u in present}, pairs,
                                        Z + [v], inst.k, inst.W):
            ctx = EngineContext(gdpc_solver, on_gdpc, on_node, list(g.names))
            found = branch_engine(st, ctx)
            for key in ("nodes", "gdpc_calls", "shatter_fallbacks"):
                totals[key] += ctx.stats[key]
            totals["max_depth"] = max(totals["max_depth"], ctx.stats["max_depth"])
            if found is not None:
                break
        if found is None:
            return SolveOutcome.no(**totals)
        Z = sorted(set(found))
    return SolveOutcome.found(Z, inst.weight_of, **totals)


def solve_multiway_cut(inst: MultiwayCutInstance, *, undeletable_terminals: bool = False,
                       gdpc_solver: Callable = exact_solve,
                       on_gdpc: Callable | None = None) -> SolveOutcome:
    """Weighted Multiway Cut as Multicut over all terminal pairs."""
    mc = inst.as_multicut()
    if undeletable_terminals and inst.deletion == "vertex":
        g = inst.graph
        ws = list(g.vertex_weights)
        for v in inst.terminals:
            ws[v] = INF
        g = type(g)(g.names, g.edges, vertex_weights=tuple(ws), edge_weights=g.edge_weights,
                    red=g.red)
        mc = MulticutInstance(g, mc.pairs, mc.k, mc.W, "vertex")
    out = solve_multicut(mc, gdpc_solver=gdpc_solver, on_gdpc=on_gdpc)
    if out.yes:
        return SolveOutcome.found(out.cut, inst.weight_of, **out.stats)
    return out
