"""Witness checking from the problem definitions.

``check_witness`` resolves witness names, enforces the budgets and reports
every violated pair, red edge, cycle or constraint it finds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .gdpc import GdpcInstance, evaluate_cut
from .graph import INF, Digraph, Graph, InputError, reachable_from, strong_components, total_weight
from .groups import LabeledGraph, consistent_labeling
from .instances import (DSFESInstance, GroupFVSInstance, MulticutInstance, MultiwayCutInstance,
                        PointAlgebraInstance, SkewMulticutInstance, SubsetFVSInstance,
                        SymMulticutInstance, edge_label)

_SYMBOL = {"eq": "=", "neq": "!=", "lt": "<", "leq": "<="}


def constraint_label(inst: PointAlgebraInstance, i: int) -> str:
    c = inst.constraints[i]
    return f"{c.x}{_SYMBOL[c.rel]}{c.y}#{i}"


def arc_label(inst: GdpcInstance, a: int) -> str:
    u, v = inst.arcs[a]
    return f"{inst.names[u]}->{inst.names[v]}#{a}"


def witness_names(inst, cut) -> list[str]:
    if isinstance(inst, PointAlgebraInstance):
        return [constraint_label(inst, i) for i in cut]
    if isinstance(inst, GdpcInstance):
        return [arc_label(inst, a) for a in cut]
    return inst.cut_names(cut)


def _by_label(tok: str, count: int, label) -> int:
    head, sep, tail = tok.rpartition("#")
    if not sep or not tail.isdigit() or int(tail) >= count or label(int(tail)) != tok:
        raise InputError(f"cannot resolve witness entry {tok!r}")
    return int(tail)


def resolve_witness(inst, tokens) -> list[int]:
    """Ids for witness names; duplicates are rejected."""
    if isinstance(inst, PointAlgebraInstance):
        ids = [_by_label(t, len(inst.constraints), lambda i: constraint_label(inst, i)) for t in tokens]
    elif isinstance(inst, GdpcInstance):
        ids = [_by_label(t, len(inst.arcs), lambda a: arc_label(inst, a)) for t in tokens]
    elif inst.deletion == "vertex":
        ids = [inst.graph.index(t) for t in tokens]
    else:
        g = inst.graph
        ids = [_by_label(t, g.m, lambda e: edge_label(g, e)) for t in tokens]
    if len(set(ids)) != len(ids):
        raise InputError("witness lists an entry twice")
    return ids


@dataclass(frozen=True)
class WitnessReport:
    ok: bool
    violations: tuple[str, ...]


def check_witness(inst, cut) -> WitnessReport:
    """Verdict plus every violation found for the deletion set ``cut`` (ids)."""
    cut = list(cut)
    Z = set(cut)
    bad: list[str] = []
    if isinstance(inst, GdpcInstance):
        return _check_gdpc(inst, Z)
    weight = total_weight(inst.weight_of(x) for x in cut)
    names = witness_names(inst, cut)
    for x, name in zip(cut, names):
        if inst.weight_of(x) == INF:
            bad.append(f"undeletable entry {name}")
    if isinstance(inst, PointAlgebraInstance):
        if weight > inst.k:
            bad.append(f"violated multiplicity {weight} exceeds k={inst.k}")
        bad += _point_algebra(inst, Z)
        return WitnessReport(not bad, tuple(bad))
    if len(cut) > inst.k:
        bad.append(f"cardinality {len(cut)} exceeds k={inst.k}")
    if weight > inst.W:
        bad.append(f"weight {weight} exceeds W={inst.W}")
    bad += _predicate(inst, Z)
    return WitnessReport(not bad, tuple(bad))


def _reach(g: Graph, src: int, Z: set, deletion: str):
    if deletion == "vertex":
        return reachable_from(g, src, removed_vertices=Z)
    return reachable_from(g, src, deleted=Z)


def _gone(Z: set, deletion: str, *vs) -> bool:
    return deletion == "vertex" and any(v in Z for v in vs)


def _connected_pairs(inst, pairs, Z: set, what: str) -> list[str]:
    g, mode = inst.graph, inst.deletion
    out = []
    for s, t in pairs:
        if not _gone(Z, mode, s, t) and t in _reach(g, s, Z, mode):
            out.append(f"{what} {g.names[s]} {g.names[t]} still connected")
    return out


def _predicate(inst, Z: set) -> list[str]:
    g = inst.graph
    if isinstance(inst, MulticutInstance):
        return _connected_pairs(inst, inst.pairs, Z, "pair")
    if isinstance(inst, MultiwayCutInstance):
        return _connected_pairs(inst, itertools.combinations(inst.terminals, 2), Z, "terminals")
    if isinstance(inst, SkewMulticutInstance):
        return _connected_pairs(inst, inst.skew_pairs(), Z, "skew pair")
    if isinstance(inst, GroupFVSInstance):
        return _group(inst, Z)
    if isinstance(inst, SubsetFVSInstance):
        out = []
        for e in sorted(g.red):
            u, v = g.edges[e]
            if inst.deletion == "vertex":
                if u in Z or v in Z:
                    continue
                closes = v in reachable_from(g, u, deleted={e}, removed_vertices=Z)
            else:
                closes = e not in Z and v in reachable_from(g, u, deleted=Z | {e})
            if closes:
                out.append(f"red edge {edge_label(g, e)} lies on a cycle")
        return out
    if isinstance(inst, DSFESInstance):
        out = []
        for e in sorted(g.red):
            u, v = g.edges[e]
            if (u in Z or v in Z) if inst.deletion == "vertex" else e in Z:
                continue
            if u in _reach(g, v, Z, inst.deletion):
                out.append(f"red arc {edge_label(g, e)} lies on a cycle")
        return out
    if isinstance(inst, SymMulticutInstance):
        comp = {}
        for i, c in enumerate(strong_components(g, deleted=Z)):
            for v in c:
                comp[v] = i
        return [f"pair {g.names[u]} {g.names[v]} share a strong component"
                for u, v in inst.pairs if comp[u] == comp[v]]
    raise InputError(f"no witness predicate for {type(inst).__name__}")


def _group(inst: GroupFVSInstance, Z: set) -> list[str]:
    lg = inst.labeled
    if inst.deletion == "vertex":
        res = consistent_labeling(lg, removed=Z)
        keep = list(range(lg.base.m))
    else:
        keep = [e for e in range(lg.base.m) if e not in Z]
        base = Graph(lg.base.names, tuple(lg.base.edges[e] for e in keep))
        res = consistent_labeling(LabeledGraph(base, lg.group, tuple(lg.labels[e] for e in keep)))
    if res.ok:
        return []
    walk = res.cycle
    edges = [edge_label(lg.base, keep[e]) for e in walk[1::2]]
    return ["non-null cycle " + " ".join(edges)]


def _point_algebra(inst: PointAlgebraInstance, dropped: set) -> list[str]:
    """The kept constraints are satisfiable iff, in the digraph of ``<=``-type
    arcs, no strong component holds a ``<`` or ``!=`` constraint."""
    index = {x: i for i, x in enumerate(inst.variables)}
    keep = [i for i in range(len(inst.constraints)) if i not in dropped]
    arcs = []
    for i in keep:
        c = inst.constraints[i]
        x, y = index[c.x], index[c.y]
        if c.rel in ("leq", "lt", "eq"):
            arcs.append((x, y))
        if c.rel == "eq":
            arcs.append((y, x))
    g = Digraph(inst.variables, tuple(arcs))
    comp = {}
    for j, c in enumerate(strong_components(g)):
        for v in c:
            comp[v] = j
    out = []
    for i in keep:
        c = inst.constraints[i]
        if c.rel in ("lt", "neq") and comp[index[c.x]] == comp[index[c.y]]:
            out.append(f"constraint {constraint_label(inst, i)} cannot hold with the rest")
    return out


def _check_gdpc(inst: GdpcInstance, Z: set) -> WitnessReport:
    bad = [f"arc {arc_label(inst, a)} is crisp" for a in sorted(Z) if a not in inst.arc_bundle]
    if bad:
        return WitnessReport(False, tuple(bad))
    ev = evaluate_cut(inst, Z)
    if ev is None:
        return WitnessReport(False, (f"{inst.names[inst.t]} still reachable from {inst.names[inst.s]}",))
    nm = inst.names
    bad += [f"clause {nm[inst.clauses[c][0]]} {nm[inst.clauses[c][1]]} violated outside any bundle"
            for c in sorted(ev.unbundled_violations)]
    count, weight = len(ev.violated_bundles), ev.weight(inst)
    if count > inst.k:
        bad.append(f"{count} violated bundles exceed k={inst.k}")
    if weight > inst.W:
        bad.append(f"violated weight {weight} exceeds W={inst.W}")
    return WitnessReport(not bad, tuple(bad))
