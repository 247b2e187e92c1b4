"""Seeded random instances, sized for exhaustive cross-checking.

Every generator takes the seed plus optional size parameters; a parameter
left as ``None`` is drawn from the seeded stream, so the same call always
yields the same instance.
"""

from __future__ import annotations

import random

from .gdpc import Bundle, GdpcInstance
from .graph import INF, Digraph, Graph, InputError
from .groups import LabeledGraph, group_from_spec
from .instances import (RELATIONS, Constraint, DSFESInstance, GroupFVSInstance, MulticutInstance,
                        MultiwayCutInstance, PointAlgebraInstance, SkewMulticutInstance,
                        SubsetFVSInstance, SymMulticutInstance)


def _rng(problem: str, seed: int) -> random.Random:
    return random.Random(f"{problem}/{seed}")


def _pick(rng, value, low, high):
    return rng.randint(low, high) if value is None else value


def _names(n: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(n))


def _weights(rng, count: int, wmax: int, p_inf: float) -> tuple:
    return tuple(INF if rng.random() < p_inf else rng.randint(1, wmax) for _ in range(count))


def _undirected_edges(rng, n: int, density: float) -> list[tuple[int, int]]:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    # an occasional parallel edge keeps multigraph handling honest
    if edges and rng.random() < 0.2:
        edges.append(rng.choice(edges))
    rng.shuffle(edges)
    return [(v, u) if rng.random() < 0.5 else (u, v) for u, v in edges]


def _arcs(rng, n: int, density: float) -> list[tuple[int, int]]:
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < density]
    rng.shuffle(arcs)
    return arcs


def _distinct_pairs(rng, n: int, count: int) -> list[tuple[int, int]]:
    pairs = []
    for _ in range(count):
        s, t = rng.sample(range(n), 2)
        pairs.append((s, t))
    return pairs


def gen_multicut(seed: int, n=None, k=None, W=None, pairs=None, deletion="vertex",
                 wmax: int = 4, density=None, p_inf: float = 0.2) -> MulticutInstance:
    rng = _rng(f"multicut-{deletion}", seed)
    n = _pick(rng, n, 3, 8)
    k = _pick(rng, k, 0, 3)
    W = _pick(rng, W, 0, 8)
    pairs = _pick(rng, pairs, 1, 3)
    density = rng.choice((0.3, 0.45, 0.6)) if density is None else density
    edges = _undirected_edges(rng, n, density)
    if deletion == "vertex":
        g = Graph(_names(n), tuple(edges), vertex_weights=_weights(rng, n, wmax, p_inf))
    else:
        g = Graph(_names(n), tuple(edges), edge_weights=_weights(rng, len(edges), wmax, p_inf))
    return MulticutInstance(g, tuple(_distinct_pairs(rng, n, pairs)), k, W, deletion)


def gen_mwc(seed: int, n=None, k=None, W=None, terminals=None, deletion="vertex",
            wmax: int = 4, density=None, p_inf: float = 0.2) -> MultiwayCutInstance:
    rng = _rng(f"mwc-{deletion}", seed)
    n = _pick(rng, n, 3, 8)
    k = _pick(rng, k, 0, 3)
    W = _pick(rng, W, 0, 8)
    terminals = min(n, _pick(rng, terminals, 2, 4))
    density = rng.choice((0.3, 0.45, 0.6)) if density is None else density
    edges = _undirected_edges(rng, n, density)
    if deletion == "vertex":
        g = Graph(_names(n), tuple(edges), vertex_weights=_weights(rng, n, wmax, p_inf))
    else:
        g = Graph(_names(n), tuple(edges), edge_weights=_weights(rng, len(edges), wmax, p_inf))
    return MultiwayCutInstance(g, tuple(sorted(rng.sample(range(n), terminals))), k, W, deletion)


GROUPS = {"z2": ("zm", 2), "z3": ("zm", 3), "z2^3": ("z2r", 3), "s3": ("sym", 3)}


def gen_gfvs(seed: int, n=None, k=None, W=None, group: str = "z2", deletion="vertex",
             wmax: int = 3, density=None, p_inf: float = 0.15,
             p_identity: float = 0.4) -> GroupFVSInstance:
    if group not in GROUPS:
        raise InputError(f"unknown group {group!r}; choose from {', '.join(GROUPS)}")
    rng = _rng(f"gfvs-{deletion}-{group}", seed)
    grp = group_from_spec(*GROUPS[group])
    n = _pick(rng, n, 3, 7)
    k = _pick(rng, k, 0, 2)
    W = _pick(rng, W, 0, 6)
    density = rng.choice((0.35, 0.5, 0.65)) if density is None else density
    edges = _undirected_edges(rng, n, density)
    labels = []
    for _ in edges:
        a = grp.identity() if rng.random() < p_identity else grp.random_element(rng)
        labels.append((a, grp.inv(a)))
    if deletion == "vertex":
        g = Graph(_names(n), tuple(edges), vertex_weights=_weights(rng, n, wmax, p_inf))
    else:
        g = Graph(_names(n), tuple(edges), edge_weights=_weights(rng, len(edges), wmax, p_inf))
    return GroupFVSInstance(LabeledGraph(g, grp, tuple(labels)), k, W, deletion)


def gen_sfvs(seed: int, n=None, k=None, W=None, red=None, deletion="vertex",
             wmax: int = 3, density=None, p_inf: float = 0.15) -> SubsetFVSInstance:
    rng = _rng(f"sfvs-{deletion}", seed)
    n = _pick(rng, n, 3, 7)
    k = _pick(rng, k, 0, 2)
    W = _pick(rng, W, 0, 6)
    density = rng.choice((0.35, 0.5, 0.65)) if density is None else density
    edges = _undirected_edges(rng, n, density)
    red = min(len(edges), _pick(rng, red, 1, 3))
    reds = frozenset(rng.sample(range(len(edges)), red))
    if deletion == "vertex":
        g = Graph(_names(n), tuple(edges), vertex_weights=_weights(rng, n, wmax, p_inf), red=reds)
    else:
        g = Graph(_names(n), tuple(edges), edge_weights=_weights(rng, len(edges), wmax, p_inf),
                  red=reds)
    return SubsetFVSInstance(g, k, W, deletion)


def gen_dsfes(seed: int, n=None, k=None, W=None, red=None, deletion="edge",
              wmax: int = 3, density=None, p_inf: float = 0.15) -> DSFESInstance:
    rng = _rng(f"dsfes-{deletion}", seed)
    n = _pick(rng, n, 2, 7)
    k = _pick(rng, k, 0, 2)
    W = _pick(rng, W, 0, 6)
    density = rng.choice((0.2, 0.3, 0.4)) if density is None else density
    arcs = _arcs(rng, n, density)
    red = min(len(arcs), _pick(rng, red, 0, 3))
    reds = frozenset(rng.sample(range(len(arcs)), red))
    if deletion == "vertex":
        g = Digraph(_names(n), tuple(arcs), vertex_weights=_weights(rng, n, wmax, p_inf), red=reds)
    else:
        g = Digraph(_names(n), tuple(arcs), edge_weights=_weights(rng, len(arcs), wmax, p_inf),
                    red=reds)
    return DSFESInstance(g, k, W, deletion)


def gen_skew(seed: int, n=None, k=None, W=None, ell=None, deletion="edge",
             wmax: int = 3, density=None, p_inf: float = 0.15) -> SkewMulticutInstance:
    rng = _rng(f"skew-{deletion}", seed)
    n = _pick(rng, n, 3, 7)
    k = _pick(rng, k, 0, 2)
    W = _pick(rng, W, 0, 6)
    ell = _pick(rng, ell, 1, 2)
    density = rng.choice((0.2, 0.3, 0.4)) if density is None else density
    arcs = _arcs(rng, n, density)
    ends = [rng.sample(range(n), 2) for _ in range(ell)]
    if deletion == "vertex":
        g = Digraph(_names(n), tuple(arcs), vertex_weights=_weights(rng, n, wmax, p_inf))
    else:
        g = Digraph(_names(n), tuple(arcs), edge_weights=_weights(rng, len(arcs), wmax, p_inf))
    return SkewMulticutInstance(g, tuple(s for s, _ in ends), tuple(t for _, t in ends),
                                k, W, deletion)


def gen_symcut(seed: int, n=None, k=None, W=None, pairs=None, wmax: int = 1,
               density=None) -> SymMulticutInstance:
    rng = _rng("symcut", seed)
    n = _pick(rng, n, 2, 6)
    k = _pick(rng, k, 0, 2)
    W = _pick(rng, W, k, k + 4)
    pairs = _pick(rng, pairs, 1, 3)
    density = rng.choice((0.25, 0.4, 0.55)) if density is None else density
    arcs = _arcs(rng, n, density)
    g = Digraph(_names(n), tuple(arcs), edge_weights=tuple(rng.randint(1, wmax) for _ in arcs))
    return SymMulticutInstance(g, tuple(_distinct_pairs(rng, n, pairs)), k, W)


def gen_maxsat_pa(seed: int, variables=None, constraints=None, k=None,
                  relations=RELATIONS, max_mult: int = 2) -> PointAlgebraInstance:
    rng = _rng(f"maxsat-pa-{''.join(r[0] for r in relations)}", seed)
    nv = _pick(rng, variables, 2, 5)
    nc = _pick(rng, constraints, 1, 8)
    k = _pick(rng, k, 0, 2)
    names = tuple(f"x{i}" for i in range(nv))
    cons = []
    for _ in range(nc):
        x, y = rng.sample(names, 2)
        mult = 1 if rng.random() < 0.75 else rng.randint(1, max_mult)
        cons.append(Constraint(rng.choice(relations), x, y, mult))
    return PointAlgebraInstance(names, tuple(cons), k)


def gen_gdpc(seed: int, n=None, bundles=None, k=None, W=None, crisp=None,
             max_arcs: int = 2, max_clauses: int = 1) -> GdpcInstance:
    rng = _rng("gdpc", seed)
    n = _pick(rng, n, 3, 6)
    nb = _pick(rng, bundles, 1, 8)
    k = _pick(rng, k, 0, 2)
    W = _pick(rng, W, 0, 6)
    crisp = _pick(rng, crisp, 0, 3)
    names = tuple(["s", "t"] + [f"v{i}" for i in range(n - 2)])

    def arc():
        u = rng.choice([v for v in range(n) if v != 1])
        return u, rng.choice([v for v in range(n) if v not in (0, u)])

    arcs, clauses, out = [], [], []
    for _ in range(nb):
        a_ids, ends = [], set()
        for _ in range(rng.randint(0, max_arcs)):
            uv = arc()
            if uv not in ends:
                ends.add(uv)
                a_ids.append(len(arcs))
                arcs.append(uv)
        c_ids = []
        for _ in range(rng.randint(0, max_clauses)):
            c_ids.append(len(clauses))
            clauses.append((rng.randrange(n), rng.randrange(n)))
        if a_ids or c_ids:
            out.append(Bundle(rng.randint(1, 3), tuple(a_ids), tuple(c_ids)))
    for _ in range(crisp):
        arcs.append(arc())
    return GdpcInstance(names, 0, 1, tuple(arcs), tuple(clauses), tuple(out), k, W)


def generate(problem: str, seed: int, **params):
    """Instance for a problem tag; ``params`` go to the matching generator."""
    table = {
        "multicut": lambda: gen_multicut(seed, deletion="vertex", **params),
        "multicut-edge": lambda: gen_multicut(seed, deletion="edge", **params),
        "mwc": lambda: gen_mwc(seed, deletion="vertex", **params),
        "mwc-edge": lambda: gen_mwc(seed, deletion="edge", **params),
        "gfvs": lambda: gen_gfvs(seed, deletion="vertex", **params),
        "gfes": lambda: gen_gfvs(seed, deletion="edge", **params),
        "sfvs": lambda: gen_sfvs(seed, deletion="vertex", **params),
        "sfes": lambda: gen_sfvs(seed, deletion="edge", **params),
        "dsfes": lambda: gen_dsfes(seed, deletion="edge", **params),
        "dsfvs": lambda: gen_dsfes(seed, deletion="vertex", **params),
        "skew": lambda: gen_skew(seed, deletion="edge", **params),
        "skew-vertex": lambda: gen_skew(seed, deletion="vertex", **params),
        "symcut": lambda: gen_symcut(seed, **params),
        "maxsat-pa": lambda: gen_maxsat_pa(seed, **params),
        "gdpc": lambda: gen_gdpc(seed, **params),
    }
    if problem not in table:
        raise InputError(f"unknown problem tag {problem!r}")
    try:
        return table[problem]()
    except TypeError as exc:
        raise InputError(f"bad size parameter for {problem}: {exc}") from None
