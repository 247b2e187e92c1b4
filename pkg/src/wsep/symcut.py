"""Directed Symmetric Multicut and point-algebra Max SAT.

No FPT algorithm is known for the symmetric problem, so it is solved by
exhaustive search. The module makes the translations between the
formulations executable: Max SAT over ``{=, !=, <, <=}`` to Symmetric
Multicut and back, and Max SAT over ``{<, <=}`` to DSFES.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .dsfes import solve_dsfes
from .graph import INF, Digraph, InputError, fresh_name, strong_components, total_weight
from .instances import (Constraint, DSFESInstance, PointAlgebraInstance, SolveOutcome,
                        SymMulticutInstance)


def separated_by(g: Digraph, Z, pairs) -> bool:
    comp = {}
    for i, c in enumerate(strong_components(g, deleted=Z)):
        for v in c:
            comp[v] = i
    return all(comp[u] != comp[v] for u, v in pairs)


def brute_sym_multicut(inst: SymMulticutInstance) -> SolveOutcome:
    """First feasible arc set in (size, lexicographic) order."""
    g = inst.graph
    ids = [e for e in range(g.m) if g.edge_weight(e) != INF]
    tried = 0
    for size in range(min(inst.k, len(ids)) + 1):
        for Z in itertools.combinations(ids, size):
            if total_weight(g.edge_weight(e) for e in Z) > inst.W:
                continue
            tried += 1
            if separated_by(g, Z, inst.pairs):
                return SolveOutcome.found(Z, inst.weight_of, candidates=tried)
    return SolveOutcome.no(candidates=tried)


@dataclass(frozen=True)
class Translation:
    """A translated instance; ``origin[i]`` is the source constraint (or arc)
    behind arc ``i``, ``variables`` the vertex of each source variable."""

    instance: object
    origin: tuple[int, ...]
    variables: dict[str, int]


def _normalize(inst: PointAlgebraInstance):
    """``x = y`` becomes two ``<=``; ``x < y`` becomes ``!=`` plus ``<=``."""
    for i, c in enumerate(inst.constraints):
        m = min(c.mult, inst.k + 1)
        if c.rel == "eq":
            yield i, "leq", c.x, c.y, m
            yield i, "leq", c.y, c.x, m
        elif c.rel == "lt":
            yield i, "neq", c.x, c.y, m
            yield i, "leq", c.x, c.y, m
        else:
            yield i, c.rel, c.x, c.y, m


def maxsat_to_symcut(inst: PointAlgebraInstance) -> Translation:
    """Unweighted Symmetric Multicut instance with the same answer.

    Each copy of ``x != y`` gets fresh ``x'``, ``y'`` tied to ``x`` and ``y``
    by two arcs each, plus the pair ``{x', y'}`` with multiplicity ``k + 1``.
    Multiplicities above ``k + 1`` are capped; such copies cannot all be
    dropped anyway.
    """
    names = list(inst.variables)
    taken = set(names)
    index = {v: i for i, v in enumerate(names)}
    arcs: list[tuple[int, int]] = []
    origin: list[int] = []
    pairs: list[tuple[int, int]] = []
    for i, rel, x, y, m in _normalize(inst):
        if rel == "leq":
            arcs += [(index[x], index[y])] * m
            origin += [i] * m
            continue
        for _ in range(m):
            xp, yp = len(names), len(names) + 1
            names.append(fresh_name(taken, f"{x}'"))
            names.append(fresh_name(taken, f"{y}'"))
            arcs += [(index[x], xp), (xp, index[x]), (index[y], yp), (yp, index[y])]
            origin += [i] * 4
            pairs.append((xp, yp))
    g = Digraph(tuple(names), tuple(arcs), edge_weights=(1,) * len(arcs))
    sym = SymMulticutInstance(g, tuple(pairs), inst.k, inst.k,
                              multiplicity=(inst.k + 1,) * len(pairs))
    return Translation(sym, tuple(origin), index)


def symcut_to_maxsat(inst: SymMulticutInstance) -> Translation:
    """Arc ``(u, v)`` becomes ``u <= v``; pair ``{u, v}`` becomes ``k + 1`` copies of ``u != v``."""
    if not inst.unweighted:
        raise InputError("symcut_to_maxsat needs an unweighted instance")
    g = inst.graph
    cons = [Constraint("leq", g.names[u], g.names[v]) for u, v in g.edges]
    cons += [Constraint("neq", g.names[u], g.names[v], inst.k + 1) for u, v in inst.pairs]
    pa = PointAlgebraInstance(g.names, tuple(cons), inst.k)
    return Translation(pa, tuple(range(g.m)), dict(g.name_index))


def maxsat_prime_to_dsfes(inst: PointAlgebraInstance) -> Translation:
    """``x < y`` becomes a red arc, ``x <= y`` a plain one; unit weights, ``W = k``."""
    index = {v: i for i, v in enumerate(inst.variables)}
    arcs: list[tuple[int, int]] = []
    red: set[int] = set()
    origin: list[int] = []
    for i, c in enumerate(inst.constraints):
        if c.rel not in ("lt", "leq"):
            raise InputError(f"relation {c.rel!r} is outside {{<, <=}}")
        for _ in range(min(c.mult, inst.k + 1)):
            if c.rel == "lt":
                red.add(len(arcs))
            arcs.append((index[c.x], index[c.y]))
            origin.append(i)
    g = Digraph(inst.variables, tuple(arcs), edge_weights=(1,) * len(arcs), red=frozenset(red))
    return Translation(DSFESInstance(g, inst.k, inst.k, "edge"), tuple(origin), index)


_HOLDS = {"eq": lambda a, b: a == b, "neq": lambda a, b: a != b,
          "lt": lambda a, b: a < b, "leq": lambda a, b: a <= b}


def assignment_from_cut(g: Digraph, Z, variables: dict[str, int]) -> dict[str, int]:
    """Strong-component rank in topological order, per variable."""
    rank = {}
    for i, comp in enumerate(strong_components(g, deleted=Z)):
        for v in comp:
            rank[v] = i
    return {name: rank[v] for name, v in variables.items()}


def violated(inst: PointAlgebraInstance, alpha: dict[str, int]) -> tuple[int, ...]:
    return tuple(i for i, c in enumerate(inst.constraints) if not _HOLDS[c.rel](alpha[c.x], alpha[c.y]))


def _outcome(inst: PointAlgebraInstance, g: Digraph, cut, variables, **stats) -> SolveOutcome:
    bad = violated(inst, assignment_from_cut(g, cut, variables))
    cost = sum(inst.constraints[i].mult for i in bad)
    assert cost <= len(cut), "assignment violates more than the cut pays for"
    return SolveOutcome(True, bad, cost, stats=stats)


def in_lambda_prime(inst: PointAlgebraInstance) -> bool:
    return all(c.rel in ("lt", "leq") for c in inst.constraints)


def solve_maxsat_pa(inst: PointAlgebraInstance, route: str = "auto") -> SolveOutcome:
    """Answer via ``symcut`` (brute force) or ``dsfes`` (only ``<``, ``<=``).

    The witness lists violated constraint indices of a derived assignment;
    its weight is their total multiplicity.
    """
    if route == "auto":
        route = "dsfes" if in_lambda_prime(inst) else "symcut"
    if route == "dsfes":
        tr = maxsat_prime_to_dsfes(inst)
        out = solve_dsfes(tr.instance)
        graph = tr.instance.graph
    elif route == "symcut":
        tr = maxsat_to_symcut(inst)
        out = brute_sym_multicut(tr.instance)
        graph = tr.instance.graph
    else:
        raise InputError(f"unknown route {route!r}")
    if not out.yes:
        return SolveOutcome.no(route=route, **out.stats)
    return _outcome(inst, graph, out.cut, tr.variables, route=route, **out.stats)
