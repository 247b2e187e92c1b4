"""Text instance format: parsing and canonical serialization.

One record per line, ``#`` starts a comment line. The header
``p <tag> <n> <m> <k> <W>`` fixes the problem and decides which record
kinds are legal. Vertices are declared with ``v <name>`` in id order; a
vertex without a ``w`` line, or an edge without a weight, is undeletable.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .gdpc import Bundle, GdpcInstance
from .graph import INF, Digraph, Graph, InputError
from .groups import GroupOracle, LabeledGraph, group_from_spec
from .instances import (RELATIONS, Constraint, DSFESInstance, GroupFVSInstance, MulticutInstance,
                        MultiwayCutInstance, PointAlgebraInstance, SkewMulticutInstance,
                        SubsetFVSInstance, SymMulticutInstance)


@dataclass(frozen=True)
class TagInfo:
    deletion: str  # "vertex" or "edge"
    directed: bool
    terminals: str = ""  # "pairs", "set" or ""
    red: bool = False
    labels: bool = False


GRAPH_TAGS = {
    "multicut": TagInfo("vertex", False, "pairs"),
    "multicut-edge": TagInfo("edge", False, "pairs"),
    "mwc": TagInfo("vertex", False, "set"),
    "mwc-edge": TagInfo("edge", False, "set"),
    "gfvs": TagInfo("vertex", False, labels=True),
    "gfes": TagInfo("edge", False, labels=True),
    "sfvs": TagInfo("vertex", False, red=True),
    "sfes": TagInfo("edge", False, red=True),
    "dsfes": TagInfo("edge", True, red=True),
    "dsfvs": TagInfo("vertex", True, red=True),
    "skew": TagInfo("edge", True, "pairs"),
    "skew-vertex": TagInfo("vertex", True, "pairs"),
    "symcut": TagInfo("edge", True, "pairs"),
}
TAGS = tuple(GRAPH_TAGS) + ("gdpc", "maxsat-pa")


def format_weight(w) -> str:
    return "inf" if w == INF else str(w)


def _weight(tok: str, allow_zero: bool = False):
    if tok == "inf":
        return INF
    try:
        w = int(tok)
    except ValueError:
        raise InputError(f"bad weight {tok!r}") from None
    if w < (0 if allow_zero else 1):
        raise InputError(f"weight out of range: {tok}")
    return w


def _int(tok: str, what: str, low: int = 0) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise InputError(f"bad {what} {tok!r}") from None
    if v < low:
        raise InputError(f"{what} must be >= {low}, got {v}")
    return v


def _records(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line.split()


class _Names:
    def __init__(self):
        self.names: list[str] = []
        self.index: dict[str, int] = {}

    def declare(self, name: str) -> None:
        if name in self.index:
            raise InputError(f"duplicate vertex {name!r}")
        self.index[name] = len(self.names)
        self.names.append(name)

    def __call__(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise InputError(f"undeclared vertex {name!r}") from None


def parse(path) -> object:
    return parse_text(Path(path).read_text())


def parse_text(text: str) -> object:
    recs = list(_records(text))
    if not recs or recs[0][1][0] != "p" or len(recs[0][1]) < 2:
        raise InputError("line 1: expected header 'p <problem> ...'")
    no, head = recs[0]
    tag = head[1]
    if tag not in TAGS:
        raise InputError(f"line {no}: unknown problem tag {tag!r}")
    body = recs[1:]
    try:
        if tag == "gdpc":
            return _parse_gdpc(head, body)
        if tag == "maxsat-pa":
            return _parse_maxsat(head, body)
        return _parse_graph(tag, head, body)
    except InputError as exc:
        msg = str(exc)
        if not msg.startswith("line "):
            msg = f"line {no}: {msg}"
        raise InputError(msg) from None


def _at(no: int, fn, *args):
    try:
        return fn(*args)
    except InputError as exc:
        raise InputError(f"line {no}: {exc}") from None


def _header(head: list[str], fields: int):
    if len(head) != fields:
        raise InputError(f"header needs {fields - 1} fields after 'p'")


def _parse_graph(tag: str, head: list[str], body) -> object:
    info = GRAPH_TAGS[tag]
    _header(head, 6)
    n = _int(head[2], "vertex count")
    m = _int(head[3], "edge count")
    k = _int(head[4], "k")
    W = _weight(head[5], allow_zero=True)
    names = _Names()
    vweights: dict[int, object] = {}
    edges, eweights, red = [], [], set()
    pairs, mults, tset = [], [], []
    group: GroupOracle | None = None
    label_lines: dict[int, tuple[int, str, str]] = {}
    edge_kind = "a" if info.directed else "e"
    for no, rec in body:
        kind, args = rec[0], rec[1:]
        if kind == "v" and len(args) == 1:
            _at(no, names.declare, args[0])
        elif kind == "w" and info.deletion == "vertex" and len(args) == 2:
            v = _at(no, names, args[0])
            if v in vweights:
                raise InputError(f"line {no}: second weight for {args[0]!r}")
            vweights[v] = _at(no, _weight, args[1])
        elif kind == edge_kind and len(args) >= 2:
            u, v = _at(no, names, args[0]), _at(no, names, args[1])
            extra = list(args[2:])
            is_red = bool(extra) and extra[-1] == "red"
            if is_red:
                if not info.red:
                    raise InputError(f"line {no}: red marks are not used by {tag}")
                extra.pop()
                red.add(len(edges))
            if extra and info.deletion == "vertex":
                raise InputError(f"line {no}: {tag} takes vertex weights, not edge weights")
            if len(extra) > 1:
                raise InputError(f"line {no}: too many fields")
            if not info.directed and u == v and tag in ("gfvs", "gfes", "sfvs", "sfes"):
                raise InputError(f"line {no}: self-loops are not allowed in {tag}")
            edges.append((u, v))
            eweights.append(_at(no, _weight, extra[0]) if extra else INF)
        elif kind == "t" and info.terminals == "pairs" and len(args) in (2, 3):
            s, t = _at(no, names, args[0]), _at(no, names, args[1])
            if len(args) == 3:
                if tag != "symcut":
                    raise InputError(f"line {no}: pair multiplicity is only used by symcut")
                mults.append(_at(no, _int, args[2], "multiplicity", 1))
            elif tag == "symcut":
                mults.append(None)
            pairs.append((s, t))
        elif kind == "T" and info.terminals == "set" and len(args) == 1:
            tset.append(_at(no, names, args[0]))
        elif kind == "group" and info.labels and len(args) == 2:
            if group is not None:
                raise InputError(f"line {no}: second group line")
            group = _at(no, group_from_spec, args[0], _int(args[1], "group parameter"))
        elif kind == "l" and info.labels and len(args) == 3:
            e = _at(no, _int, args[0], "edge index")
            if e in label_lines:
                raise InputError(f"line {no}: second label for edge {e}")
            label_lines[e] = (no, args[1], args[2])
        else:
            raise InputError(f"line {no}: unexpected record {' '.join(rec)!r} for {tag}")
    if len(names.names) != n:
        raise InputError(f"header declares {n} vertices, found {len(names.names)}")
    if len(edges) != m:
        raise InputError(f"header declares {m} edges, found {len(edges)}")
    cls = Digraph if info.directed else Graph
    vw = tuple(vweights.get(v, INF) for v in range(n)) if info.deletion == "vertex" else None
    ew = tuple(eweights) if info.deletion == "edge" else None
    g = cls(tuple(names.names), tuple(edges), vertex_weights=vw, edge_weights=ew,
            red=frozenset(red))
    if info.labels:
        if group is None:
            raise InputError("missing 'group' line")
        labels = []
        for e in range(m):
            if e in label_lines:
                no, a, b = label_lines.pop(e)
                labels.append((_at(no, group.parse, a), _at(no, group.parse, b)))
            else:
                labels.append((group.identity(), group.identity()))
        if label_lines:
            e, (no, _, _) = min(label_lines.items())
            raise InputError(f"line {no}: label for unknown edge {e}")
        lg = LabeledGraph(g, group, tuple(labels))
        return GroupFVSInstance(lg, k, W, info.deletion)
    if tag in ("multicut", "multicut-edge"):
        return MulticutInstance(g, tuple(pairs), k, W, info.deletion)
    if tag in ("mwc", "mwc-edge"):
        return MultiwayCutInstance(g, tuple(tset), k, W, info.deletion)
    if tag in ("sfvs", "sfes"):
        return SubsetFVSInstance(g, k, W, info.deletion)
    if tag in ("dsfes", "dsfvs"):
        return DSFESInstance(g, k, W, info.deletion)
    if tag in ("skew", "skew-vertex"):
        return SkewMulticutInstance(g, tuple(s for s, _ in pairs), tuple(t for _, t in pairs),
                                    k, W, info.deletion)
    if any(x is not None for x in mults):
        mult = tuple(x if x is not None else 1 for x in mults)
    else:
        mult = None
    return SymMulticutInstance(g, tuple(pairs), k, W, multiplicity=mult)


def _parse_gdpc(head: list[str], body) -> GdpcInstance:
    _header(head, 6)
    n = _int(head[2], "vertex count")
    m = _int(head[3], "arc count")
    k = _int(head[4], "k")
    W = _weight(head[5], allow_zero=True)
    names = _Names()
    s = t = None
    arcs, clauses, bundles = [], [], []
    owner: dict[str, int] = {}
    for no, rec in body:
        kind, args = rec[0], rec[1:]
        if kind == "v" and len(args) == 1:
            _at(no, names.declare, args[0])
        elif kind == "s" and len(args) == 1 and s is None:
            s = _at(no, names, args[0])
        elif kind == "sink" and len(args) == 1 and t is None:
            t = _at(no, names, args[0])
        elif kind == "a" and len(args) == 2:
            arcs.append((_at(no, names, args[0]), _at(no, names, args[1])))
        elif kind == "c" and len(args) == 2:
            clauses.append((_at(no, names, args[0]), _at(no, names, args[1])))
        elif kind == "b" and len(args) >= 1:
            weight = _at(no, _int, args[0], "bundle weight", 1)
            b_arcs, b_clauses = [], []
            for tok in args[1:]:
                if len(tok) < 2 or tok[0] not in "ac" or not tok[1:].isdigit():
                    raise InputError(f"line {no}: bundle member {tok!r} is not a<i> or c<i>")
                if tok in owner:
                    raise InputError(f"line {no}: {tok} already in bundle {owner[tok]}; "
                                     "bundles must be pairwise disjoint")
                owner[tok] = len(bundles)
                (b_arcs if tok[0] == "a" else b_clauses).append(int(tok[1:]))
            bundles.append(Bundle(weight, tuple(b_arcs), tuple(b_clauses)))
        else:
            raise InputError(f"line {no}: unexpected record {' '.join(rec)!r} for gdpc")
    if s is None or t is None:
        raise InputError("gdpc needs 's <v>' and 'sink <v>' records")
    if len(names.names) != n:
        raise InputError(f"header declares {n} vertices, found {len(names.names)}")
    if len(arcs) != m:
        raise InputError(f"header declares {m} arcs, found {len(arcs)}")
    return GdpcInstance(tuple(names.names), s, t, tuple(arcs), tuple(clauses), tuple(bundles), k, W)


def _parse_maxsat(head: list[str], body) -> PointAlgebraInstance:
    _header(head, 5)
    nv = _int(head[2], "variable count")
    nc = _int(head[3], "constraint count")
    k = _int(head[4], "k")
    names = _Names()
    cons = []
    for no, rec in body:
        kind, args = rec[0], rec[1:]
        if kind == "v" and len(args) == 1:
            _at(no, names.declare, args[0])
        elif kind in RELATIONS and len(args) in (2, 3):
            _at(no, names, args[0])
            _at(no, names, args[1])
            mult = _at(no, _int, args[2], "multiplicity", 1) if len(args) == 3 else 1
            cons.append(Constraint(kind, args[0], args[1], mult))
        else:
            raise InputError(f"line {no}: unexpected record {' '.join(rec)!r} for maxsat-pa")
    if len(names.names) != nv:
        raise InputError(f"header declares {nv} variables, found {len(names.names)}")
    if len(cons) != nc:
        raise InputError(f"header declares {nc} constraints, found {len(cons)}")
    return PointAlgebraInstance(tuple(names.names), tuple(cons), k)


def serialize(inst) -> str:
    """Canonical text for an instance; ``parse_text`` inverts it exactly."""
    if isinstance(inst, GdpcInstance):
        return _ser_gdpc(inst)
    if isinstance(inst, PointAlgebraInstance):
        lines = [f"p maxsat-pa {len(inst.variables)} {len(inst.constraints)} {inst.k}"]
        lines += [f"v {x}" for x in inst.variables]
        for c in inst.constraints:
            lines.append(f"{c.rel} {c.x} {c.y}" + (f" {c.mult}" if c.mult != 1 else ""))
        return "\n".join(lines) + "\n"
    tag = inst.problem
    info = GRAPH_TAGS[tag]
    g = inst.graph
    lines = [f"p {tag} {g.n} {g.m} {inst.k} {format_weight(inst.W)}"]
    if info.labels:
        lines.append(f"group {inst.labeled.group.spec}")
    lines += [f"v {name}" for name in g.names]
    if info.deletion == "vertex":
        lines += [f"w {g.names[v]} {format_weight(g.vertex_weight(v))}" for v in range(g.n)]
    kind = "a" if info.directed else "e"
    for e, (u, v) in enumerate(g.edges):
        rec = f"{kind} {g.names[u]} {g.names[v]}"
        if info.deletion == "edge":
            rec += f" {format_weight(g.edge_weight(e))}"
        if info.red and e in g.red:
            rec += " red"
        lines.append(rec)
    if info.labels:
        grp = inst.labeled.group
        for e, (a, b) in enumerate(inst.labeled.labels):
            lines.append(f"l {e} {grp.canonical(a)} {grp.canonical(b)}")
    if tag in ("multicut", "multicut-edge"):
        lines += [f"t {g.names[s]} {g.names[t]}" for s, t in inst.pairs]
    elif tag in ("mwc", "mwc-edge"):
        lines += [f"T {g.names[v]}" for v in inst.terminals]
    elif tag in ("skew", "skew-vertex"):
        lines += [f"t {g.names[s]} {g.names[t]}" for s, t in zip(inst.sources, inst.sinks)]
    elif tag == "symcut":
        for i, (u, v) in enumerate(inst.pairs):
            rec = f"t {g.names[u]} {g.names[v]}"
            if inst.multiplicity is not None:
                rec += f" {inst.multiplicity[i]}"
            lines.append(rec)
    return "\n".join(lines) + "\n"


def _ser_gdpc(inst: GdpcInstance) -> str:
    nm = inst.names
    lines = [f"p gdpc {inst.n} {len(inst.arcs)} {inst.k} {format_weight(inst.W)}"]
    lines += [f"v {x}" for x in nm]
    lines += [f"s {nm[inst.s]}", f"sink {nm[inst.t]}"]
    lines += [f"a {nm[u]} {nm[v]}" for u, v in inst.arcs]
    lines += [f"c {nm[u]} {nm[v]}" for u, v in inst.clauses]
    for b in inst.bundles:
        members = [f"a{a}" for a in b.arcs] + [f"c{c}" for c in b.clauses]
        lines.append(" ".join(["b", str(b.weight)] + members))
    return "\n".join(lines) + "\n"
