"""Hypothesis strategies for small weighted graphs."""

from hypothesis import strategies as st

from wsep.graph import INF, Digraph, Graph

weights = st.one_of(st.integers(1, 4), st.just(INF))


@st.composite
def digraphs(draw, max_n=6, loops=False):
    n = draw(st.integers(1, max_n))
    arc = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    if not loops:
        arc = arc.filter(lambda a: a[0] != a[1])
    arcs = draw(st.lists(arc, max_size=3 * n)) if n > 1 or loops else []
    names = tuple(f"v{i}" for i in range(n))
    return Digraph(names, tuple(arcs), edge_weights=tuple(draw(weights) for _ in arcs))


@st.composite
def graphs(draw, max_n=7, min_n=1):
    n = draw(st.integers(min_n, max_n))
    if n < 2:
        return Graph(("v0",), (), vertex_weights=(draw(weights),), edge_weights=())
    edge = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])
    edges = draw(st.lists(edge, max_size=2 * n))
    names = tuple(f"v{i}" for i in range(n))
    return Graph(names, tuple(edges), vertex_weights=tuple(draw(weights) for _ in range(n)),
                 edge_weights=tuple(draw(weights) for _ in edges))


def closure(n, arcs):
    """Reachability matrix by repeated relaxation until nothing changes."""
    r = [[i == j for j in range(n)] for i in range(n)]
    changed = True
    while changed:
        changed = False
        for u, v in arcs:
            for i in range(n):
                if r[i][u] and not r[i][v]:
                    r[i][v] = True
                    changed = True
    return r
