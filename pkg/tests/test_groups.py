import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wsep.graph import Graph, InputError
from wsep.groups import (LabeledGraph, Sym, Z2R, ZMod, consistent_labeling, group_elements,
                         group_from_spec, untangle, walk_sum)

GROUPS = [ZMod(2), ZMod(5), ZMod(6), Z2R(3), Sym(3), Sym(4)]


@pytest.mark.parametrize("grp", GROUPS, ids=lambda g: g.spec)
def test_group_laws(grp):
    rng = random.Random(grp.spec)
    e = grp.identity()
    for _ in range(1000):
        a, b, c = (grp.random_element(rng) for _ in range(3))
        assert grp.eq(grp.op(grp.op(a, b), c), grp.op(a, grp.op(b, c)))
        assert grp.eq(grp.op(a, e), a) and grp.eq(grp.op(e, a), a)
        assert grp.is_identity(grp.op(a, grp.inv(a)))
        assert grp.is_identity(grp.op(grp.inv(a), a))
        assert (grp.canonical(a) == grp.canonical(b)) == (a == b)
        assert grp.eq(grp.parse(grp.canonical(a)), a)


def test_sym_not_commutative():
    s3 = Sym(3)
    a, b = (1, 0, 2), (0, 2, 1)
    assert not s3.eq(s3.op(a, b), s3.op(b, a))


def test_z2r_units_have_one_bit():
    grp = Z2R(5)
    for i in range(5):
        assert bin(grp.unit(i)).count("1") == 1


def test_spec_parsing():
    assert group_from_spec("zm", 4).spec == "zm 4"
    with pytest.raises(InputError):
        group_from_spec("cyclic", 4)
    with pytest.raises(InputError):
        ZMod(3).parse("7")


def cycle_graph(n, grp, label):
    edges = tuple((i, (i + 1) % n) for i in range(n))
    labels = tuple((label, grp.inv(label)) for _ in edges)
    return LabeledGraph(Graph(tuple(f"c{i}" for i in range(n)), edges), grp, labels)


def test_walk_sum_empty():
    g = cycle_graph(3, ZMod(5), 2)
    assert walk_sum(g, [0]) == 0


def test_walk_there_and_back():
    g = cycle_graph(3, ZMod(5), 2)
    assert walk_sum(g, [0, 0, 1, 0, 0]) == 0


def test_walk_invalid():
    g = cycle_graph(3, ZMod(5), 2)
    with pytest.raises(InputError):
        walk_sum(g, [0, 1, 1])
    with pytest.raises(InputError):
        walk_sum(g, [0, 0])


def k4_z5(seed):
    rng = random.Random(seed)
    grp = ZMod(5)
    edges = tuple(itertools.combinations(range(4), 2))
    labels = []
    for _ in edges:
        a = rng.randrange(5)
        labels.append((a, grp.inv(a)))
    return LabeledGraph(Graph(("a", "b", "c", "d"), edges), grp, tuple(labels))


def closed_walks(g, length, rng, count):
    inc = g.incidence()
    out = []
    while len(out) < count:
        v = rng.randrange(g.base.n)
        walk = [v]
        for _ in range(length):
            if not inc[walk[-1]]:
                break
            e = rng.choice(inc[walk[-1]])
            walk += [e, g.other(e, walk[-1])]
        # close it up along any edge back to the start if possible
        if walk[-1] == walk[0] and len(walk) > 1:
            out.append(walk)
    return out


def rotations(walk):
    vs, es = walk[0::2][:-1], walk[1::2]
    for i in range(len(es)):
        v2, e2 = vs[i:] + vs[:i], es[i:] + es[:i]
        rot = []
        for v, e in zip(v2, e2):
            rot += [v, e]
        yield rot + [v2[0]]


@pytest.mark.parametrize("seed", range(5))
def test_null_status_independent_of_start_and_direction(seed):
    g = k4_z5(seed)
    rng = random.Random(seed)
    for walk in closed_walks(g, 6, rng, 30):
        null = walk_sum(g, walk) == 0
        for rot in rotations(walk):
            assert (walk_sum(g, rot) == 0) == null
            assert (walk_sum(g, rot[::-1]) == 0) == null


def test_identity_labels_consistent():
    g = cycle_graph(4, ZMod(3), 0)
    res = consistent_labeling(g)
    assert res.ok and set(res.phi.values()) == {0}


def test_tree_edge_consistent():
    g = LabeledGraph(Graph(("a", "b"), ((0, 1),)), ZMod(3), ((1, 2),))
    res = consistent_labeling(g)
    assert res.ok
    assert res.phi[1] == (res.phi[0] + 1) % 3


def test_odd_cycle_z2():
    g = cycle_graph(5, ZMod(2), 1)
    res = consistent_labeling(g)
    assert not res.ok
    assert walk_sum(g, res.cycle) != 0
    assert res.cycle[0] == res.cycle[-1]


def simple_cycles(g):
    """Every simple cycle as a closed walk, found by DFS from its least vertex."""
    inc = g.incidence()
    found = []

    def dfs(start, walk, used_v, used_e):
        u = walk[-1]
        for e in inc[u]:
            if e in used_e:
                continue
            w = g.other(e, u)
            if w == start and len(used_e) >= 1:
                found.append(walk + [e, w])
            elif w > start and w not in used_v:
                dfs(start, walk + [e, w], used_v | {w}, used_e | {e})

    for s in range(g.base.n):
        dfs(s, [s], {s}, frozenset())
    return found


@st.composite
def labeled_graphs(draw, grp, max_n=6):
    n = draw(st.integers(1, max_n))
    pool = group_elements(grp)
    edge = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])
    edges = draw(st.lists(edge, max_size=2 * n)) if n > 1 else []
    labels = []
    for _ in edges:
        a = draw(st.sampled_from(pool))
        labels.append((a, grp.inv(a)))
    return LabeledGraph(Graph(tuple(f"v{i}" for i in range(n)), tuple(edges)), grp, tuple(labels))


@pytest.mark.parametrize("grp", [ZMod(2), ZMod(3), Z2R(2), Sym(3)], ids=lambda g: g.spec)
@given(data=st.data())
def test_labeling_iff_no_nonnull_simple_cycle(grp, data):
    g = data.draw(labeled_graphs(grp))
    res = consistent_labeling(g)
    nonnull = any(not grp.is_identity(walk_sum(g, c)) for c in simple_cycles(g))
    assert res.ok == (not nonnull)
    if res.ok:
        for e, (u, v) in enumerate(g.base.edges):
            assert grp.eq(res.phi[v], grp.op(res.phi[u], g.psi(e, u)))
    else:
        assert not grp.is_identity(walk_sum(g, res.cycle))


def test_untangle_empty_x():
    g = LabeledGraph(Graph(("a", "b", "c"), ((0, 1), (1, 2))), ZMod(4), ((1, 3), (2, 2)))
    out = untangle(g, [])
    assert out.labels == ((0, 0), (0, 0))


def test_untangle_star_periphery():
    g = LabeledGraph(Graph(("h", "a", "b"), ((0, 1), (0, 2))), ZMod(4), ((1, 3), (2, 2)))
    out = untangle(g, [0])
    assert out.labels == g.labels


def test_untangle_requires_null_free_rest():
    with pytest.raises(InputError):
        untangle(cycle_graph(3, ZMod(2), 1), [])


@pytest.mark.parametrize("seed", range(20))
def test_untangle_preserves_null_status(seed):
    rng = random.Random(seed)
    grp = ZMod(6)
    n = 7
    edges, labels = [], []
    for _ in range(10):
        u, v = rng.sample(range(n), 2)
        a = rng.randrange(6)
        edges.append((u, v))
        labels.append((a, grp.inv(a)))
    g = LabeledGraph(Graph(tuple(f"v{i}" for i in range(n)), tuple(edges)), grp, tuple(labels))
    X = []
    while not consistent_labeling(g, removed=X).ok:
        X.append(rng.choice([v for v in range(n) if v not in X]))
    out = untangle(g, X)
    for e, (u, v) in enumerate(out.base.edges):
        if u not in X and v not in X:
            assert out.labels[e] == (0, 0)
    for walk in closed_walks(g, 8, rng, 100):
        assert (walk_sum(g, walk) == 0) == (walk_sum(out, walk) == 0)
