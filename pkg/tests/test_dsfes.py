import itertools
import random

from hypothesis import assume, given
from hypothesis import strategies as st

from wsep.check import check_witness
from wsep.dsfes import (build_layered_gdpc, ordered_partitions, red_cycle_free, skew_to_dsfes,
                        solve_dsfes, solve_dsfvs, solve_skew_multicut)
from wsep.gdpc import check_pairwise_linked, deletable_counts, exact_solve, is_solution
from wsep.generate import gen_dsfes, gen_skew
from wsep.graph import INF, Digraph, strong_components
from wsep.instances import DSFESInstance, SkewMulticutInstance
from wsep.oracles import oracle_dsfes, oracle_dsfvs, oracle_skew
from wsep.transforms import make_red_undeletable


def two_cycle(W):
    g = Digraph(("u", "v"), ((0, 1), (1, 0)), edge_weights=(INF, 3), red=frozenset({0}))
    return DSFESInstance(g, 1, W)


def test_two_cycle_yes():
    out = solve_dsfes(two_cycle(3))
    assert out.yes and out.cut == (1,) and out.weight == 3


def test_two_cycle_over_budget():
    assert not solve_dsfes(two_cycle(2)).yes


def test_no_red_needs_nothing():
    g = Digraph(("a", "b"), ((0, 1), (1, 0)), edge_weights=(1, 1))
    out = solve_dsfes(DSFESInstance(g, 0, 0))
    assert out.yes and out.cut == ()


def vertex_two_cycle(W):
    g = Digraph(("u", "v"), ((0, 1), (1, 0)), vertex_weights=(INF, 3), red=frozenset({0}))
    return DSFESInstance(g, 1, W, "vertex")


def test_dsfvs_two_cycle():
    out = solve_dsfvs(vertex_two_cycle(3))
    assert out.yes and out.cut == (1,)
    assert not solve_dsfvs(vertex_two_cycle(2)).yes


def test_golden_single_arc():
    g = Digraph(("u", "v"), ((0, 1),), edge_weights=(2,))
    red = build_layered_gdpc(g, [[0]], 1, 2)
    h = red.instance
    assert red.layers == 3
    assert h.names == ("u^1", "v^1", "u^2", "v^2", "u^3", "v^3", "s", "t")
    u = {1: 0, 2: 2, 3: 4}
    v = {1: 1, 2: 3, 3: 5}
    s, t = 6, 7
    bundle = [(u[a], v[a]) for a in (1, 2, 3)]
    down = [(x[b], x[a]) for x in (u, v) for a in (1, 2, 3) for b in (1, 2, 3) if a < b]
    attach = [(s, u[1]), (s, u[2]), (u[3], t)]
    assert sorted(h.arcs) == sorted(bundle + down + attach)
    assert len(down) == 6
    assert len(h.bundles) == 1 and h.bundles[0].weight == 2
    assert [h.arcs[a] for a in h.bundles[0].arcs] == bundle
    assert h.clauses == ()
    assert red.bundle_arc == (0,)


def test_red_cross_arcs():
    g = Digraph(("u", "v"), ((0, 1), (1, 0)), edge_weights=(INF, 3), red=frozenset({0}))
    h = build_layered_gdpc(g, [[0], [1]], 1, 3).instance
    name = {n: i for i, n in enumerate(h.names)}
    for a in (1, 2):
        assert (name[f"u^{2 * a}"], name[f"v^{2 * a + 1}"]) in h.arcs


def test_ordered_partition_count():
    # ordered Bell numbers
    assert [sum(1 for _ in ordered_partitions(list(range(n)))) for n in range(5)] == [1, 1, 3, 13, 75]


def test_skew_single_path():
    g = Digraph(("s", "m", "t"), ((0, 1), (1, 2)), edge_weights=(1, 1))
    out = solve_skew_multicut(SkewMulticutInstance(g, (0,), (2,), 1, 1))
    assert out.yes and out.cardinality == 1


def crossing(k):
    g = Digraph(("s1", "t1", "s2", "t2"), ((0, 3),), edge_weights=(1,))
    return SkewMulticutInstance(g, (0, 2), (1, 3), k, 1)


def test_skew_crossing():
    red = skew_to_dsfes(crossing(1))
    assert len(red.graph.red) == 3
    assert red.graph.edge_weights[1:] == (2, 2, 2)
    for k in (0, 1):
        assert solve_skew_multicut(crossing(k)).yes == oracle_skew(crossing(k)).yes == (k == 1)


def scenario(seed):
    """Preprocessed digraph plus a vertex set meeting every red cycle."""
    inst = gen_dsfes(seed, n=3 + seed % 5, red=1 + seed % 3, density=0.5, p_inf=0.1)
    g = make_red_undeletable(inst)[0].graph
    rng = random.Random(seed)
    order = list(range(g.n))
    rng.shuffle(order)
    X = []
    while not red_cycle_free(g, absent=X):
        X.append(order[len(X)])
    assume(1 <= len(X) <= 3)
    return g, sorted(X), inst.k, inst.W


def solutions(g, k, W):
    cands = [e for e in range(g.m) if e not in g.red and g.edge_weight(e) != INF]
    for r in range(min(k, len(cands)) + 1):
        for Z in itertools.combinations(cands, r):
            if sum(g.edge_weight(e) for e in Z) <= W and red_cycle_free(g, Z):
                yield Z


def compatible(g, Z, order):
    where = {v: i for i, c in enumerate(strong_components(g, deleted=Z)) for v in c}
    for block in order:
        if len({where[v] for v in block}) > 1:
            return False
    reps = [where[b[0]] for b in order]
    if len(set(reps)) < len(reps):
        return False
    # strong_components lists components in topological order
    return reps == sorted(reps)


seeds = st.integers(0, 100_000)


@given(seeds)
def test_layered_structure(seed):
    g, X, k, W = scenario(seed)
    for order in ordered_partitions(X):
        red = build_layered_gdpc(g, order, k, W)
        assert check_pairwise_linked(red.instance)
        assert deletable_counts(red.instance) == [2 * len(order) + 1] * len(red.instance.bundles)


@given(seeds)
def test_oracle_solutions_map_forward(seed):
    g, X, k, W = scenario(seed)
    sols = list(solutions(g, k, W))
    for order in ordered_partitions(X):
        red = build_layered_gdpc(g, order, k, W)
        bundle_of = {e: b for b, e in enumerate(red.bundle_arc)}
        for Z in sols:
            if not compatible(g, Z, order):
                continue
            Zp = {a for e in Z if e in bundle_of for a in red.instance.bundles[bundle_of[e]].arcs}
            assert is_solution(red.instance, Zp)


@given(seeds)
def test_gdpc_witness_pulls_back(seed):
    g, X, k, W = scenario(seed)
    answers = []
    for order in ordered_partitions(X):
        red = build_layered_gdpc(g, order, k, W)
        out = exact_solve(red.instance)
        answers.append(out.yes)
        if out.yes:
            assert red_cycle_free(g, [red.bundle_arc[b] for b in out.violated])
    assert any(answers) == any(True for _ in solutions(g, k, W))


@given(seeds)
def test_dsfes_matches_oracle(seed):
    inst = gen_dsfes(seed)
    out = solve_dsfes(inst)
    assert out.yes == oracle_dsfes(inst).yes
    if out.yes:
        assert check_witness(inst, out.cut).ok


@given(seeds)
def test_dsfvs_matches_oracle(seed):
    inst = gen_dsfes(seed, deletion="vertex")
    out = solve_dsfvs(inst)
    assert out.yes == oracle_dsfvs(inst).yes
    if out.yes:
        assert check_witness(inst, out.cut).ok


@given(seeds, st.sampled_from(["edge", "vertex"]))
def test_skew_matches_oracle(seed, deletion):
    inst = gen_skew(seed, deletion=deletion)
    out = solve_skew_multicut(inst)
    assert out.yes == oracle_skew(inst).yes
    if out.yes:
        assert check_witness(inst, out.cut).ok
