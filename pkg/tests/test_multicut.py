import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from state_oracles import random_branch_state, state_answer, state_feasible

from wsep.check import check_witness
from wsep.gdpc import check_2k2_free, check_b_bounded, exact_solve
from wsep.generate import gen_multicut, gen_mwc
from wsep.graph import INF, Graph
from wsep.instances import MulticutInstance, MultiwayCutInstance
from wsep.multicut import (BranchState, EngineContext, _depth_cap, branch_engine, apply_reduction_rules, bipedal_to_gdpc,
                           check_shattering, find_shattering_set, immediate_verdict,
                           progress_measure, reduction_step, set_partitions, solve_multicut,
                           solve_multiway_cut)
from wsep.oracles import oracle_multicut, oracle_multiway_cut


def path(W):
    g = Graph(("a", "v", "b"), ((0, 1), (1, 2)), vertex_weights=(INF, 2, INF))
    return MulticutInstance(g, ((0, 2),), 1, W)


def test_path_yes_at_weight_two():
    out = solve_multicut(path(2))
    assert out.yes and out.cut == (1,) and out.weight == 2


def test_path_no_at_weight_one():
    assert not solve_multicut(path(1)).yes


def test_adjacent_undeletable_pair_is_no():
    g = Graph(("a", "b"), ((0, 1),), vertex_weights=(INF, INF))
    for k in range(3):
        assert not solve_multicut(MulticutInstance(g, ((0, 1),), k, 10)).yes


def test_edge_variant_on_path():
    g = Graph(("a", "b", "c"), ((0, 1), (1, 2)), edge_weights=(3, 1))
    out = solve_multicut(MulticutInstance(g, ((0, 2),), 1, 1, "edge"))
    assert out.yes and out.cut == (1,)


def state(adj, X, pairs, k, W, weight=None):
    adj = {v: set(ns) for v, ns in adj.items()}
    for v in list(adj):
        for w in adj[v]:
            adj.setdefault(w, set()).add(v)
    weight = weight or {v: (INF if v in X else 1) for v in adj}
    return BranchState(adj, weight, list(pairs), set(X), k, W)


def test_rule2_budget_exhausted():
    s = state({0: {1}, 1: {2}}, {0, 2}, [(0, 2)], 0, 5)
    assert immediate_verdict(s) == ("no", 2)


def test_rule2_adjacent_x():
    s = state({0: {1}}, {0, 1}, [(0, 1)], 2, 5)
    assert immediate_verdict(s) == ("no", 2)


def test_rule3_too_many_nontrivial():
    s = state({0: {10}, 10: {1}, 1: {11}, 11: {0}}, {0, 1}, [(0, 1)], 1, 5)
    assert immediate_verdict(s) == ("no", 3)


def test_rule4_cut_too_large():
    # three disjoint paths x - a - y, but only one nontrivial component each
    s = state({0: {10, 11}, 10: {1}, 11: {1}}, {0, 1}, [(0, 1)], 1, 5)
    s.adj[10].add(11)
    s.adj[11].add(10)
    assert immediate_verdict(s) == ("no", 4)


def star_state(k):
    # hub 9 adjacent to three independent X vertices
    return state({9: {0, 1, 2}}, {0, 1, 2}, [(0, 1)], k, 5)


def test_rule5_deletes_hub():
    step = reduction_step(star_state(1))
    assert step.rule == 5 and step.kind == "reduced"
    assert step.state.deleted == [9] and step.state.k == 0
    res = apply_reduction_rules(star_state(1))
    assert res.kind == "yes" and res.fired == [5, 1]


def test_rule5_undeletable_hub_is_no():
    s = star_state(1)
    s.weight[9] = INF
    assert reduction_step(s).kind == "no"


def test_rule6_drops_irrelevant_component():
    s = state({0: {10}, 10: {1}, 20: {21}}, {0, 1}, [(0, 1)], 1, 5)
    step = reduction_step(s)
    assert step.rule == 6
    assert set(step.state.adj) == {0, 1, 10}


def test_rule7_large_x():
    # two paths of four, each vertex hanging off its own X vertex, sharing x3
    adj = {}
    for base, xs in ((10, (0, 1, 2, 3)), (20, (3, 4, 5, 6))):
        for i, x in enumerate(xs):
            adj.setdefault(base + i, set()).add(x)
            if i:
                adj[base + i].add(base + i - 1)
    s = state(adj, range(7), [(0, 6)], 2, 9)
    assert immediate_verdict(s) is None
    step = reduction_step(s)
    assert (step.rule, step.kind) == (7, "no")
    assert state_answer(s) is None


def test_bipedal_hand_off():
    s = state({0: {10}, 10: {1}}, {0, 1}, [(0, 1)], 1, 5)
    assert reduction_step(s).kind == "bipedal"


def legs3():
    # x1 - a - b, b adjacent to x2 and x3
    return state({0: {10}, 10: {11}, 11: {1, 2}}, {0, 1, 2}, [(0, 1)], 2, 9)


def test_shattering_single_vertex():
    s = star_state(1)
    ok, verdicts = check_shattering(s, [9], (9,))
    assert ok and len(verdicts) == 3
    assert all(v == "rule2" for _, v in verdicts)


def test_non_shattering_rejected():
    s = legs3()
    assert not check_shattering(s, [10, 11], (10,))[0]
    assert not check_shattering(s, [10, 11], ())[0]


def test_search_finds_smallest():
    cert = find_shattering_set(legs3(), [10, 11])
    assert cert.B == (11,) and not cert.fallback


def test_depth_cap_within_cubic():
    assert _depth_cap(0) == 0
    for k in range(1, 8):
        assert _depth_cap(k) <= 4 * k ** 3


def bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


@pytest.mark.parametrize("n", range(7))
def test_set_partition_count(n):
    parts = list(set_partitions(list(range(n))))
    assert len(parts) == bell(n)
    keys = {tuple(sorted(tuple(sorted(b)) for b in p)) for p in parts}
    assert len(keys) == len(parts)


def test_mwc_star():
    g = Graph(("c", "t1", "t2", "t3"), ((0, 1), (0, 2), (0, 3)), vertex_weights=(1, INF, INF, INF))
    out = solve_multiway_cut(MultiwayCutInstance(g, (1, 2, 3), 1, 1))
    assert out.yes and out.cut == (0,)


def test_mwc_terminal_triangle():
    g = Graph(("a", "b", "c"), ((0, 1), (1, 2), (0, 2)), vertex_weights=(1, 1, 1))
    out = solve_multiway_cut(MultiwayCutInstance(g, (0, 1, 2), 2, 2), undeletable_terminals=True)
    assert not out.yes


def collect(inst):
    nodes, leaves = [], []
    solve_multicut(inst, on_node=lambda s, d: nodes.append(s.copy()),
                   on_gdpc=lambda g, s: leaves.append((g, s.copy())))
    return nodes, leaves


def multicut_seeds():
    return st.integers(0, 100_000).map(lambda s: gen_multicut(s, n=6 + s % 3, k=1 + s % 3,
                                                              pairs=2 + s % 2, p_inf=0.3))


@given(multicut_seeds())
def test_rules_preserve_answer(inst):
    nodes, _ = collect(inst)
    for s in nodes[:20]:
        step = reduction_step(s)
        before = state_answer(s) is not None
        if step.kind == "yes":
            assert state_feasible(s, (), multiway=False)
        elif step.kind == "no":
            assert not before
        elif step.kind == "reduced":
            assert (state_answer(step.state) is not None) == before


@given(multicut_seeds())
def test_bipedal_leaves(inst):
    _, leaves = collect(inst)
    for g, s in leaves[:20]:
        assert all(check_2k2_free(g))
        assert check_b_bounded(g, 4)
        red = bipedal_to_gdpc(s)
        assert exact_solve(red.instance).yes == (state_answer(s) is not None)


@given(st.integers(0, 100_000))
def test_engine_on_working_states(seed):
    s = random_branch_state(seed)
    ctx = EngineContext()
    found = branch_engine(s.copy(), ctx)
    # YES must be a genuine multicut; a solution that also splits X must be found
    if found is not None:
        assert state_feasible(s, found, multiway=False)
        assert sum(s.weight[v] for v in found) <= s.W and len(found) <= s.k
    if state_answer(s) is not None:
        assert found is not None
    assert ctx.stats["max_depth"] <= 4 * s.k ** 3


@given(st.integers(0, 100_000))
def test_single_rules_on_working_states(seed):
    s = random_branch_state(seed)
    while True:
        step = reduction_step(s)
        before = state_answer(s) is not None
        if step.kind == "yes":
            assert state_feasible(s, (), multiway=False)
        elif step.kind == "no":
            assert not before
        elif step.kind == "bipedal":
            red = bipedal_to_gdpc(s)
            assert exact_solve(red.instance).yes == before
        if step.kind != "reduced":
            break
        assert (state_answer(step.state) is not None) == before
        s = step.state


@given(st.integers(0, 100_000), st.sampled_from(["vertex", "edge"]))
def test_matches_oracle(seed, deletion):
    inst = gen_multicut(seed, deletion=deletion)
    out = solve_multicut(inst)
    ref = oracle_multicut(inst)
    assert out.yes == ref.yes
    if out.yes:
        assert check_witness(inst, out.cut).ok


@given(st.integers(0, 100_000))
def test_mwc_matches_oracle(seed):
    inst = gen_mwc(seed)
    out = solve_multiway_cut(inst)
    assert out.yes == oracle_multiway_cut(inst).yes
    if out.yes:
        assert check_witness(inst, out.cut).ok
