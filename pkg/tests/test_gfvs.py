import pytest
from hypothesis import given
from hypothesis import strategies as st
from state_oracles import (extension_answer, gfvs_state_answer, random_gfvs_state,
                           simple_external_values)

from wsep.check import check_witness
from wsep.generate import GROUPS, gen_gfvs, gen_sfvs
from wsep.gfvs import (GfvsHooks, GfvsState, enumerate_labelings, extend_labeling,
                       external_values,
                       force_vertices, gamma_cap, solve_disjoint, solve_gfvs, solve_sfvs)
from wsep.graph import INF, Graph
from wsep.groups import LabeledGraph, ZMod
from wsep.instances import GroupFVSInstance, SubsetFVSInstance
from wsep.oracles import oracle_gfvs, oracle_sfvs


def c5(label):
    g = Graph(tuple(f"c{i}" for i in range(5)), tuple((i, (i + 1) % 5) for i in range(5)),
              vertex_weights=(1,) * 5)
    return LabeledGraph(g, ZMod(2), ((label, label),) * 5)


def test_odd_cycle_needs_one_vertex():
    out = solve_gfvs(GroupFVSInstance(c5(1), 1, 1))
    assert out.yes and out.cardinality == 1


def test_odd_cycle_zero_budget():
    assert not solve_gfvs(GroupFVSInstance(c5(1), 0, 0)).yes


def test_identity_labels_need_nothing():
    out = solve_gfvs(GroupFVSInstance(c5(0), 0, 0))
    assert out.yes and out.cut == ()


def test_gamma_cap_values():
    assert [gamma_cap(k) for k in range(4)] == [2, 6, 74, 434]


def test_single_x_one_labeling():
    s = random_gfvs_state(3)
    s = GfvsState(s.g, s.weight, frozenset([min(s.X)]), s.dead, s.k, s.W)
    labs = list(enumerate_labelings(s))
    assert len(labs) == 1
    assert labs[0] == {min(s.X): s.g.group.identity()}


def triangle(red):
    g = Graph(("a", "b", "c"), ((0, 1), (1, 2), (2, 0)), vertex_weights=(1, 1, 1),
              red=frozenset(red))
    return SubsetFVSInstance(g, 1, 1)


def test_sfvs_red_triangle():
    out = solve_sfvs(triangle({0}))
    assert out.yes and out.cardinality == 1


def test_sfvs_no_red():
    out = solve_sfvs(triangle(()))
    assert out.yes and out.cut == ()


def test_sfes_red_triangle():
    g = Graph(("a", "b", "c"), ((0, 1), (1, 2), (2, 0)), edge_weights=(5, 1, 5), red=frozenset({0}))
    out = solve_sfvs(SubsetFVSInstance(g, 1, 1, "edge"))
    assert out.yes and out.cut == (1,)


def test_undeletable_cycle():
    g = Graph(("a", "b", "c"), ((0, 1), (1, 2), (2, 0)), vertex_weights=(INF,) * 3)
    lg = LabeledGraph(g, ZMod(3), ((1, 2), (0, 0), (0, 0)))
    assert not solve_gfvs(GroupFVSInstance(lg, 3, 9)).yes


seeds = st.integers(0, 100_000)


@given(seeds)
def test_forcing_preserves_answer(seed):
    s = random_gfvs_state(seed)
    forced = force_vertices(s)
    before = gfvs_state_answer(s) is not None
    if forced is None:
        assert not before
    else:
        assert (gfvs_state_answer(forced) is not None) == before


@given(seeds, st.sampled_from(["z2", "z3", "s3"]))
def test_gamma_matches_path_enumeration(seed, group):
    s = random_gfvs_state(seed, group)
    gamma = external_values(s)
    grp = s.g.group
    for (x, y), vals in gamma.items():
        assert {grp.canonical(v) for v in vals} == set(simple_external_values(s, x, y))


@given(seeds, st.sampled_from(["z2", "z3", "s3"]))
def test_disjoint_solver_matches_state_oracle(seed, group):
    s = random_gfvs_state(seed, group)
    found = solve_disjoint(s.g, s.weight, s.X, s.dead, s.k, s.W, GfvsHooks())
    ref = gfvs_state_answer(s)
    assert (found is not None) == (ref is not None)


@given(seeds)
def test_extension_per_labeling(seed):
    s = force_vertices(random_gfvs_state(seed))
    if s is None:
        return
    seen = []
    hooks = GfvsHooks(on_mwc=lambda st_, phi0, prob, out: seen.append((st_, phi0, out.yes)))
    for phi0 in enumerate_labelings(s):
        extend_labeling(s, phi0, hooks.mwc_solver, hooks.on_mwc)
    for st_, phi0, yes in seen:
        assert yes == (extension_answer(st_, phi0) is not None)


@pytest.mark.parametrize("group", sorted(GROUPS))
@given(seed=seeds)
def test_gfvs_matches_oracle(group, seed):
    inst = gen_gfvs(seed, group=group)
    out = solve_gfvs(inst)
    assert out.yes == oracle_gfvs(inst).yes
    if out.yes:
        assert check_witness(inst, out.cut).ok


@given(seeds)
def test_gfes_matches_oracle(seed):
    inst = gen_gfvs(seed, group="z3", deletion="edge")
    out = solve_gfvs(inst)
    assert out.yes == oracle_gfvs(inst).yes
    if out.yes:
        assert check_witness(inst, out.cut).ok


@given(seeds, st.sampled_from(["vertex", "edge"]))
def test_sfvs_matches_oracle(seed, deletion):
    inst = gen_sfvs(seed, deletion=deletion)
    out = solve_sfvs(inst)
    assert out.yes == oracle_sfvs(inst).yes
    if out.yes:
        assert check_witness(inst, out.cut).ok
