import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wsep.gdpc import (Bundle, GdpcInstance, bundle_graph, check_2k2_free, check_b_bounded,
                       check_pairwise_linked, deletable_counts, evaluate_cut, exact_solve,
                       is_solution)
from wsep.generate import gen_gdpc
from wsep.graph import InputError
from wsep.oracles import oracle_gdpc_naive


def inst(names, arcs, bundles, clauses=(), k=1, W=10):
    return GdpcInstance(tuple(names), 0, 1, tuple(arcs), tuple(clauses), tuple(bundles), k, W)


def test_single_soft_arc():
    g = inst("st", [(0, 1)], [Bundle(1, (0,))])
    ev = evaluate_cut(g, {0})
    assert ev is not None and ev.violated_bundles == {0}
    assert is_solution(g, {0})


def test_crisp_path_blocks_cut():
    g = inst("st", [(0, 1), (0, 1)], [Bundle(1, (0,))])
    assert evaluate_cut(g, set()) is None
    assert evaluate_cut(g, {0}) is None
    assert not is_solution(g, {0})


def test_crisp_arc_in_cut_is_not_a_cut():
    g = inst("sta", [(0, 2), (2, 1)], [Bundle(1, (0,))])
    assert evaluate_cut(g, {1}) is None


def test_unknown_arc_rejected():
    g = inst("st", [(0, 1)], [Bundle(1, (0,))])
    with pytest.raises(InputError):
        evaluate_cut(g, {3})


def serial(W):
    # s -> a (B1, weight 2), a -> t (B2, weight 3)
    return inst("sta", [(0, 2), (2, 1)], [Bundle(2, (0,)), Bundle(3, (1,))], k=1, W=W)


def test_serial_yes():
    g = serial(3)
    out = exact_solve(g)
    assert out.yes
    assert out.violated == {0}
    assert is_solution(g, out.cut)


def test_serial_weight_infeasible():
    assert not exact_solve(serial(1)).yes


def test_unbundled_clause_must_hold():
    # s -> a soft, clause {a, a} unbundled: cutting s->a keeps a unreachable
    g = inst("sta", [(0, 2), (2, 1)], [Bundle(1, (0,))], clauses=[(2, 2)])
    assert is_solution(g, {0})
    g2 = inst("sta", [(0, 2), (2, 1)], [Bundle(1, (1,))], clauses=[(2, 2)])
    ev = evaluate_cut(g2, {1})
    assert ev.unbundled_violations == {0}
    assert not is_solution(g2, {1})
    assert not exact_solve(g2).yes


def test_self_clause_counts_when_reachable():
    g = inst("sta", [(0, 2), (2, 1)], [Bundle(1, (1,)), Bundle(2, (), (0,))], clauses=[(2, 2)], k=2)
    ev = evaluate_cut(g, {1})
    assert ev.violated_bundles == {0, 1}
    assert ev.weight(g) == 3


def test_overlapping_bundles_rejected():
    with pytest.raises(InputError, match="pairwise disjoint"):
        inst("st", [(0, 1)], [Bundle(1, (0,)), Bundle(1, (0,))])


def test_duplicate_copy_rejected():
    with pytest.raises(InputError, match="two copies"):
        inst("st", [(0, 1), (0, 1)], [Bundle(1, (0, 1))])


def recompute(g, Z):
    """Violation accounting straight from the definitions."""
    seen, todo = {g.s}, [g.s]
    while todo:
        u = todo.pop()
        for a, (x, y) in enumerate(g.arcs):
            if x == u and a not in Z and y not in seen:
                seen.add(y)
                todo.append(y)
    if g.t in seen or any(not any(a in b.arcs for b in g.bundles) for a in Z):
        return None
    clauses = {c for c, (x, y) in enumerate(g.clauses) if x in seen and y in seen}
    bundles = {i for i, b in enumerate(g.bundles)
               if set(b.arcs) & Z or set(b.clauses) & clauses}
    return seen, clauses, bundles


@given(st.integers(0, 100_000), st.data())
def test_evaluate_matches_definition(seed, data):
    g = gen_gdpc(seed)
    Z = data.draw(st.sets(st.integers(0, len(g.arcs) - 1))) if g.arcs else set()
    ev = evaluate_cut(g, Z)
    ref = recompute(g, Z)
    if ref is None:
        assert ev is None
    else:
        seen, clauses, bundles = ref
        assert ev.reach == seen
        assert ev.violated_clauses == clauses
        assert ev.violated_bundles == bundles


@given(st.integers(0, 100_000))
def test_exact_matches_naive(seed):
    g = gen_gdpc(seed)
    out = exact_solve(g)
    assert out.yes == oracle_gdpc_naive(g).yes
    if out.yes:
        assert is_solution(g, out.cut)


def bundle_arcs(g):
    return sorted(a for b in g.bundles for a in b.arcs)


@given(st.integers(0, 100_000))
def test_saturation(seed):
    g = gen_gdpc(seed, bundles=4, k=2)
    arcs = bundle_arcs(g)
    for r in range(len(arcs) + 1):
        for Z in itertools.combinations(arcs, r):
            if is_solution(g, Z):
                ev = evaluate_cut(g, Z)
                full = {a for b in ev.violated_bundles for a in g.bundles[b].arcs}
                assert is_solution(g, full)
                assert evaluate_cut(g, full).violated_bundles <= ev.violated_bundles


def test_tie_break_order():
    # direct arc plus a two-arc route: the cheapest id-ordered pair wins
    g = inst("sta", [(0, 1), (0, 2), (2, 1)],
             [Bundle(2, (0,)), Bundle(1, (1,)), Bundle(1, (2,))], k=2, W=5)
    out = exact_solve(g)
    assert out.violated == {0, 1}


def test_path_bundle_is_2k2_free():
    g = GdpcInstance(("s", "t", "u", "v", "w"), 0, 1, ((2, 3), (3, 4)), (), (Bundle(1, (0, 1)),), 1, 1)
    assert bundle_graph(g, 0) == {2: {3}, 3: {2, 4}, 4: {3}}
    assert check_2k2_free(g) == [True]


def test_matching_bundle_not_2k2_free():
    g = GdpcInstance(("s", "t", "a", "b", "c", "d"), 0, 1, ((2, 3), (4, 5)), (),
                     (Bundle(1, (0, 1)),), 1, 1)
    assert check_2k2_free(g) == [False]
    assert not check_pairwise_linked(g)


def test_crisp_link_makes_pairwise_linked():
    g = GdpcInstance(("s", "t", "a", "b", "c", "d"), 0, 1, ((2, 3), (4, 5), (4, 3)), (),
                     (Bundle(1, (0, 1)),), 1, 1)
    assert check_pairwise_linked(g)
    assert check_pairwise_linked(g, directed=True)


def test_b_bounded():
    g = GdpcInstance(("s", "t", "a", "b", "c", "d"), 0, 1, ((2, 3), (4, 5)), (),
                     (Bundle(1, (0, 1)),), 1, 1)
    assert check_b_bounded(g, 4)
    assert not check_b_bounded(g, 3)


def test_deletable_excludes_crisp_copies():
    g = inst("sta", [(0, 2), (0, 2), (2, 1)], [Bundle(1, (0, 2))])
    assert g.deletable == {2}
    assert deletable_counts(g) == [1]
