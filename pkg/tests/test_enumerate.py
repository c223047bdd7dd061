from hypothesis import given, settings, strategies as st

from dtxp import all_cpxps, cxps_instance, enumerate_apxps, enumerate_by_size, enumerate_dual, smallest_apxp
from dtxp.enumerate import min_hitting_set
from dtxp.oracle import all_explanations_bruteforce, gen_tree, minimal_hitting_sets
from dtxp.sat import Solver


def feats(stream):
    return [e.features for e in stream]


def test_cpxp_examples(fig1, fig2):
    assert feats(all_cpxps(fig2, fig2.path_to(9))) == [(2,), (4,)]
    stats = {}
    assert feats(all_cpxps(fig2, fig2.path_to(14), stats)) == [(1,), (4,), (5,)]
    assert stats["candidates"] == 5
    assert feats(all_cpxps(fig1, fig1.path_to(7))) == [(1,), (3,)]


def test_cxp_instance(fig1, fig2):
    assert feats(cxps_instance(fig1, (1, 1, 1))) == [(1,), (3,)]
    full = all_explanations_bruteforce(fig2, (0, 1, 1, 1, 0), "CXp")
    for e in all_cpxps(fig2, fig2.path_to(9)):
        assert any(set(e.features) <= c for c in full)


def test_sat_solver():
    s = Solver(3)
    s.add_clause([1, 2])
    s.add_clause([-1])
    assert s.solve() == [False, False, True, False]
    s.add_clause([-2])
    assert s.solve() is None
    assert s.calls == 2


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5).filter(bool), min_size=1, max_size=4), max_size=14))
def test_sat_solver_complete(cls):
    import itertools
    s = Solver(5)
    for c in cls:
        s.add_clause(c)
    m = s.solve()
    brute = any(all(any((lit > 0) == bits[abs(lit) - 1] for lit in c) for c in cls)
                for bits in itertools.product((False, True), repeat=5))
    assert (m is not None) == brute
    if m is not None:
        assert all(any((lit > 0) == m[abs(lit)] for lit in c) for c in cls)


def test_enumerate_examples(fig1, fig2):
    stats = {}
    assert feats(enumerate_apxps(fig2, fig2.path_to(14), stats=stats)) == [(1, 4, 5)]
    assert stats["sat_calls"] == 2
    assert feats(enumerate_apxps(fig1, fig1.path_to(7))) == [(1, 3)]


def test_smallest(fig2):
    assert smallest_apxp(fig2, fig2.path_to(9)).features == (2, 4)
    assert min_hitting_set([{1}, {4}, {5}]) == (1, 4, 5)
    assert min_hitting_set([{1, 2}, {1, 3}], blocked=[(1,)]) == (2, 3)
    assert min_hitting_set([{1}], blocked=[(1,)]) is None


def test_by_size_order(fig1, fig2):
    assert feats(enumerate_by_size(fig1, (0, 1, 0))) == [(1,), (2, 3)]
    assert feats(enumerate_by_size(fig2, fig2.path_to(9))) == [(2, 4)]


def test_dual_p4(fig2):
    stats = {}
    out = [(e.kind, e.features) for e in enumerate_dual(fig2, fig2.path_to(9), stats=stats)]
    assert sorted(out) == [("APXp", (2, 4)), ("CPXp", (2,)), ("CPXp", (4,))]
    assert stats["sat_calls"] == 4


def test_dual_single_feature():
    from dtxp.oracle import or_tree
    t = or_tree(1)
    out = [(e.kind, e.features) for e in enumerate_dual(t, t.path_to(2))]
    assert sorted(out) == [("APXp", (1,)), ("CPXp", (1,))]


def test_exactness_random_binary():
    for s in range(40):
        t = gen_tree(4, 2, depth=4, seed=s)
        for p in t.paths:
            stats = {}
            got = feats(enumerate_apxps(t, p, stats=stats))
            assert len(set(got)) == len(got)
            assert {frozenset(g) for g in got} == all_explanations_bruteforce(t, p, "APXp")
            assert stats["sat_calls"] == len(got) + 1


def test_by_size_and_dual_random(small_trees):
    for t in small_trees:
        for p in t.paths:
            ref = {frozenset(e.features) for e in enumerate_apxps(t, p)}
            sized = feats(enumerate_by_size(t, p))
            assert {frozenset(x) for x in sized} == ref
            assert [len(x) for x in sized] == sorted(len(x) for x in sized)
            assert len(smallest_apxp(t, p)) == min(map(len, ref))
            stats = {}
            dual = list(enumerate_dual(t, p, stats=stats))
            ab = {frozenset(e.features) for e in dual if e.is_abductive}
            co = {frozenset(e.features) for e in dual if not e.is_abductive}
            assert ab == ref
            assert co == {frozenset(e.features) for e in all_cpxps(t, p)}
            assert ab == minimal_hitting_sets(co)
            assert stats["sat_calls"] == len(dual) + 1


def test_instance_modes_random(small_trees):
    for t in small_trees[:30]:
        v = t.decode([1] * t.m)
        path = t.classify_codes(t.encode(v))
        for mode, uni in (("path-unrestricted", None), ("path-restricted", path.features)):
            ax = {frozenset(e.features) for e in enumerate_apxps(t, v, mode)}
            assert ax == all_explanations_bruteforce(t, v, "AXp", universe=uni)
            dual = list(enumerate_dual(t, v, mode))
            assert {frozenset(e.features) for e in dual if e.kind == "AXp"} == ax
            assert {frozenset(e.features) for e in dual if e.kind == "CXp"} == \
                all_explanations_bruteforce(t, v, "CXp", universe=uni)
        assert {frozenset(e.features) for e in cxps_instance(t, v)} == all_explanations_bruteforce(t, v, "CXp")
