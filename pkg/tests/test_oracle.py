import itertools

import pytest

from dtxp.oracle import (NotWeakError, SpaceTooLargeError, all_explanations_bruteforce, build_restricted,
                         gen_tree, is_weak_axp, is_weak_cxp, minimal_hitting_sets, or_tree, predict)


def test_predict_matches_fig1_table(fig1):
    expected = {(0, 0, 0): 0, (0, 1, 1): 0, (1, 0, 1): 1, (1, 1, 0): 0, (1, 1, 1): 1}
    for x, y in expected.items():
        assert predict(fig1, x) == y


def test_fig2_weak_axp_of_p1(fig2):
    p1 = fig2.path_to(15)
    assert is_weak_axp(fig2, p1, {3, 5})
    # (0,0,0,0,1) reaches terminal 6
    assert not is_weak_axp(fig2, p1, {5})
    assert is_weak_axp(fig2, p1, p1.features)


def test_weak_cxp(fig2):
    p4 = fig2.path_to(9)
    assert is_weak_cxp(fig2, p4, {2})
    assert is_weak_cxp(fig2, p4, {4})
    assert not is_weak_cxp(fig2, p4, {1})


def test_rejects_features_outside_anchor(fig2):
    with pytest.raises(ValueError):
        is_weak_axp(fig2, fig2.path_to(9), {5})


def test_bruteforce_fig1_axps(fig1):
    assert all_explanations_bruteforce(fig1, (0, 1, 0), "AXp") == {frozenset({1}), frozenset({2, 3})}


def test_bruteforce_fig2_p4(fig2):
    p4 = fig2.path_to(9)
    assert all_explanations_bruteforce(fig2, p4, "APXp") == {frozenset({2, 4})}
    assert all_explanations_bruteforce(fig2, p4, "CPXp") == {frozenset({2}), frozenset({4})}


def test_kind_anchor_mismatch(fig2):
    with pytest.raises(ValueError):
        all_explanations_bruteforce(fig2, (0, 0, 0, 0, 0), "APXp")


def test_space_bound(fig2):
    with pytest.raises(SpaceTooLargeError):
        is_weak_axp(fig2, (0, 0, 0, 0, 0), {1}, max_space=16)


def test_kappa_table_from_text_example(fig2):
    rc = build_restricted(fig2, (0, 1, 0, 1, 0), {1, 2, 4})
    assert rc.iota == {1: 1, 2: 2, 3: 4}
    for y in itertools.product((0, 1), repeat=3):
        if y[0] == 1:
            want = 1
        elif y[1] == 0:
            want = 0
        else:
            want = y[2]
        assert rc(y) == want, y


def test_kappa_needs_weak_seed(fig2):
    with pytest.raises(NotWeakError):
        build_restricted(fig2, (0, 1, 0, 1, 0), {1})


def test_kappa_full_seed_is_class_indicator(fig1):
    rc = build_restricted(fig1, (1, 0, 0), {1, 2, 3})
    for y in itertools.product((0, 1), repeat=3):
        assert rc(y) == int(predict(fig1, y) == 1)


def test_monotonicity(small_trees):
    for t in small_trees[:20]:
        for p in t.paths:
            phi = sorted(p.features)
            for k in range(len(phi) + 1):
                for s in itertools.combinations(phi, k):
                    if is_weak_axp(t, p, s):
                        for j in phi:
                            assert is_weak_axp(t, p, set(s) | {j})


def test_duality_and_membership(small_trees):
    for t in small_trees[:30]:
        for p in t.paths:
            ax = all_explanations_bruteforce(t, p, "APXp")
            cx = all_explanations_bruteforce(t, p, "CPXp")
            assert ax == minimal_hitting_sets(cx)
            assert cx == minimal_hitting_sets(ax)
            assert set().union(*ax) == set().union(*cx)
        v = tuple(0 for _ in range(t.m))
        ax = all_explanations_bruteforce(t, v, "AXp")
        cx = all_explanations_bruteforce(t, v, "CXp")
        assert ax == minimal_hitting_sets(cx)


def test_gen_tree_reproducible():
    a = gen_tree(5, 3, depth=5, seed=42).dumps()
    b = gen_tree(5, 3, depth=5, seed=42).dumps()
    assert a == b
    assert gen_tree(5, 3, depth=5, seed=43).dumps() != a


def test_gen_tree_bounds():
    for s in range(30):
        t = gen_tree(4, [2, 3, 3, 2], depth=4, seed=s, ordinal=s % 2 == 1)
        assert t.depth <= 4
        assert len({t.nodes[r].klass for r in t.terminals}) == 2


def test_or_tree_shape():
    t = or_tree(3)
    assert len(t.nodes) == 7
    assert sorted(r for r in t.terminals if t.nodes[r].klass == 1) == [2, 4, 6]
    p = t.path_to(6)
    assert len(p) == 3
    assert all_explanations_bruteforce(t, p, "APXp") == {frozenset({3})}
