import itertools

import pytest

from dtxp import encode_path, encode_unrestricted, explain_horn, smallest_horn
from dtxp.encode import EncodingError, count_by_tag, decode
from dtxp.horn import HornClause, HornFormula, horn_mcs
from dtxp.oracle import all_explanations_bruteforce, is_weak_axp


def clauses(problem, tag, emap):
    name = {v: f"u{i}" for i, v in emap.u_var.items()}
    name.update({v: f"b{r}" for r, v in emap.b_var.items()})
    return {(frozenset(name[v] for v in c.body), None if c.head is None else name[c.head])
            for c in problem.hard if c.tag == tag}


def test_fig2_instance_counts(fig2):
    p, emap = encode_unrestricted(fig2, (0, 0, 1, 0, 1), 1)
    assert count_by_tag(p) == {"H1": 1, "H2": 5, "H3": 3, "H4": 7, "H5": 7}
    assert len(p.soft) == 5


def test_fig2_instance_clauses(fig2):
    p, emap = encode_unrestricted(fig2, (0, 0, 1, 0, 1), 1)
    h4 = {(frozenset({"b1"}), "b2"), (frozenset({"b2"}), "b4"), (frozenset({"b4"}), "b7"),
          (frozenset({"b5"}), "b8"), (frozenset({"b7"}), "b10"), (frozenset({"b8"}), "b13"),
          (frozenset({"b10"}), "b15")}
    assert clauses(p, "H4", emap) == h4
    h5 = {(frozenset({"b1", "u1"}), "b3"), (frozenset({"b2", "u2"}), "b5"), (frozenset({"b4", "u3"}), "b6"),
          (frozenset({"b5", "u4"}), "b9"), (frozenset({"b7", "u4"}), "b11"), (frozenset({"b8", "u5"}), "b12"),
          (frozenset({"b10", "u5"}), "b14")}
    assert clauses(p, "H5", emap) == h5
    assert clauses(p, "H3", emap) == {(frozenset({f"b{r}"}), None) for r in (6, 12, 14)}
    assert clauses(p, "H2", emap) == {(frozenset(), f"b{r}") for r in (3, 9, 11, 13, 15)}


def test_fig2_instance_mcs(fig2):
    p, emap = encode_unrestricted(fig2, (0, 0, 1, 0, 1), 1)
    mcs, model = horn_mcs(p)
    assert sorted(mcs) == [emap.u_var[3], emap.u_var[5]]
    assert decode(fig2, model, emap).features == (3, 5)


def test_fig1_instance_h5(fig1):
    p, emap = encode_unrestricted(fig1, (1, 1, 1), 1)
    # every edge inconsistent with v is guarded, including 3->4 into a same-class terminal
    assert clauses(p, "H5", emap) == {(frozenset({"b1", "u1"}), "b2"), (frozenset({"b3", "u2"}), "b4"),
                                      (frozenset({"b5", "u3"}), "b6")}
    assert {(frozenset({"b1"}), "b3"), (frozenset({"b3"}), "b5"), (frozenset({"b5"}), "b7")} <= clauses(p, "H4", emap)


def test_wrong_class_rejected(fig2):
    with pytest.raises(ValueError):
        encode_unrestricted(fig2, (0, 0, 1, 0, 1), 0)


def test_fig2_path_p4(fig2):
    p, emap = encode_path(fig2, fig2.path_to(9))
    tags = count_by_tag(p)
    assert (tags["H'4"], tags["H'5"]) == (10, 4)
    assert clauses(p, "H'6", emap) == {(frozenset(), "u3"), (frozenset(), "u5")}
    assert explain_horn(fig2, fig2.path_to(9)).features == (2, 4)


def test_fig2_path_p1_matches_instance(fig2):
    pi, ei = encode_unrestricted(fig2, (0, 0, 1, 0, 1), 1)
    pp, ep = encode_path(fig2, fig2.path_to(15))
    assert clauses(pp, "H'4", ep) == clauses(pi, "H4", ei)
    assert clauses(pp, "H'5", ep) == clauses(pi, "H5", ei)
    assert not clauses(pp, "H'6", ep)


def test_stump_encoding():
    from dtxp.oracle import gen_tree
    from dtxp import load_tree
    t = load_tree('{"features":[{"name":"a","domain":[0,1]}],"classes":[0,1],"root":1,"nodes":['
                  '{"id":1,"feature":1,"edges":[{"to":2,"values":[0]},{"to":3,"values":[1]}]},'
                  '{"id":2,"class":0},{"id":3,"class":1}]}')
    p, _ = encode_unrestricted(t, (1,))
    assert count_by_tag(p) == {"H1": 1, "H2": 1, "H3": 1, "H4": 1, "H5": 1}


def test_empty_decode_raises(fig2):
    _, emap = encode_unrestricted(fig2, (0, 0, 1, 0, 1))
    with pytest.raises(EncodingError):
        decode(fig2, set(emap.u_var.values()), emap)


def test_maxsat_smallest(fig2):
    assert smallest_horn(fig2, (0, 0, 1, 0, 1)).features == (3, 5)


def test_encoding_soundness(small_trees):
    """Universalizing S keeps the hard part satisfiable iff the rest is weak."""
    for t in small_trees[:25]:
        for path in t.paths:
            p, emap = encode_path(t, path)
            f = HornFormula(p.hard, p.nvars)
            phi = sorted(path.features)
            for k in range(len(phi) + 1):
                for s in itertools.combinations(phi, k):
                    sat = f.solve([emap.u_var[i] for i in s]).sat
                    assert sat == is_weak_axp(t, path, set(phi) - set(s))
        v = t.decode([1] * t.m)
        p, emap = encode_unrestricted(t, v)
        f = HornFormula(p.hard, p.nvars)
        for k in range(t.m + 1):
            for s in itertools.combinations(t.feature_ids, k):
                assert f.solve([emap.u_var[i] for i in s]).sat == is_weak_axp(t, v, set(t.feature_ids) - set(s))


def test_horn_results_are_minimal(small_trees):
    for t in small_trees:
        v = t.decode([0] * t.m)
        for mode in ("path", "path-restricted", "path-unrestricted"):
            e = explain_horn(t, v, mode)
            kind = "APXp" if mode == "path" else "AXp"
            anchor = t.classify_codes(t.encode(v)) if mode == "path" else v
            uni = None if mode != "path-restricted" else anchor_features(t, v)
            assert frozenset(e.features) in all_explanations_bruteforce(t, anchor, kind, universe=uni)


def anchor_features(t, v):
    return t.classify_codes(t.encode(v)).features
