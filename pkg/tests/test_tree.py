import io
import json

import pytest

from dtxp import chi_I, chi_P, classify, load_instance, load_tree, rho, validate
from dtxp.tree import TreeFormatError
from dtxp.valuesets import Domain, ValueSet


def doc(nodes, domains=((0, 1),)):
    feats = [{"name": f"x{k}", "domain": list(d)} for k, d in enumerate(domains, 1)]
    return json.dumps({"features": feats, "classes": [0, 1], "root": 1, "nodes": nodes})


STUMP = [{"id": 1, "feature": 1, "edges": [{"to": 2, "values": [0]}, {"to": 3, "values": [1]}]},
         {"id": 2, "class": 0}, {"id": 3, "class": 1}]


def test_valueset_ops():
    a, b = ValueSet.of([1, 3]), ValueSet.of([2, 3, 4])
    assert list(a & b) == [3]
    assert list(a | b) == [1, 2, 3, 4]
    assert list(b - a) == [2, 4]
    assert ValueSet.interval(2, 5).intersects(a)
    assert not ValueSet.of([0]).intersects(ValueSet.of([1]))
    assert len(ValueSet.interval(0, 60)) == 61


def test_domain_roundtrip():
    d = Domain.ordinal(10, 20)
    vs = ValueSet.interval(d.code(12), d.code(15))
    assert d.valueset_from_json(d.valueset_to_json(vs)) == vs
    c = Domain.categorical(["red", "green", "blue"])
    assert c.values_of(c.valueset_from_json(["blue", "red"])) == ["red", "blue"]


def test_fig1_paths(fig1):
    assert [p.nodes for p in fig1.paths] == [(1, 2), (1, 3, 4), (1, 3, 5, 6), (1, 3, 5, 7)]


def test_fig2_paths(fig2):
    assert len(fig2.nodes) == 15 and len(fig2.paths) == 8
    ones = sorted(p.terminal for p in fig2.paths if p.klass == 1)
    assert ones == [3, 9, 11, 13, 15]
    assert sorted(p.terminal for p in fig2.paths if p.klass == 0) == [6, 12, 14]
    assert validate(fig2).ok


def test_rho(fig1):
    q2 = fig1.path_to(6)
    assert list(rho(fig1, 2, q2)) == [1]
    assert list(rho(fig1, 3, q2)) == [0]
    with pytest.raises(KeyError):
        rho(fig1, 3, fig1.path_to(2))


def test_rho_repeated_feature():
    nodes = [{"id": 1, "feature": 1, "edges": [{"to": 2, "values": [1, 3]}, {"to": 3, "values": [0, 2, 4]}]},
             {"id": 2, "feature": 1, "edges": [{"to": 4, "values": [2, 3, 4]}, {"to": 5, "values": [0, 1]}]},
             {"id": 3, "class": 0}, {"id": 4, "class": 1}, {"id": 5, "class": 0}]
    t = load_tree(doc(nodes, [range(5)]))
    assert list(rho(t, 1, t.path_to(4))) == [3]
    assert list(t.effective[(2, 4)]) == [3]


def test_chi(fig1, fig2):
    assert chi_I(fig1, (0, 0, 0), fig1.path_to(4)) == {1}
    assert chi_I(fig1, (0, 1, 0), fig1.path_to(7)) == {1, 3}
    assert chi_I(fig1, (1, 1, 1), fig1.path_to(7)) == set()
    assert chi_P(fig1, fig1.path_to(4), fig1.path_to(6)) == {2}
    assert chi_P(fig2, fig2.path_to(15), fig2.path_to(12)) == {2, 5}
    with pytest.raises(ValueError):
        chi_P(fig1, fig1.path_to(4), fig1.path_to(4))


def test_classify(fig1, fig2):
    assert classify(fig1, (1, 1, 1))[1].nodes == (1, 3, 5, 7)
    c, p = classify(fig2, (0, 0, 1, 0, 1))
    assert (c, p.nodes) == (1, (1, 2, 4, 7, 10, 15))
    c, p = classify(fig2, (0, 1, 1, 1, 0))
    assert (c, p.nodes) == (1, (1, 2, 5, 9))


@pytest.mark.parametrize("nodes, msg", [
    ([{"id": 1, "feature": 1, "edges": [{"to": 2, "values": [0]}, {"to": 3, "values": [0]}]},
      {"id": 2, "class": 0}, {"id": 3, "class": 1}], "overlap"),
    ([{"id": 1, "class": 0}], "single-leaf"),
    ([{"id": 1, "feature": 1, "edges": [{"to": 2, "values": [0]}, {"to": 3, "values": [1]}]},
      {"id": 2, "class": 0}, {"id": 3, "class": 0}], "non-constant"),
    ([{"id": 1, "feature": 1, "edges": [{"to": 2, "values": [0]}, {"to": 9, "values": [1]}]},
      {"id": 2, "class": 0}], "dangling"),
    (STUMP + [{"id": 4, "class": 1}], "incoming"),
])
def test_structural_errors(nodes, msg):
    with pytest.raises(TreeFormatError, match=msg):
        load_tree(doc(nodes))


def test_json_error_position():
    with pytest.raises(TreeFormatError, match="line 2, column"):
        load_tree('{"features": [],\n ]')


def test_validate_dead_end():
    t = load_tree(doc(STUMP, [(0, 1, 2)]))
    rep = validate(t)
    assert not rep.ok
    assert any(w[0] == 2 for w in rep.dead_end_witnesses)


def test_validate_inconsistent_path():
    nodes = [{"id": 1, "feature": 1, "edges": [{"to": 2, "values": [0]}, {"to": 3, "values": [1]}]},
             {"id": 2, "feature": 1, "edges": [{"to": 4, "values": [1]}, {"to": 5, "values": [0]}]},
             {"id": 3, "class": 1}, {"id": 4, "class": 1}, {"id": 5, "class": 0}]
    rep = validate(load_tree(doc(nodes)))
    assert rep.inconsistent_paths and not rep.ok


def test_validate_structural_mode(fig2):
    rep = validate(fig2, bound=4)
    assert rep.ok and not rep.exhaustive


def test_load_instance(fig2):
    assert load_instance(fig2, "[0,1,1,1,0]") == (0, 1, 1, 1, 0)
    assert load_instance(fig2, "x1=0, x2=1, x3=1, x4=1, x5=0") == (0, 1, 1, 1, 0)
    with pytest.raises(ValueError):
        load_instance(fig2, "x1=0")


def test_roundtrip(fig2, multi_edge):
    for t in (fig2, multi_edge):
        again = load_tree(io.BytesIO(t.dumps().encode()))
        assert again.dumps() == t.dumps()
