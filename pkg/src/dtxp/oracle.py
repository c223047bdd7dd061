"""Brute-force verification on finite feature spaces, plus tree generators.

Nothing here reuses the production algorithms: the oracle walks the raw
tree itself and represents point sets as bitsets (Python ints) over the
enumerated feature space, point ``k`` being bit ``k``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .tree import DecisionTree, Path, tree_from_json

SPACE_BOUND = 2 ** 20


class SpaceTooLargeError(ValueError):
    pass


class NotWeakError(ValueError):
    pass


def predict(tree: DecisionTree, codes: Sequence[int]):
    """Class of a point given as domain codes, by walking raw edge labels."""
    r = tree.root
    while tree.nodes[r].feature is not None:
        n = tree.nodes[r]
        r = next(e.target for e in n.edges if codes[n.feature - 1] in e.values)
    return tree.nodes[r].klass


class Space:
    """Enumerated feature space with per-(feature, value) point bitsets."""

    def __init__(self, tree: DecisionTree, max_space: int = SPACE_BOUND):
        sizes = [f.domain.size for f in tree.features]
        total = 1
        for s in sizes:
            total *= s
        if total > max_space:
            raise SpaceTooLargeError(f"feature space has {total} points, bound is {max_space}")
        self.tree = tree
        self.sizes = sizes
        self.points = list(itertools.product(*(range(s) for s in sizes)))
        self.all = (1 << len(self.points)) - 1
        self.with_value = [[0] * s for s in sizes]
        self.by_class: dict = {}
        for k, x in enumerate(self.points):
            bit = 1 << k
            for i, c in enumerate(x):
                self.with_value[i][c] |= bit
            y = predict(tree, x)
            self.by_class[y] = self.by_class.get(y, 0) | bit

    def agreeing(self, i: int, codes: Iterable[int]) -> int:
        """Points whose feature ``i`` (1-based) lies in ``codes``."""
        out = 0
        for c in codes:
            out |= self.with_value[i - 1][c]
        return out

    def other_than(self, klass) -> int:
        return self.all & ~self.by_class.get(klass, 0)


_SPACES: dict = {}


def space_of(tree: DecisionTree, max_space: int = SPACE_BOUND) -> Space:
    total = tree.space_size
    if total > max_space:
        raise SpaceTooLargeError(f"feature space has {total} points, bound is {max_space}")
    key = id(tree)
    hit = _SPACES.get(key)
    if hit is None or hit.tree is not tree:
        if len(_SPACES) > 64:
            _SPACES.clear()
        hit = _SPACES[key] = Space(tree, max_space)
    return hit


def path_literals(tree: DecisionTree, nodes: Sequence[int]) -> dict[int, set[int]]:
    """Per tested feature, the codes allowed by every literal along ``nodes``."""
    lits: dict[int, set[int]] = {}
    for r, s in zip(nodes, nodes[1:]):
        n = tree.nodes[r]
        vals = set(next(e.values for e in n.edges if e.target == s))
        lits[n.feature] = lits[n.feature] & vals if n.feature in lits else vals
    return lits


class _Anchor:
    def __init__(self, tree: DecisionTree, anchor, max_space: int):
        self.space = space_of(tree, max_space)
        if isinstance(anchor, Path):
            self.lits = path_literals(tree, anchor.nodes)
            self.klass = anchor.klass
        else:
            codes = tree.encode(anchor)
            self.lits = {i: {codes[i - 1]} for i in tree.feature_ids}
            self.klass = predict(tree, codes)
        self.universe = tuple(sorted(self.lits))
        self.bad = self.space.other_than(self.klass)
        self.agree = {i: self.space.agreeing(i, vs) for i, vs in self.lits.items()}

    def fixing(self, fixed: Iterable[int]) -> int:
        pts = self.space.all
        for i in fixed:
            pts &= self.agree[i]
        return pts

    def weak_axp(self, s: Iterable[int]) -> bool:
        return not self.fixing(s) & self.bad

    def weak_cxp(self, y: Iterable[int]) -> bool:
        y = set(y)
        return bool(self.fixing(i for i in self.universe if i not in y) & self.bad)


def _check_subset(a: _Anchor, s) -> set[int]:
    s = set(s)
    if not s <= set(a.universe):
        raise ValueError(f"features {sorted(s - set(a.universe))} are not part of the anchor")
    return s


def is_weak_axp(tree: DecisionTree, anchor, s: Iterable[int], max_space: int = SPACE_BOUND) -> bool:
    """Do all points meeting the anchor's literals on ``s`` get the anchor's class?"""
    a = _Anchor(tree, anchor, max_space)
    return a.weak_axp(_check_subset(a, s))


def is_weak_cxp(tree: DecisionTree, anchor, y: Iterable[int], max_space: int = SPACE_BOUND) -> bool:
    """Does freeing ``y`` (keeping the other anchor literals) admit another class?"""
    a = _Anchor(tree, anchor, max_space)
    return a.weak_cxp(_check_subset(a, y))


def _minimal(universe: Sequence[int], weak) -> set[frozenset[int]]:
    if len(universe) > 20:
        raise SpaceTooLargeError(f"{len(universe)} candidate features, at most 20 supported")
    found: list[frozenset[int]] = []
    for k in range(len(universe) + 1):
        for combo in itertools.combinations(universe, k):
            s = frozenset(combo)
            if not any(f <= s for f in found) and weak(s):
                found.append(s)
    return set(found)


def all_explanations_bruteforce(tree: DecisionTree, anchor, kind: str, universe: Iterable[int] | None = None,
                                max_space: int = SPACE_BOUND) -> set[frozenset[int]]:
    """Subset-minimal weak explanations of the given kind among all subsets.

    ``universe`` narrows the candidate features (e.g. to the tested
    features of the instance's path for path-restricted explanations);
    features outside it are always free.
    """
    a = _Anchor(tree, anchor, max_space)
    if kind in ("APXp", "CPXp") and not isinstance(anchor, Path):
        raise ValueError(f"{kind} needs a path anchor")
    if kind in ("AXp", "CXp") and isinstance(anchor, Path):
        raise ValueError(f"{kind} needs an instance anchor")
    uni = tuple(sorted(universe)) if universe is not None else a.universe
    if kind in ("AXp", "APXp"):
        return _minimal(uni, a.weak_axp)
    if kind in ("CXp", "CPXp"):
        return _minimal(uni, lambda y: bool(a.fixing(i for i in uni if i not in y) & a.bad))
    raise ValueError(f"unknown kind {kind!r}")


def minimal_hitting_sets(sets: Iterable[Iterable[int]]) -> set[frozenset[int]]:
    """All minimal hitting sets, by scanning subsets of the union."""
    sets = [frozenset(s) for s in sets]
    universe = sorted(set().union(*sets)) if sets else []
    return _minimal(universe, lambda h: all(h & s for s in sets))


@dataclass
class RestrictedClassifier:
    """Boolean classifier over the seed features only.

    ``iota[k]`` is the original index of restricted feature ``k`` (1-based);
    ``table`` maps an assignment of the seed features (codes, in ``iota``
    order) to 1 when every completion of it predicts ``klass``.
    """

    seed: tuple[int, ...]
    iota: dict[int, int]
    table: dict[tuple[int, ...], int]
    klass: object
    point: tuple[int, ...]

    def prj(self, codes: Sequence[int]) -> tuple[int, ...]:
        return tuple(codes[i - 1] for i in self.seed)

    def __call__(self, y: Sequence[int]) -> int:
        return self.table[tuple(y)]

    def _weak(self, fixed: Iterable[int]) -> bool:
        """Does fixing restricted features ``fixed`` to the point keep value 1?"""
        fixed = list(fixed)
        y0 = self.prj(self.point)
        return all(val == 1 for y, val in self.table.items() if all(y[k - 1] == y0[k - 1] for k in fixed))

    def axps(self) -> set[frozenset[int]]:
        """AXp's of the restricted problem, mapped to original feature indices."""
        idx = tuple(self.iota)
        local = _minimal(idx, self._weak)
        return {frozenset(self.iota[k] for k in s) for s in local}

    def cxps(self) -> set[frozenset[int]]:
        idx = tuple(self.iota)
        local = _minimal(idx, lambda y: not self._weak(k for k in idx if k not in y))
        return {frozenset(self.iota[k] for k in s) for s in local}


def build_restricted(tree: DecisionTree, v, z: Iterable[int], max_space: int = SPACE_BOUND) -> RestrictedClassifier:
    seed = tuple(sorted(set(z)))
    a = _Anchor(tree, v, max_space)
    if not a.weak_axp(seed):
        raise NotWeakError(f"{set(seed)} is not a weak AXp of the instance")
    sp = a.space
    table = {}
    for y in itertools.product(*(range(sp.sizes[i - 1]) for i in seed)):
        pts = sp.all
        for i, c in zip(seed, y):
            pts &= sp.with_value[i - 1][c]
        table[y] = 0 if pts & a.bad else 1
    return RestrictedClassifier(seed, {k: i for k, i in enumerate(seed, 1)}, table, a.klass, tree.encode(v))


# -- generators ------------------------------------------------------------------------


def _split(rng: random.Random, allowed: list[int], ordinal: bool) -> list[list[int]]:
    k = rng.randint(2, min(3, len(allowed)))
    if ordinal:
        cuts = sorted(rng.sample(range(1, len(allowed)), k - 1))
        return [allowed[a:b] for a, b in zip([0] + cuts, cuts + [len(allowed)])]
    vals = list(allowed)
    rng.shuffle(vals)
    blocks = [[v] for v in vals[:k]]
    for v in vals[k:]:
        rng.choice(blocks).append(v)
    blocks = [sorted(b) for b in blocks]
    blocks.sort()
    return blocks


def gen_tree(n_features: int = 4, domains: int | Sequence[int] = 2, depth: int = 4, n_classes: int = 2,
             seed: int = 0, split_prob: float = 0.8, ordinal: bool = False,
             max_nodes: int | None = None) -> DecisionTree:
    """Random validated tree; edges partition the values still allowed at each node.

    ``domains`` is one size for all features or a size per feature.
    Retries with derived seeds until the classifier is non-constant.
    """
    sizes = [domains] * n_features if isinstance(domains, int) else list(domains)
    if len(sizes) != n_features or min(sizes) < 2:
        raise ValueError("need one domain size of at least 2 per feature")
    for attempt in itertools.count():
        rng = random.Random(f"{seed}:{attempt}")
        doc = _gen_doc(rng, sizes, depth, n_classes, split_prob, ordinal, max_nodes)
        if doc is not None:
            return tree_from_json(doc)


def _gen_doc(rng, sizes, depth, n_classes, split_prob, ordinal, max_nodes):
    classes = list(range(n_classes))
    nodes: list[dict] = []
    budget = [max_nodes or 10 ** 9]

    def grow(allowed: list[list[int]], level: int) -> int:
        nid = len(nodes) + 1
        node: dict = {"id": nid}
        nodes.append(node)
        splittable = [i for i, a in enumerate(allowed) if len(a) > 1]
        p = split_prob if level else 1.0
        if level < depth and splittable and budget[0] > 2 and rng.random() < p:
            i = rng.choice(splittable)
            blocks = _split(rng, allowed[i], ordinal)
            budget[0] -= len(blocks)
            node["feature"] = i + 1
            node["edges"] = []
            for b in blocks:
                child = list(allowed)
                child[i] = b
                to = grow(child, level + 1)
                vals = {"lo": b[0], "hi": b[-1]} if ordinal and len(b) > 1 else b
                node["edges"].append({"to": to, "values": vals})
        else:
            node["class"] = rng.choice(classes)
        return nid

    grow([list(range(s)) for s in sizes], 0)
    if len({n["class"] for n in nodes if "class" in n}) < 2:
        return None
    kind = "ordinal" if ordinal else "categorical"
    feats = [{"name": f"x{i + 1}", "kind": kind,
              "domain": {"min": 0, "max": s - 1} if ordinal else list(range(s))} for i, s in enumerate(sizes)]
    return {"features": feats, "classes": classes, "root": 1, "nodes": nodes}


def or_tree(m: int) -> DecisionTree:
    """Right comb for x_1 or ... or x_m over binary features.

    Node 2k-1 tests x_k; value 1 leads to class-1 leaf 2k, value 0 to the
    next test, and the last test's 0 branch to the class-0 leaf 2m+1.
    """
    if m < 1:
        raise ValueError("m must be positive")
    nodes = []
    for k in range(1, m + 1):
        nxt = 2 * k + 1
        nodes.append({"id": 2 * k - 1, "feature": k,
                      "edges": [{"to": nxt, "values": [0]}, {"to": 2 * k, "values": [1]}]})
        nodes.append({"id": 2 * k, "class": 1})
    nodes.append({"id": 2 * m + 1, "class": 0})
    feats = [{"name": f"x{i}", "kind": "categorical", "domain": [0, 1]} for i in range(1, m + 1)]
    return tree_from_json({"features": feats, "classes": [0, 1], "root": 1, "nodes": nodes})
