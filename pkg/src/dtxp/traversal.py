"""Deletion-based explanations by repeated tree traversal.

Each feature of the target is tentatively declared universal, and a walk
from the root checks whether a terminal of another class becomes
reachable.  No path is ever materialized, so one explanation costs at
most |F| traversals of the tree.
"""

from __future__ import annotations

import weakref
from array import array
from typing import Iterable, Mapping

from . import kernels
from .explanation import Explanation, make, order_features
from .tree import DecisionTree, Path
from .valuesets import ValueSet


class TreeArrays:
    """Flat CSR view of a tree consumed by the kernels."""

    def __init__(self, tree: DecisionTree):
        ids = sorted(tree.nodes)
        index = {r: k for k, r in enumerate(ids)}
        self.class_index = {c: k for k, c in enumerate(tree.classes)}
        self.node_feat = array("i", [0] * len(ids))
        self.node_class = array("i", [-1] * len(ids))
        self.child_ptr = array("i", [0])
        self.child = array("i")
        self.edge_keys: list[tuple[int, int]] = []
        self.edge_feat: list[int] = []
        for k, r in enumerate(ids):
            n = tree.nodes[r]
            if n.terminal:
                self.node_class[k] = self.class_index[n.klass]
            else:
                self.node_feat[k] = n.feature
                for e in n.edges:
                    self.child.append(index[e.target])
                    self.edge_keys.append((r, e.target))
                    self.edge_feat.append(n.feature)
            self.child_ptr.append(len(self.child))
        self.root = index[tree.root]
        self.effective = [tree.effective[k] for k in self.edge_keys]
        self.m = tree.m

    def edge_mask(self, fixed: Mapping[int, ValueSet]) -> array:
        ok = array("B", [1]) * len(self.edge_keys)
        for e, f in enumerate(self.edge_feat):
            vs = fixed.get(f)
            if vs is not None and not self.effective[e].intersects(vs):
                ok[e] = 0
        return ok

    def run(self, universal: array, edge_ok: array, c) -> tuple[bool, int]:
        return kernels.reach(self.child_ptr, self.child, self.node_feat, self.node_class,
                             self.root, self.class_index[c], edge_ok, universal)


_ARRAYS: "weakref.WeakKeyDictionary[DecisionTree, TreeArrays]" = weakref.WeakKeyDictionary()


def tree_arrays(tree: DecisionTree) -> TreeArrays:
    ta = _ARRAYS.get(tree)
    if ta is None:
        ta = _ARRAYS[tree] = TreeArrays(tree)
    return ta


def _universal_array(m: int, universal: Iterable[int]) -> array:
    u = array("B", [0]) * (m + 1)
    for i in universal:
        u[i] = 1
    return u


def reaches_other_class(tree: DecisionTree, universal: Iterable[int], fixed: Mapping[int, ValueSet], c,
                        stats: dict | None = None) -> bool:
    """True iff some root-to-terminal walk ends at a class other than ``c``.

    Edges of a universal feature are always explorable; edges of a fixed
    feature only when their values meet ``fixed[i]``.
    """
    ta = tree_arrays(tree)
    found, visits = ta.run(_universal_array(tree.m, universal), ta.edge_mask(fixed), c)
    if stats is not None:
        stats["visits"] = stats.get("visits", 0) + visits
        stats["traversals"] = stats.get("traversals", 0) + 1
    return found


def setup(tree: DecisionTree, target, mode: str):
    """Resolve a target into (kind, anchor, klass, fixed literals, eligible features, initially universal)."""
    if isinstance(target, Path):
        if mode not in ("path", "path-restricted"):
            raise ValueError(f"mode {mode!r} needs an instance target")
        mode = "path"
        codes = None
    else:
        codes = tree.encode(target)
    if mode == "path":
        p = target if codes is None else tree.classify_codes(codes)
        return "APXp", p, p.klass, dict(p.rho_map), sorted(p.features)
    p = tree.classify_codes(codes)
    if mode == "path-restricted":
        eligible = sorted(p.features)
    elif mode == "path-unrestricted":
        eligible = list(tree.feature_ids)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    fixed = {i: ValueSet.of([codes[i - 1]]) for i in eligible}
    return "AXp", tuple(target), p.klass, fixed, eligible


def explain_traversal(tree: DecisionTree, target, mode: str = "path", order="ascending",
                      candidates: Iterable[int] | None = None, stats: dict | None = None) -> Explanation:
    """One APXp (Path target, or instance with ``mode='path'``) or AXp
    (instance with a ``path-restricted``/``path-unrestricted`` mode).

    ``candidates`` restricts the features that may stay in the result; it
    must itself be a weak explanation.
    """
    kind, anchor, klass, fixed, eligible = setup(tree, target, mode)
    if candidates is not None:
        keep = set(candidates)
        eligible = [i for i in eligible if i in keep]
    cands = order_features(eligible, order)
    ta = tree_arrays(tree)
    universal = _universal_array(tree.m, (i for i in tree.feature_ids if i not in set(cands)))
    visits, traversals = kernels.shrink(ta.child_ptr, ta.child, ta.node_feat, ta.node_class, ta.root,
                                        ta.class_index[klass], ta.edge_mask(fixed), universal,
                                        array("i", cands))
    if stats is not None:
        stats["visits"] = stats.get("visits", 0) + visits
        stats["traversals"] = stats.get("traversals", 0) + traversals
    return make(tree, kind, (i for i in cands if not universal[i]), anchor)
