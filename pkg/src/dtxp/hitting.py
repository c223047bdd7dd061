"""One explanation as a subset-minimal hitting set of explicit chi sets."""

from __future__ import annotations

from typing import Iterable, Sequence

from .explanation import Explanation, make, order_features
from .tree import DecisionTree, Path, _inconsistent_codes, chi_P


def hits_all(candidate: set[int], sets: Sequence[frozenset[int]]) -> bool:
    return all(candidate & s for s in sets)


def minimal_hitting_set(sets: Iterable[Iterable[int]], order="ascending") -> set[int]:
    """Deletion-based MHS: start from the union, drop features in ``order``
    while every set is still hit."""
    sets = [frozenset(s) for s in sets]
    if any(not s for s in sets):
        raise ValueError("an empty set cannot be hit")
    current = set().union(*sets)
    for i in order_features(current, order):
        current.discard(i)
        if not hits_all(current, sets):
            current.add(i)
    return current


def path_chi_sets(tree: DecisionTree, target: Path) -> list[frozenset[int]]:
    return [frozenset(chi_P(tree, target, q)) for q in tree.opposing(target.klass)]


def instance_chi_sets(tree: DecisionTree, v, restrict_to: Iterable[int] | None = None) -> list[frozenset[int]]:
    codes = tree.encode(v)
    c = tree.classify_codes(codes).klass
    sets = [frozenset(_inconsistent_codes(codes, q)) for q in tree.opposing(c)]
    if restrict_to is not None:
        keep = frozenset(restrict_to)
        sets = [s & keep for s in sets]
    return sets


def apxp_mhs(tree: DecisionTree, target: Path, order="ascending") -> Explanation:
    """APXp of ``target`` from the chi_P sets of all opposing paths."""
    return make(tree, "APXp", minimal_hitting_set(path_chi_sets(tree, target), order), target)


def axp_mhs(tree: DecisionTree, v, mode: str = "path-unrestricted", order="ascending") -> Explanation:
    """AXp of instance ``v`` from the chi_I sets of all opposing paths.

    In ``path-restricted`` mode only features tested on the path consistent
    with ``v`` may appear in the result.
    """
    if mode == "path-restricted":
        p = tree.classify_codes(tree.encode(v))
        sets = instance_chi_sets(tree, v, p.features)
    elif mode == "path-unrestricted":
        sets = instance_chi_sets(tree, v)
    else:
        raise ValueError(f"unknown mode {mode!r} for instance explanations")
    return make(tree, "AXp", minimal_hitting_set(sets, order), v)
