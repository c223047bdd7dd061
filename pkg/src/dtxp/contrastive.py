"""All contrastive explanations by one scan of the opposing paths."""

from __future__ import annotations

from .explanation import Explanation, make, minimal_sets
from .tree import DecisionTree, Path


def all_cpxps(tree: DecisionTree, target: Path, stats: dict | None = None) -> list[Explanation]:
    """Every CPXp of ``target``: the subset-minimal sets of features whose
    literals on an opposing path contradict the target's."""
    comparisons = 0
    cands = []
    phi = target.rho_map
    for q in tree.opposing(target.klass):
        s = set()
        for i, vs in q.rho_map.items():
            # features not tested along the target are ignored
            if i in phi:
                comparisons += 1
                if not vs.intersects(phi[i]):
                    s.add(i)
        cands.append(s)
    if stats is not None:
        stats["comparisons"] = comparisons
        stats["candidates"] = len(cands)
    return [make(tree, "CPXp", s, target) for s in minimal_sets(cands)]


def cxps_instance(tree: DecisionTree, v, stats: dict | None = None) -> list[Explanation]:
    """Every CXp of instance ``v``: minimal sets of features of ``v`` that
    disagree with some opposing path."""
    codes = tree.encode(v)
    klass = tree.classify_codes(codes).klass
    cands = []
    comparisons = 0
    for q in tree.opposing(klass):
        comparisons += len(q.rho_map)
        cands.append({i for i, vs in q.rho_map.items() if codes[i - 1] not in vs})
    if stats is not None:
        stats["comparisons"] = comparisons
        stats["candidates"] = len(cands)
    return [make(tree, "CXp", s, v) for s in minimal_sets(cands)]
