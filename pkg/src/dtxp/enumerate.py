"""Enumeration of all (and of smallest) explanations by hitting-set dualization.

Pick variable ``p_i`` says feature ``i`` stays in the explanation.  Every
contrastive set becomes a positive clause that any abductive explanation
must satisfy; every reported abductive explanation is blocked with a
negative clause.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .contrastive import all_cpxps
from .explanation import Explanation, make, minimal_sets
from .hitting import instance_chi_sets
from .sat import Solver
from .traversal import explain_traversal, reaches_other_class, setup
from .tree import DecisionTree, Path

CONTRASTIVE_KIND = {"APXp": "CPXp", "AXp": "CXp"}


def _default_mode(target) -> str:
    return "path" if isinstance(target, Path) else "path-unrestricted"


class _Problem:
    """Anchor resolved into a universe of features and a weak-abductive test."""

    def __init__(self, tree: DecisionTree, target, mode: str | None):
        self.tree = tree
        self.target = target
        self.mode = mode or _default_mode(target)
        self.kind, self.anchor, self.klass, self.fixed, universe = setup(tree, target, self.mode)
        self.universe = tuple(universe)
        self.ckind = CONTRASTIVE_KIND[self.kind]
        self.tests = 0

    def weak_abductive(self, keep: Iterable[int]) -> bool:
        keep = set(keep)
        self.tests += 1
        fixed = {i: vs for i, vs in self.fixed.items() if i in keep}
        universal = [i for i in self.tree.feature_ids if i not in keep]
        return not reaches_other_class(self.tree, universal, fixed, self.klass)

    def contrastive_sets(self) -> list[tuple[int, ...]]:
        if self.kind == "APXp":
            return [e.features for e in all_cpxps(self.tree, self.anchor)]
        return minimal_sets(instance_chi_sets(self.tree, self.anchor, self.universe))

    def shrink_abductive(self, picked: Iterable[int]) -> Explanation:
        return explain_traversal(self.tree, self.target, self.mode, "ascending", candidates=picked)

    def shrink_contrastive(self, freed: Iterable[int]) -> Explanation:
        freed = sorted(freed)
        for i in list(freed):
            rest = [j for j in freed if j != i]
            if not self.weak_abductive(set(self.universe) - set(rest)):
                freed = rest
        return make(self.tree, self.ckind, freed, self.anchor)


def enumerate_apxps(tree: DecisionTree, target, mode: str | None = None,
                    stats: dict | None = None) -> Iterator[Explanation]:
    """Every abductive explanation of ``target`` exactly once.

    One satisfiability call per emitted explanation plus a final UNSAT
    call; ``stats['sat_calls']`` is kept current while the stream runs.
    """
    prob = _Problem(tree, target, mode)
    var = {f: k for k, f in enumerate(prob.universe, 1)}
    solver = Solver(len(var))
    for s in prob.contrastive_sets():
        solver.add_clause(var[i] for i in s)
    stats = {} if stats is None else stats
    stats["sat_calls"] = 0
    while True:
        model = solver.solve()
        stats["sat_calls"] = solver.calls
        if model is None:
            return
        picked = [f for f in prob.universe if model[var[f]]]
        e = prob.shrink_abductive(picked)
        yield e
        solver.add_clause(-var[i] for i in e.features)


def min_hitting_set(sets: Iterable[Iterable[int]], blocked: Sequence[Iterable[int]] = (),
                    stats: dict | None = None) -> tuple[int, ...] | None:
    """Minimum-cardinality hitting set containing no ``blocked`` set, or None.

    Branch and bound: branch on the elements of the shortest unhit set,
    excluding earlier siblings; the bound counts pairwise-disjoint unhit sets.
    """
    sets = [frozenset(s) for s in sets]
    if any(not s for s in sets):
        return None
    blocked = [frozenset(b) for b in blocked]
    best: list = [None]
    nodes = 0

    def lower_bound(unhit: list[frozenset], excluded: frozenset) -> int:
        used: set = set()
        lb = 0
        for s in sorted(unhit, key=len):
            avail = s - excluded
            if not avail & used:
                used |= avail
                lb += 1
        return lb

    def search(chosen: frozenset, excluded: frozenset) -> None:
        nonlocal nodes
        nodes += 1
        if any(b <= chosen for b in blocked):
            return
        unhit = [s for s in sets if not s & chosen]
        if not unhit:
            if best[0] is None or len(chosen) < len(best[0]):
                best[0] = chosen
            return
        if any(not (s - excluded) for s in unhit):
            return
        if best[0] is not None and len(chosen) + lower_bound(unhit, excluded) >= len(best[0]):
            return
        pivot = min(unhit, key=lambda s: (len(s - excluded), sorted(s - excluded)))
        ex = set(excluded)
        for i in sorted(pivot - excluded):
            search(chosen | {i}, frozenset(ex))
            ex.add(i)

    if not sets:
        return None if any(not b for b in blocked) else ()
    search(frozenset(), frozenset())
    if stats is not None:
        stats["nodes"] = stats.get("nodes", 0) + nodes
    return None if best[0] is None else tuple(sorted(best[0]))


def smallest_apxp(tree: DecisionTree, target, mode: str | None = None) -> Explanation:
    """A cardinality-minimal abductive explanation (exact)."""
    prob = _Problem(tree, target, mode)
    return make(tree, prob.kind, min_hitting_set(prob.contrastive_sets()), prob.anchor)


def enumerate_by_size(tree: DecisionTree, target, mode: str | None = None,
                      stats: dict | None = None) -> Iterator[Explanation]:
    """All abductive explanations in non-decreasing cardinality."""
    prob = _Problem(tree, target, mode)
    sets = prob.contrastive_sets()
    found: list[tuple[int, ...]] = []
    while True:
        h = min_hitting_set(sets, found, stats)
        if h is None:
            return
        found.append(h)
        yield make(tree, prob.kind, h, prob.anchor)


def enumerate_dual(tree: DecisionTree, anchor, mode: str | None = None,
                   stats: dict | None = None) -> Iterator[Explanation]:
    """Abductive and contrastive explanations together, one call per emission.

    A model's picked set is either weak abductive (shrunk, then blocked
    negatively) or its complement is weak contrastive (shrunk, then
    blocked positively).
    """
    prob = _Problem(tree, anchor, mode)
    var = {f: k for k, f in enumerate(prob.universe, 1)}
    solver = Solver(len(var))
    stats = {} if stats is None else stats
    while True:
        model = solver.solve()
        stats["sat_calls"] = solver.calls
        if model is None:
            return
        picked = {f for f in prob.universe if model[var[f]]}
        if prob.weak_abductive(picked):
            e = prob.shrink_abductive(picked)
            solver.add_clause(-var[i] for i in e.features)
        else:
            e = prob.shrink_contrastive(set(prob.universe) - picked)
            solver.add_clause(var[i] for i in e.features)
        yield e
