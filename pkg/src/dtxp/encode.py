"""Horn encodings of "all opposing paths stay blocked".

Variable ``u_i`` says feature ``i`` is universal (dropped from the
explanation); ``b_r`` says every sub-path from node ``r`` to a terminal
of another class is blocked.  A subset-maximal set of satisfiable soft
units ``(u_i)`` is the complement of a subset-minimal explanation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .explanation import Explanation, make
from .horn import HornClause, HornProblem, horn_maxsat, horn_mcs
from .tree import DecisionTree, Path


class EncodingError(RuntimeError):
    pass


@dataclass(frozen=True)
class EncodingMap:
    u_var: dict[int, int]
    b_var: dict[int, int]
    kind: str
    anchor: Union[Path, tuple]
    soft_features: tuple[int, ...]

    def feature_of(self, var: int) -> int:
        return {v: i for i, v in self.u_var.items()}[var]


def _variables(tree: DecisionTree):
    u = {i: i for i in tree.feature_ids}
    b = {r: tree.m + k for k, r in enumerate(sorted(tree.nodes), 1)}
    names = {v: f"u{i}" for i, v in u.items()}
    names.update({v: f"b{r}" for r, v in b.items()})
    return u, b, names


def _build(tree: DecisionTree, c, consistent, restricted: Iterable[int] | None):
    """Shared H1-H5 skeleton; ``consistent(node, edge)`` decides H4 versus H5."""
    u, b, names = _variables(tree)
    hard: list[HornClause] = []
    untested = set() if restricted is None else set(tree.feature_ids) - set(restricted)
    h4, h5 = ("H'4", "H'5") if restricted is not None else ("H4", "H5")
    hard.append(HornClause(frozenset(), b[tree.root], "H1"))
    for r in tree.terminals:
        if tree.nodes[r].klass == c:
            hard.append(HornClause(frozenset(), b[r], "H2"))
    for r in tree.terminals:
        if tree.nodes[r].klass != c:
            hard.append(HornClause(frozenset({b[r]}), None, "H3"))
    guarded = []
    for r in sorted(tree.nodes):
        n = tree.nodes[r]
        for e in n.edges:
            if n.feature in untested or consistent(n, e):
                hard.append(HornClause(frozenset({b[r]}), b[e.target], h4))
            else:
                guarded.append(HornClause(frozenset({b[r], u[n.feature]}), b[e.target], h5))
    hard.extend(guarded)
    for i in sorted(untested):
        hard.append(HornClause(frozenset(), u[i], "H'6"))
    return u, b, names, hard


def encode_unrestricted(tree: DecisionTree, v: Sequence, c=None) -> tuple[HornProblem, EncodingMap]:
    """Encoding for a path-unrestricted AXp of instance ``v`` (rules H1-H5)."""
    codes = tree.encode(v)
    pred = tree.classify_codes(codes).klass
    if c is None:
        c = pred
    elif c != pred:
        raise ValueError(f"instance is classified {pred!r}, not {c!r}")
    u, b, names, hard = _build(tree, c, lambda n, e: codes[n.feature - 1] in e.values, None)
    feats = tuple(tree.feature_ids)
    problem = HornProblem(hard, [u[i] for i in feats], names)
    return problem, EncodingMap(u, b, "AXp", tuple(v), feats)


def encode_path(tree: DecisionTree, target: Path, point: Sequence | None = None) -> tuple[HornProblem, EncodingMap]:
    """Encoding for an APXp of ``target`` (rules H1-H3, H'4-H'6).

    With ``point`` given (consistent with ``target``), edge consistency is
    judged against the point instead, yielding a path-restricted AXp.
    """
    if point is None:
        rho = target.rho_map
        consistent = (lambda n, e: tree.effective[(n.id, e.target)].intersects(rho[n.feature]))
        kind, anchor = "APXp", target
    else:
        codes = tree.encode(point)
        if tree.classify_codes(codes) is not target:
            raise ValueError("point is not consistent with the target path")
        consistent = (lambda n, e: codes[n.feature - 1] in e.values)
        kind, anchor = "AXp", tuple(point)
    u, b, names, hard = _build(tree, target.klass, consistent, target.features)
    feats = tuple(sorted(target.features))
    problem = HornProblem(hard, [u[i] for i in feats], names)
    return problem, EncodingMap(u, b, kind, anchor, feats)


def decode(tree: DecisionTree, model: Iterable[int], emap: EncodingMap) -> Explanation:
    """Explanation = soft features whose ``u_i`` is false in ``model``."""
    model = set(model)
    feats = [i for i in emap.soft_features if emap.u_var[i] not in model]
    if not feats:
        raise EncodingError("empty explanation: every feature universal on a non-constant classifier")
    return make(tree, emap.kind, feats, emap.anchor)


def count_by_tag(problem: HornProblem) -> dict[str, int]:
    out: dict[str, int] = {}
    for c in problem.hard:
        out[c.tag] = out.get(c.tag, 0) + 1
    return out


def explain_horn(tree: DecisionTree, target, mode: str = "path") -> Explanation:
    """One explanation through MCS extraction over the matching encoding."""
    if isinstance(target, Path):
        problem, emap = encode_path(tree, target)
    elif mode == "path":
        problem, emap = encode_path(tree, tree.classify_codes(tree.encode(target)))
    elif mode == "path-restricted":
        problem, emap = encode_path(tree, tree.classify_codes(tree.encode(target)), target)
    elif mode == "path-unrestricted":
        problem, emap = encode_unrestricted(tree, target)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    _, model = horn_mcs(problem)
    return decode(tree, model, emap)


def smallest_horn(tree: DecisionTree, target, mode: str = "path-unrestricted") -> Explanation:
    """Cardinality-minimal explanation from a Horn MaxSAT optimum."""
    if isinstance(target, Path):
        problem, emap = encode_path(tree, target)
    elif mode == "path-unrestricted":
        problem, emap = encode_unrestricted(tree, target)
    else:
        p = tree.classify_codes(tree.encode(target))
        problem, emap = encode_path(tree, p, target if mode == "path-restricted" else None)
    _, model = horn_maxsat(problem)
    return decode(tree, model, emap)
