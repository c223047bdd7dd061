from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .tree import DecisionTree, Path
from .valuesets import ValueSet

ABDUCTIVE = ("AXp", "WeakAXp", "APXp", "WeakAPXp")
CONTRASTIVE = ("CXp", "CPXp")
KINDS = ABDUCTIVE + CONTRASTIVE


@dataclass(frozen=True)
class Explanation:
    kind: str
    features: tuple[int, ...]
    literals: tuple[tuple[int, ValueSet], ...]
    anchor: Union[Path, tuple]

    @property
    def is_path_kind(self) -> bool:
        return self.kind in ("APXp", "WeakAPXp", "CPXp")

    @property
    def is_abductive(self) -> bool:
        return self.kind in ABDUCTIVE

    def __len__(self) -> int:
        return len(self.features)

    def __iter__(self):
        return iter(self.features)

    def to_json(self, tree: DecisionTree) -> dict:
        if isinstance(self.anchor, Path):
            anchor = {"path": self.anchor.id, "nodes": list(self.anchor.nodes)}
        else:
            anchor = {"instance": list(self.anchor)}
        return {
            "kind": self.kind,
            "features": list(self.features),
            "literals": [{"feature": i, "values": tree.domain(i).valueset_to_json(vs)} for i, vs in self.literals],
            "anchor": anchor,
        }

    def describe(self, tree: DecisionTree) -> str:
        lits = " AND ".join(f"{tree.features[i - 1].name} in {tree.domain(i).describe(vs)}" for i, vs in self.literals)
        return f"{self.kind} {set(self.features) or '{}'}: {lits}"


def make(tree: DecisionTree, kind: str, features: Iterable[int], anchor) -> Explanation:
    """Attach literals to a feature set: path kinds use rho, instance kinds the point's values."""
    feats = tuple(sorted(features))
    if isinstance(anchor, Path):
        lits = tuple((i, anchor.rho_map[i]) for i in feats if i in anchor.rho_map)
    else:
        anchor = tuple(anchor)
        codes = tree.encode(anchor)
        lits = tuple((i, ValueSet.of([codes[i - 1]])) for i in feats)
    return Explanation(kind, feats, lits, anchor)


def order_features(features: Iterable[int], order: Union[str, Sequence[int]] = "ascending") -> list[int]:
    """Order in which features are tentatively dropped by the deletion algorithms."""
    feats = list(features)
    if order == "ascending":
        return sorted(feats)
    if order == "descending":
        return sorted(feats, reverse=True)
    rank = {f: k for k, f in enumerate(order)}
    missing = [f for f in feats if f not in rank]
    if missing:
        raise ValueError(f"deletion order does not mention features {sorted(missing)}")
    return sorted(feats, key=rank.__getitem__)


def canonical(sets: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    """Deduplicate feature sets and sort them by minimum index, then lexicographically."""
    return sorted({tuple(sorted(s)) for s in sets})


def minimal_sets(sets: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    uniq = sorted({frozenset(s) for s in sets}, key=len)
    keep: list[frozenset] = []
    for s in uniq:
        if not any(k <= s for k in keep):
            keep.append(s)
    return canonical(keep)
