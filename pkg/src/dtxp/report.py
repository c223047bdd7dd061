"""Explanation redundancy of tree paths.

A path is explanation-redundant (an XRP) when its tested features are not
already an APXp; the features it tests outside the computed APXp are its
redundant features (XRFs).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .encode import explain_horn
from .enumerate import enumerate_apxps
from .hitting import apxp_mhs
from .traversal import explain_traversal
from .tree import DecisionTree, Path

ALGORITHMS = ("mhs", "traversal", "horn")
ABSENT = "—"


def one_apxp(tree: DecisionTree, p: Path, algo: str = "traversal"):
    if algo == "mhs":
        return apxp_mhs(tree, p)
    if algo == "traversal":
        return explain_traversal(tree, p)
    if algo == "horn":
        return explain_horn(tree, p)
    raise ValueError(f"unknown algorithm {algo!r} (choose from {', '.join(ALGORITHMS)})")


def coverage(tree: DecisionTree, p: Path) -> Fraction:
    """Share of the feature space whose points follow ``p``."""
    share = Fraction(1)
    for i, vs in p.rho_map.items():
        share *= Fraction(len(vs), tree.domain(i).size)
    return share


@dataclass
class PathRow:
    path: int
    nodes: list[int]
    klass: object
    n_features: int
    apxp: list[int]
    redundant: list[int]
    fraction: float
    coverage: float
    never_relevant: list[int] | None = None

    @property
    def is_xrp(self) -> bool:
        return bool(self.redundant)


@dataclass
class RedundancyReport:
    depth: int
    nodes: int
    paths: int
    pct_redundant: float
    pct_coverage: float
    pct_min: float | None
    pct_max: float | None
    pct_avg: float | None
    rows: list[PathRow] = field(default_factory=list)
    algo: str = "traversal"

    def to_json(self) -> dict:
        doc = asdict(self)
        for row, r in zip(doc["rows"], self.rows):
            row["is_xrp"] = r.is_xrp
            if r.never_relevant is None:
                del row["never_relevant"]
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    def render(self) -> str:
        def pct(x):
            return ABSENT if x is None else str(round(x))

        head = ["D", "#N", "#P", "%R", "%C", "%m", "%M", "%avg"]
        vals = [str(self.depth), str(self.nodes), str(self.paths), pct(self.pct_redundant),
                pct(self.pct_coverage), pct(self.pct_min), pct(self.pct_max), pct(self.pct_avg)]
        width = [max(len(h), len(v)) for h, v in zip(head, vals)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(head, width)),
                 "  ".join(v.rjust(w) for v, w in zip(vals, width)), ""]
        extra = any(r.never_relevant is not None for r in self.rows)
        table = [["path", "class", "|phi|", "apxp", "redundant", "%red"] + (["never-relevant"] if extra else [])]
        for r in self.rows:
            cells = [str(r.path), str(r.klass), str(r.n_features), ",".join(map(str, r.apxp)),
                     ",".join(map(str, r.redundant)) or ABSENT, str(round(r.fraction))]
            if extra:
                cells.append(",".join(map(str, r.never_relevant)) or ABSENT)
            table.append(cells)
        width = [max(len(row[k]) for row in table) for k in range(len(table[0]))]
        lines += ["  ".join(c.rjust(w) for c, w in zip(row, width)) for row in table]
        return "\n".join(lines) + "\n"


def report(tree: DecisionTree, algo: str = "traversal", all_apxps: bool = False) -> RedundancyReport:
    """One APXp per path (ascending deletion order) and the table metrics.

    With ``all_apxps`` each row also lists the features absent from every
    APXp of the path.
    """
    rows = []
    xrp_cov = Fraction(0)
    for p in tree.paths:
        e = one_apxp(tree, p, algo)
        phi = sorted(p.features)
        red = [i for i in phi if i not in e.features]
        frac = Fraction(len(red), len(phi)) * 100
        cov = coverage(tree, p)
        never = None
        if all_apxps:
            used = set()
            for a in enumerate_apxps(tree, p):
                used.update(a.features)
            never = [i for i in phi if i not in used]
        if red:
            xrp_cov += cov
        rows.append(PathRow(p.id, list(p.nodes), p.klass, len(phi), list(e.features), red,
                            float(frac), float(cov * 100), never))
    fracs = [r.fraction for r in rows if r.is_xrp]
    n_xrp = len(fracs)
    return RedundancyReport(
        depth=tree.depth,
        nodes=len(tree.nodes),
        paths=len(rows),
        pct_redundant=100.0 * n_xrp / len(rows),
        pct_coverage=float(xrp_cov * 100),
        pct_min=min(fracs) if fracs else None,
        pct_max=max(fracs) if fracs else None,
        pct_avg=sum(fracs) / n_xrp if fracs else None,
        rows=rows,
        algo=algo,
    )
