"""Decision-tree model: loading, structural checks, paths and consistency sets.

Features are numbered from 1, node ids are the integers found in the tree
file (root conventionally 1).  Points are sequences of raw feature values
in feature order; internally they are converted to domain codes.
"""

from __future__ import annotations

import io
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterable, Sequence, Union

from .valuesets import Domain, ValueSet

DEFAULT_SPACE_BOUND = 2 ** 20


class TreeFormatError(ValueError):
    """Raised for unparseable tree files and structural-invariant violations."""


class TreeSyntaxError(TreeFormatError):
    """The file is not JSON at all."""


class DeadEndError(RuntimeError):
    pass


@dataclass(frozen=True)
class Feature:
    name: str
    domain: Domain


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    values: ValueSet


@dataclass(frozen=True)
class Node:
    id: int
    feature: int | None = None
    edges: tuple[Edge, ...] = ()
    klass: object = None

    @property
    def terminal(self) -> bool:
        return self.feature is None


@dataclass(frozen=True, eq=False)
class Path:
    id: int
    nodes: tuple[int, ...]
    literals: tuple[tuple[int, ValueSet], ...]
    klass: object
    rho_map: dict = field(repr=False)

    @property
    def terminal(self) -> int:
        return self.nodes[-1]

    @property
    def features(self) -> frozenset[int]:
        return frozenset(self.rho_map)

    def __len__(self) -> int:
        return len(self.literals)

    def __repr__(self) -> str:
        return f"Path({self.id}, <{','.join(map(str, self.nodes))}>, class={self.klass!r})"


@dataclass
class ValidationReport:
    ok: bool
    inconsistent_paths: list[int]
    dead_end_witnesses: list[tuple]
    overlap_witnesses: list[tuple]
    exhaustive: bool = True
    uncovered_nodes: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "exhaustive": self.exhaustive,
            "inconsistent_paths": self.inconsistent_paths,
            "dead_end_witnesses": [list(p) for p in self.dead_end_witnesses],
            "overlap_witnesses": [[list(p), a, b] for p, a, b in self.overlap_witnesses],
            "uncovered_nodes": self.uncovered_nodes,
        }


class DecisionTree:
    """Immutable univariate, possibly multi-edge, decision tree."""

    def __init__(self, features: Sequence[Feature], classes: Sequence, nodes: Iterable[Node], root: int):
        self.features = tuple(features)
        self.classes = tuple(classes)
        self.root = root
        self.nodes: dict[int, Node] = {}
        for n in nodes:
            if n.id in self.nodes:
                raise TreeFormatError(f"duplicate node id {n.id}")
            self.nodes[n.id] = n
        self._check_structure()
        self.effective = self._effective_edges()

    # -- construction checks -------------------------------------------------

    def _check_structure(self) -> None:
        m = len(self.features)
        if self.root not in self.nodes:
            raise TreeFormatError(f"root {self.root} is not a node")
        incoming: dict[int, int] = {}
        for n in self.nodes.values():
            if n.terminal:
                if n.klass not in self.classes:
                    raise TreeFormatError(f"node {n.id}: class {n.klass!r} not in classes {list(self.classes)}")
                continue
            if not 1 <= n.feature <= m:
                raise TreeFormatError(f"node {n.id}: feature {n.feature} out of range 1..{m}")
            if len(n.edges) < 2:
                raise TreeFormatError(f"node {n.id}: internal node needs at least 2 edges")
            dom = self.domain(n.feature)
            for e in n.edges:
                if e.target not in self.nodes:
                    raise TreeFormatError(f"node {n.id}: dangling edge to unknown node {e.target}")
                if not e.values:
                    raise TreeFormatError(f"edge {n.id}->{e.target}: empty value set")
                if not e.values.issubset(dom.full):
                    raise TreeFormatError(f"edge {n.id}->{e.target}: values outside the domain of feature {n.feature}")
                if e.values == dom.full:
                    raise TreeFormatError(f"edge {n.id}->{e.target}: full-domain edge literal on feature {n.feature}")
                incoming[e.target] = incoming.get(e.target, 0) + 1
            for a, b in itertools.combinations(n.edges, 2):
                if a.values.intersects(b.values):
                    raise TreeFormatError(
                        f"node {n.id}: overlapping sibling ValueSets on edges to {a.target} and {b.target}")
        roots = [i for i in self.nodes if i not in incoming]
        if roots != [self.root]:
            extra = [i for i in roots if i != self.root]
            if self.root in incoming:
                raise TreeFormatError(f"root {self.root} has an incoming edge")
            raise TreeFormatError(f"duplicate root: nodes {extra} have no incoming edge")
        multi = [i for i, k in incoming.items() if k > 1]
        if multi:
            raise TreeFormatError(f"nodes {sorted(multi)} have more than one incoming edge")
        # every node has one parent and one root exists, so a cycle would leave nodes unreachable
        seen = set()
        stack = [self.root]
        while stack:
            r = stack.pop()
            seen.add(r)
            stack.extend(e.target for e in self.nodes[r].edges)
        if len(seen) != len(self.nodes):
            raise TreeFormatError(f"nodes {sorted(set(self.nodes) - seen)} are unreachable from the root")
        if self.nodes[self.root].terminal:
            raise TreeFormatError("single-leaf tree: the classifier must be non-constant")
        if len({self.nodes[r].klass for r in self.terminals}) < 2:
            raise TreeFormatError("all terminals predict the same class: the classifier must be non-constant")

    def _effective_edges(self) -> dict[tuple[int, int], ValueSet]:
        # edge values intersected with the ancestors' literals on the same feature
        eff = {}
        stack = [(self.root, {})]
        while stack:
            r, restr = stack.pop()
            n = self.nodes[r]
            for e in n.edges:
                cur = restr.get(n.feature, self.domain(n.feature).full) & e.values
                eff[(r, e.target)] = cur
                child = dict(restr)
                child[n.feature] = cur
                stack.append((e.target, child))
        return eff

    # -- basic accessors ----------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.features)

    @property
    def feature_ids(self) -> range:
        return range(1, len(self.features) + 1)

    def domain(self, i: int) -> Domain:
        return self.features[i - 1].domain

    @cached_property
    def terminals(self) -> list[int]:
        return sorted(r for r, n in self.nodes.items() if n.terminal)

    @property
    def edges(self) -> list[Edge]:
        return [e for r in sorted(self.nodes) for e in self.nodes[r].edges]

    @cached_property
    def space_size(self) -> int:
        size = 1
        for f in self.features:
            size *= f.domain.size
        return size

    @cached_property
    def depth(self) -> int:
        return max(len(p) for p in self.paths)

    def encode(self, point: Sequence) -> tuple[int, ...]:
        if len(point) != self.m:
            raise ValueError(f"point has {len(point)} values, tree has {self.m} features")
        return tuple(self.domain(i).code(x) for i, x in zip(self.feature_ids, point))

    def decode(self, codes: Sequence[int]) -> tuple:
        return tuple(self.domain(i).value(c) for i, c in zip(self.feature_ids, codes))

    # -- paths ------------------------------------------------------------------------

    @cached_property
    def paths(self) -> tuple[Path, ...]:
        out = []
        # iterative DFS; children pushed reversed to keep file order
        stack = [(self.root, (), ())]
        while stack:
            r, seq, lits = stack.pop()
            seq = seq + (r,)
            n = self.nodes[r]
            if n.terminal:
                rho: dict[int, ValueSet] = {}
                for i, vs in lits:
                    rho[i] = rho[i] & vs if i in rho else vs
                out.append(Path(len(out) + 1, seq, lits, n.klass, rho))
                continue
            for e in reversed(n.edges):
                stack.append((e.target, seq, lits + ((n.feature, e.values),)))
        return tuple(out)

    @cached_property
    def _path_by_terminal(self) -> dict[int, Path]:
        return {p.terminal: p for p in self.paths}

    def path_to(self, terminal: int) -> Path:
        try:
            return self._path_by_terminal[terminal]
        except KeyError:
            raise KeyError(f"node {terminal} is not a terminal node") from None

    def path_by_nodes(self, nodes: Sequence[int]) -> Path:
        p = self._path_by_terminal.get(nodes[-1]) if nodes else None
        if p is None or p.nodes != tuple(nodes):
            raise KeyError(f"<{','.join(map(str, nodes))}> is not a root-to-terminal path")
        return p

    def opposing(self, klass) -> list[Path]:
        return [q for q in self.paths if q.klass != klass]

    # -- classification ---------------------------------------------------------------

    def classify_codes(self, codes: Sequence[int]) -> Path:
        r = self.root
        while True:
            n = self.nodes[r]
            if n.terminal:
                return self.path_to(r)
            x = codes[n.feature - 1]
            for e in n.edges:
                if x in e.values:
                    r = e.target
                    break
            else:
                raise DeadEndError(f"no edge of node {r} accepts x{n.feature}={self.domain(n.feature).value(x)!r}")

    # -- serialization ---------------------------------------------------------------

    def to_json(self) -> dict:
        nodes = []
        for r in sorted(self.nodes):
            n = self.nodes[r]
            if n.terminal:
                nodes.append({"id": r, "class": n.klass})
            else:
                dom = self.domain(n.feature)
                nodes.append({"id": r, "feature": n.feature,
                              "edges": [{"to": e.target, "values": dom.valueset_to_json(e.values)} for e in n.edges]})
        return {
            "features": [{"name": f.name, "kind": f.domain.kind, "domain": f.domain.to_json()} for f in self.features],
            "classes": list(self.classes),
            "root": self.root,
            "nodes": nodes,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"


Point = Sequence
Target = Union[Path, Sequence]


def load_tree(source: Union[str, bytes, IO]) -> DecisionTree:
    """Parse a tree from the canonical JSON format (text, bytes or a file object)."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise TreeSyntaxError(f"JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return tree_from_json(doc)


def tree_from_json(doc: dict) -> DecisionTree:
    def need(obj, key, where):
        if not isinstance(obj, dict) or key not in obj:
            raise TreeFormatError(f"{where}: missing field {key!r}")
        return obj[key]

    features = []
    for k, f in enumerate(need(doc, "features", "tree"), 1):
        where = f"features[{k}]"
        kind = f.get("kind", "categorical")
        dom = need(f, "domain", where)
        try:
            if kind == "ordinal":
                if isinstance(dom, dict):
                    domain = Domain.ordinal(need(dom, "min", where), need(dom, "max", where))
                else:
                    domain = Domain.ordinal(min(dom), max(dom))
            elif kind == "categorical":
                domain = Domain.categorical(dom)
            else:
                raise TreeFormatError(f"{where}: unknown kind {kind!r}")
        except ValueError as exc:
            raise TreeFormatError(f"{where}: {exc}") from None
        features.append(Feature(str(f.get("name", f"x{k}")), domain))
    classes = need(doc, "classes", "tree")
    nodes = []
    for k, nd in enumerate(need(doc, "nodes", "tree")):
        nid = need(nd, "id", f"nodes[{k}]")
        where = f"node {nid}"
        if "class" in nd:
            nodes.append(Node(nid, klass=nd["class"]))
            continue
        feat = need(nd, "feature", where)
        if not isinstance(feat, int) or not 1 <= feat <= len(features):
            raise TreeFormatError(f"{where}: feature {feat!r} out of range 1..{len(features)}")
        dom = features[feat - 1].domain
        edges = []
        for e in need(nd, "edges", where):
            to = need(e, "to", f"{where} edge")
            try:
                vs = dom.valueset_from_json(need(e, "values", f"{where} edge to {to}"))
            except (ValueError, KeyError, TypeError) as exc:
                raise TreeFormatError(f"{where} edge to {to}: {exc}") from None
            edges.append(Edge(nid, to, vs))
        nodes.append(Node(nid, feat, tuple(edges)))
    return DecisionTree(features, classes, nodes, need(doc, "root", "tree"))


def paths(tree: DecisionTree) -> list[Path]:
    return list(tree.paths)


def rho(tree: DecisionTree, i: int, path: Path) -> ValueSet:
    """Values of feature ``i`` consistent with ``path`` (as codes)."""
    try:
        return path.rho_map[i]
    except KeyError:
        raise KeyError(f"feature {i} is not tested along {path!r}") from None


def _inconsistent_codes(codes: Sequence[int], path: Path) -> set[int]:
    return {i for i, vs in path.rho_map.items() if codes[i - 1] not in vs}


def chi_I(tree: DecisionTree, v: Point, path: Path) -> set[int]:
    """Features whose value in ``v`` is inconsistent with ``path``."""
    return _inconsistent_codes(tree.encode(v), path)


def chi_P(tree: DecisionTree, p: Path, q: Path) -> set[int]:
    """Features tested in both paths whose consistent values do not meet."""
    if p is q:
        raise ValueError("chi_P needs two distinct paths")
    return {i for i, vs in p.rho_map.items() if i in q.rho_map and not vs.intersects(q.rho_map[i])}


def classify(tree: DecisionTree, v: Point) -> tuple[object, Path]:
    p = tree.classify_codes(tree.encode(v))
    return p.klass, p


def validate(tree: DecisionTree, bound: int = DEFAULT_SPACE_BOUND, max_witnesses: int = 16) -> ValidationReport:
    """Check the partition assumptions; problems are reported, never raised."""
    inconsistent = [p.id for p in tree.paths if any(not vs for vs in p.rho_map.values())]
    dead, overlap, uncovered = [], [], []
    exhaustive = tree.space_size <= bound
    if exhaustive:
        live = [p for p in tree.paths if p.id not in inconsistent]
        ranges = [range(f.domain.size) for f in tree.features]
        for codes in itertools.product(*ranges):
            hits = [p.id for p in live if not _inconsistent_codes(codes, p)]
            if not hits and len(dead) < max_witnesses:
                dead.append(tree.decode(codes))
            elif len(hits) > 1 and len(overlap) < max_witnesses:
                overlap.append((tree.decode(codes), hits[0], hits[1]))
    else:
        # structural sufficient condition: children cover the restricted domain
        stack = [(tree.root, {})]
        while stack:
            r, restr = stack.pop()
            n = tree.nodes[r]
            if n.terminal:
                continue
            here = restr.get(n.feature, tree.domain(n.feature).full)
            covered = ValueSet()
            for e in n.edges:
                covered = covered | tree.effective[(r, e.target)]
                child = dict(restr)
                child[n.feature] = tree.effective[(r, e.target)]
                stack.append((e.target, child))
            if here - covered and all(restr.values()):
                uncovered.append(r)
        uncovered.sort()
    ok = not (inconsistent or dead or overlap or uncovered)
    return ValidationReport(ok, inconsistent, dead, overlap, exhaustive, uncovered)


def load_instance(tree: DecisionTree, text: str) -> tuple:
    """Parse an instance given as a JSON array or a ``name=value,...`` list."""
    text = text.strip()
    if text.startswith("["):
        vals = json.loads(text)
        if len(vals) != tree.m:
            raise ValueError(f"instance has {len(vals)} values, tree has {tree.m} features")
        tree.encode(vals)
        return tuple(vals)
    names = {f.name: i for i, f in enumerate(tree.features)}
    vals = [None] * tree.m
    for item in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in item:
            raise ValueError(f"expected name=value, got {item!r}")
        k, v = (s.strip() for s in item.split("=", 1))
        if k not in names:
            raise ValueError(f"unknown feature {k!r}")
        dom = tree.features[names[k]].domain
        vals[names[k]] = dom.value(dom.code(v))
    missing = [tree.features[i].name for i, v in enumerate(vals) if v is None]
    if missing:
        raise ValueError(f"instance misses features {missing}")
    return tuple(vals)


def open_tree(path: str) -> DecisionTree:
    with io.open(path, "rb") as fh:
        return load_tree(fh)
