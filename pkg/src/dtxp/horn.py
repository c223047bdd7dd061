"""Overconstrained propositional Horn formulas.

Hard clauses are ``body -> head`` with a conjunctive positive body and a
single positive head (``None`` stands for falsum).  Soft clauses are
positive units.  Satisfiability is decided by linear-time forward
chaining; MCS extraction uses linear search over the soft clauses and
MaxSAT a branch and bound over them.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernels


class HardUnsatError(RuntimeError):
    """The hard clauses alone are unsatisfiable (an encoding bug)."""


@dataclass(frozen=True)
class HornClause:
    body: frozenset[int]
    head: int | None
    tag: str = field(default="", compare=False)

    def __post_init__(self):
        if self.head is not None and self.head <= 0 or any(v <= 0 for v in self.body):
            raise ValueError("variables are positive integers")

    def dimacs(self) -> list[int]:
        lits = [-v for v in sorted(self.body)]
        if self.head is not None:
            lits.append(self.head)
        return lits


@dataclass
class HornProblem:
    hard: list[HornClause]
    soft: list[int]
    var_names: dict[int, str] = field(default_factory=dict)

    @property
    def nvars(self) -> int:
        top = max(self.var_names, default=0)
        for c in self.hard:
            top = max(top, c.head or 0, max(c.body, default=0))
        return max(top, max(self.soft, default=0))

    def name(self, v: int) -> str:
        return self.var_names.get(v, f"v{v}")

    def show(self, clause: HornClause) -> str:
        body = " & ".join(self.name(v) for v in sorted(clause.body))
        head = "F" if clause.head is None else self.name(clause.head)
        if not clause.body:
            return f"({head})" if clause.head is not None else "(F)"
        if clause.head is None:
            return f"(-{body})" if len(clause.body) == 1 else f"({body} -> F)"
        return f"({body} -> {head})"


@dataclass
class HornResult:
    sat: bool
    model: frozenset[int]
    conflict: list[int]
    visits: int = 0


class HornFormula:
    """Hard clauses compiled into CSR arrays for repeated solving."""

    def __init__(self, hard: Sequence[HornClause], nvars: int | None = None):
        self.hard = list(hard)
        top = 0
        for c in self.hard:
            top = max(top, c.head or 0, max(c.body, default=0))
        self.nvars = max(top, nvars or 0)
        self.body_ptr = array("i", [0])
        self.body = array("i")
        self.head = array("i")
        occ: list[list[int]] = [[] for _ in range(self.nvars + 1)]
        for k, c in enumerate(self.hard):
            for v in sorted(c.body):
                self.body.append(v)
                occ[v].append(k)
            self.body_ptr.append(len(self.body))
            self.head.append(c.head or 0)
        self.occ_ptr = array("i", [0])
        self.occ = array("i")
        for lst in occ:
            self.occ.extend(lst)
            self.occ_ptr.append(len(self.occ))
        self.calls = 0

    def solve(self, assumptions: Iterable[int] = ()) -> HornResult:
        assumptions = [a for a in assumptions]
        top = max(assumptions, default=0)
        if top > self.nvars:
            raise ValueError(f"assumption variable {top} unknown to the formula")
        value = array("B", [0]) * (self.nvars + 1)
        reason = array("i", [0]) * (self.nvars + 1)
        self.calls += 1
        conflict, visits = kernels.horn_propagate(self.nvars, self.body_ptr, self.body, self.head,
                                                  self.occ_ptr, self.occ, array("i", assumptions),
                                                  value, reason)
        if conflict < 0:
            return HornResult(True, frozenset(v for v in range(1, self.nvars + 1) if value[v]), [], visits)
        # clauses along the propagation chain, ending with the falsified one
        chain, todo, seen = set(), list(self.hard[conflict].body), set()
        while todo:
            v = todo.pop()
            if v in seen:
                continue
            seen.add(v)
            r = reason[v]
            if r >= 0:
                chain.add(r)
                todo.extend(self.hard[r].body)
        return HornResult(False, frozenset(), sorted(chain) + [conflict], visits)


def horn_sat(hard: Sequence[HornClause], assumptions: Iterable[int] = ()) -> HornResult:
    """SAT with the minimal model, or UNSAT with the propagation chain to falsum."""
    assumptions = list(assumptions)
    return HornFormula(hard, max(assumptions, default=0)).solve(assumptions)


def _prepare(problem: HornProblem) -> HornFormula:
    f = HornFormula(problem.hard, problem.nvars)
    res = f.solve()
    if not res.sat:
        chain = ", ".join(problem.show(problem.hard[k]) for k in res.conflict)
        raise HardUnsatError(f"hard clauses are unsatisfiable: {chain}")
    return f


def horn_mcs(problem: HornProblem, formula: HornFormula | None = None) -> tuple[list[int], frozenset[int]]:
    """Minimal correction subset by linear search over soft clauses in order.

    Returns the soft variables left falsified and the model satisfying the rest.
    """
    f = formula or _prepare(problem)
    kept: list[int] = []
    for s in problem.soft:
        if f.solve(kept + [s]).sat:
            kept.append(s)
    keep = set(kept)
    return [s for s in problem.soft if s not in keep], f.solve(kept).model


def check_mcs(problem: HornProblem, mcs: Iterable[int]) -> bool:
    """Post-hoc check: the complement is satisfiable and re-adding any clause is not."""
    f = HornFormula(problem.hard, problem.nvars)
    mcs = set(mcs)
    kept = [s for s in problem.soft if s not in mcs]
    if not f.solve(kept).sat:
        return False
    return all(not f.solve(kept + [c]).sat for c in mcs)


def horn_maxsat(problem: HornProblem, stats: dict | None = None) -> tuple[int, frozenset[int]]:
    """Maximum number of soft units satisfiable together with the hard clauses."""
    f = _prepare(problem)
    soft = list(problem.soft)
    mcs, _ = horn_mcs(problem, f)
    best = [s for s in soft if s not in set(mcs)]
    nodes = 0

    def search(k: int, inc: list[int]) -> None:
        nonlocal best, nodes
        nodes += 1
        if len(inc) + len(soft) - k <= len(best):
            return
        if k == len(soft):
            best = list(inc)
            return
        if f.solve(inc + [soft[k]]).sat:
            search(k + 1, inc + [soft[k]])
        search(k + 1, inc)

    search(0, [])
    if stats is not None:
        stats["nodes"] = nodes
        stats["sat_calls"] = f.calls
    return len(best), f.solve(best).model


def dump_dimacs(problem: HornProblem) -> str:
    """Weighted-DIMACS-like text: ``h`` lines are hard, ``1`` lines soft."""
    lines = [f"p wcnf {problem.nvars} {len(problem.hard) + len(problem.soft)} h"]
    for v in sorted(problem.var_names):
        lines.append(f"c {v} = {problem.var_names[v]}")
    tag = None
    for c in problem.hard:
        if c.tag != tag:
            tag = c.tag
            lines.append(f"c {tag}")
        lines.append("h " + " ".join(map(str, c.dimacs())) + " 0" + f"  c {problem.show(c)}")
    lines.append("c soft")
    for s in problem.soft:
        lines.append(f"1 {s} 0  c ({problem.name(s)})")
    return "\n".join(lines) + "\n"
