"""Small complete CNF decision procedure used by the enumerators.

DPLL with unit propagation and chronological backtracking.  Branching
takes the first unassigned variable and tries false first, so the search
is deterministic.  Clauses may be added between calls.
"""

from __future__ import annotations

from typing import Iterable


class Solver:
    def __init__(self, nvars: int = 0):
        self.nvars = nvars
        self.clauses: list[tuple[int, ...]] = []
        self.calls = 0

    def add_clause(self, lits: Iterable[int]) -> None:
        clause = tuple(dict.fromkeys(lits))
        for lit in clause:
            if lit == 0:
                raise ValueError("literal 0 is reserved")
            self.nvars = max(self.nvars, abs(lit))
        if any(-lit in clause for lit in clause):
            return  # tautology
        self.clauses.append(clause)

    def _propagate(self, value: list, trail: list) -> bool:
        changed = True
        while changed:
            changed = False
            for clause in self.clauses:
                free = None
                nfree = 0
                for lit in clause:
                    val = value[abs(lit)]
                    if val is None:
                        nfree += 1
                        free = lit
                    elif val == (lit > 0):
                        break
                else:
                    if nfree == 0:
                        return False
                    if nfree == 1:
                        value[abs(free)] = free > 0
                        trail.append((abs(free), False))
                        changed = True
        return True

    def solve(self) -> list[bool] | None:
        """A model indexed by variable (entry 0 unused), or None when UNSAT."""
        self.calls += 1
        value: list = [None] * (self.nvars + 1)
        # trail entries: (var, decision whose negative branch is still open)
        trail: list[tuple[int, bool]] = []
        while True:
            if self._propagate(value, trail):
                var = next((v for v in range(1, self.nvars + 1) if value[v] is None), None)
                if var is None:
                    return [bool(x) for x in value]
                value[var] = False
                trail.append((var, True))
                continue
            while trail:
                var, open_ = trail.pop()
                value[var] = None
                if open_:
                    value[var] = True
                    trail.append((var, False))
                    break
            else:
                return None
