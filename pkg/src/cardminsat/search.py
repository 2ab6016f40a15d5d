"""Complete backtracking search over formulas.

This is the internal NP-oracle: depth-first search in universe order, value
0 before 1, with constraint-compatibility propagation and weight-bound
pruning.  The first model found is therefore the lexicographically least one
among models satisfying the bound and the forced literals.
"""

from __future__ import annotations

from typing import Mapping

from .errors import PreconditionError
from .formulas import Assignment, Formula

UNASSIGNED = -1


class _Constraint:
    __slots__ = ("positions", "candidates", "own_vars")

    def __init__(self, positions: list[int], candidates: list[tuple[int, ...]]):
        self.positions = positions
        self.candidates = candidates
        self.own_vars = sorted(set(positions))


def _compile(formula: Formula) -> tuple[list[_Constraint], dict[str, int]]:
    index = {v: i for i, v in enumerate(formula.universe)}
    compiled = []
    for rel, vs in formula.constraints:
        positions = [index[v] for v in vs]
        k = rel.arity
        candidates = []
        for t in rel.tuples():
            per_var: dict[int, int] = {}
            ok = True
            for j in range(k):
                p = positions[j]
                if per_var.setdefault(p, t[j]) != t[j]:
                    ok = False
                    break
            if ok:
                candidates.append(t)
        compiled.append(_Constraint(positions, candidates))
    return compiled, index


class _Search:
    def __init__(self, formula: Formula, bound: int | None, forced: Mapping[str, int]):
        self.universe = formula.universe
        self.n = len(self.universe)
        self.constraints, index = _compile(formula)
        self.assign = [UNASSIGNED] * self.n
        self.ones = 0
        self.bound = self.n if bound is None else bound
        for v, b in forced.items():
            if v not in index:
                raise PreconditionError(f"forced literal on unknown variable {v!r}")
            self.assign[index[v]] = b & 1
            self.ones += b & 1

    def _compatible(self, con: _Constraint) -> list[tuple[int, ...]]:
        assign = self.assign
        pos = con.positions
        out = []
        for t in con.candidates:
            for j, p in enumerate(pos):
                a = assign[p]
                if a != UNASSIGNED and a != t[j]:
                    break
            else:
                out.append(t)
        return out

    def _propagate(self, trail: list[int]) -> bool:
        """Force values agreed on by every compatible tuple; False on conflict."""
        changed = True
        while changed:
            changed = False
            for con in self.constraints:
                compat = self._compatible(con)
                if not compat:
                    return False
                for j, p in enumerate(con.positions):
                    if self.assign[p] != UNASSIGNED:
                        continue
                    first = compat[0][j]
                    if all(t[j] == first for t in compat[1:]):
                        self.assign[p] = first
                        trail.append(p)
                        self.ones += first
                        if self.ones > self.bound:
                            return False
                        changed = True
        return True

    def _weight_slack_ok(self) -> bool:
        """Admissible lower bound: pack vertex-disjoint constraints and sum
        the minimum number of extra ones each still requires."""
        extra = 0
        used: set[int] = set()
        assign = self.assign
        for con in self.constraints:
            open_vars = [p for p in con.own_vars if assign[p] == UNASSIGNED]
            if not open_vars:
                continue
            if any(p in used for p in open_vars):
                continue
            best = None
            for t in self._compatible(con):
                add = 0
                counted: set[int] = set()
                for j, p in enumerate(con.positions):
                    if assign[p] == UNASSIGNED and p not in counted:
                        counted.add(p)
                        add += t[j]
                if best is None or add < best:
                    best = add
                    if best == 0:
                        break
            if best is None:
                return False
            if best:
                extra += best
                used.update(open_vars)
                if self.ones + extra > self.bound:
                    return False
        return self.ones + extra <= self.bound

    def run(self) -> Assignment | None:
        if self.ones > self.bound:
            return None
        return self._dfs()

    def _dfs(self) -> Assignment | None:
        trail: list[int] = []
        ones_before = self.ones
        ok = self._propagate(trail) and self._weight_slack_ok()
        if ok:
            try:
                pivot = self.assign.index(UNASSIGNED)
            except ValueError:
                return Assignment(self.universe, tuple(self.assign))
            for value in (0, 1):
                if self.ones + value > self.bound:
                    break
                self.assign[pivot] = value
                self.ones += value
                found = self._dfs()
                self.assign[pivot] = UNASSIGNED
                self.ones -= value
                if found is not None:
                    return found
        for p in trail:
            self.assign[p] = UNASSIGNED
        self.ones = ones_before
        return None


def find_model(formula: Formula, weight_bound: int | None = None,
               forced: Mapping[str, int] | None = None) -> Assignment | None:
    """Lexicographically least model of weight <= bound extending ``forced``,
    or None."""
    return _Search(formula, weight_bound, forced or {}).run()


def sat_leq(formula: Formula, weight_bound: int, forced: Mapping[str, int] | None = None) -> bool:
    """Decision oracle: is there a model of weight <= bound extending ``forced``?"""
    return find_model(formula, weight_bound, forced) is not None


def frozen_by_probing(formula: Formula) -> dict[str, int]:
    """Frozen variables computed with two satisfiability probes per variable."""
    base = find_model(formula)
    if base is None:
        raise PreconditionError("formula is unsatisfiable; every variable is vacuously frozen")
    out: dict[str, int] = {}
    values = base.as_dict()
    for v in formula.universe:
        flipped = find_model(formula, forced={v: 1 - values[v]})
        if flipped is None:
            out[v] = values[v]
    return out
