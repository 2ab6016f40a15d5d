"""Linear algebra over the two-element field.

Provides ``gauss_solve`` for explicit XOR-equation systems, extraction of
parity-check equations from affine relations, and an exact minimum-weight
query answerer for formulas whose relations are all affine.

The solver keeps every determined variable fully reduced: its value is an
int mask over the constant bit and the bits of the currently-free "slot"
variables.  Equations that determine nothing new eliminate one slot by
back-substitution through a user index, and retired slot ids are recycled,
so masks stay narrow even on systems with hundreds of thousands of highly
redundant equations.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import GuardError
from .formulas import Formula, require_query
from .relations import Relation

XorEquation = tuple[Sequence[str], int]

DEFAULT_DIM_GUARD = 22


class GF2Solver:
    """Online Gauss-Jordan elimination in solved form.

    Every seen variable maps to an int mask: bit 0 is the affine constant,
    bit s (s >= 1) stands for the free variable currently occupying slot s
    (whose own mask is exactly that bit).  Masks only ever reference live
    slots; eliminating a slot back-substitutes through a user index and its
    id is recycled, which keeps masks narrow on huge redundant systems.
    """

    def __init__(self) -> None:
        self.mask: dict[str, int] = {}
        self.var_of_slot: dict[int, str] = {}
        self._users: dict[int, set[str]] = {}
        self._spare_ids: list[int] = []
        self._next_slot = 1
        self.unsat = False

    def _new_slot(self, var: str) -> int:
        if self._spare_ids:
            s = self._spare_ids.pop()
        else:
            s = self._next_slot
            self._next_slot += 1
        self.var_of_slot[s] = var
        self.mask[var] = 1 << s
        self._users[s] = {var}
        return s

    def add(self, vars: Sequence[str], parity: int) -> None:
        """Add the equation ``xor(vars) = parity``; repetitions cancel."""
        if self.unsat:
            return
        mask = self.mask
        expr = parity & 1
        unseen: list[str] = []
        for v in vars:
            m = mask.get(v)
            if m is not None:
                expr ^= m
            elif v in unseen:
                unseen.remove(v)
            else:
                unseen.append(v)
        if unseen:
            pivot = unseen.pop()
            for v in unseen:
                expr ^= 1 << self._new_slot(v)
            mask[pivot] = expr
            users = self._users
            bits = expr & ~1
            while bits:
                low = bits & -bits
                bits ^= low
                users[low.bit_length() - 1].add(pivot)
            return
        if expr == 0:
            return
        if expr == 1:
            self.unsat = True
            return
        self._retire(expr)

    def _retire(self, expr: int) -> None:
        """Pick the least-referenced free slot of ``expr``, solve its
        variable, and back-substitute everywhere the slot occurs."""
        users_index = self._users
        best = None
        bits = expr & ~1
        while bits:
            low = bits & -bits
            bits ^= low
            s = low.bit_length() - 1
            load = len(users_index[s])
            if best is None or load < best[0]:
                best = (load, s)
        assert best is not None
        s = best[1]
        bit = 1 << s
        del self.var_of_slot[s]
        users = users_index.pop(s)
        self._spare_ids.append(s)
        newexpr = expr ^ bit
        delta = bit ^ newexpr
        mask = self.mask
        for w in users:
            new = mask[w] ^ delta
            mask[w] = new
            changed = newexpr & ~1
            while changed:
                low = changed & -changed
                changed ^= low
                if new & low:
                    users_index[low.bit_length() - 1].add(w)
                else:
                    users_index[low.bit_length() - 1].discard(w)

    # -- queries ---------------------------------------------------------

    @property
    def satisfiable(self) -> bool:
        return not self.unsat

    def free_slot_bits(self) -> list[int]:
        return sorted(self.var_of_slot)

    def value_mask(self, var: str) -> int:
        """Value mask of ``var`` over the constant bit and the free slots;
        variables mentioned in no equation read as constant 0."""
        return self.mask.get(var, 0)

    def solution(self) -> dict[str, int]:
        """One solution, free variables set to 0."""
        if self.unsat:
            raise ValueError("system is unsatisfiable")
        return {v: m & 1 for v, m in self.mask.items()}


def gauss_solve(equations: Iterable[XorEquation]) -> tuple[bool, dict[str, int] | None]:
    """Decide an XOR system; on success also return one solution (frees 0)."""
    solver = GF2Solver()
    for vars, parity in equations:
        solver.add(vars, parity)
    if not solver.satisfiable:
        return False, None
    return True, solver.solution()


# ---------------------------------------------------------------------------
# Affine relations as parity-check systems
# ---------------------------------------------------------------------------


@lru_cache(maxsize=512)
def _parity_checks(arity: int, rows: int) -> tuple[tuple[tuple[int, ...], int], ...] | None:
    if rows == 0:
        # The empty relation is the contradictory system on the first coordinate.
        return (((0,), 0), ((0,), 1))
    idxs = []
    r = rows
    while r:
        low = r & -r
        idxs.append(low.bit_length() - 1)
        r ^= low
    t0 = idxs[0]
    basis: dict[int, int] = {}
    for t in idxs[1:]:
        vec = t ^ t0
        while vec:
            p = vec.bit_length() - 1
            if p in basis:
                vec ^= basis[p]
            else:
                basis[p] = vec
                break
    if len(idxs) != 1 << len(basis):
        return None
    # Reduce the span basis so each pivot occurs in exactly one vector.
    for p in sorted(basis, reverse=True):
        for q in basis:
            if q != p and (basis[q] >> p) & 1:
                basis[q] ^= basis[p]
    pivots = set(basis)
    checks: list[tuple[tuple[int, ...], int]] = []
    for f in range(arity):
        if f in pivots:
            continue
        h = 1 << f
        for p, vec in basis.items():
            if (vec >> f) & 1:
                h |= 1 << p
        coords = tuple(sorted(arity - 1 - b for b in range(arity) if (h >> b) & 1))
        checks.append((coords, (h & t0).bit_count() & 1))
    return tuple(checks)


def affine_parity_checks(rel: Relation) -> tuple[tuple[tuple[int, ...], int], ...] | None:
    """XOR equations over 0-based coordinates defining ``rel``, or None if
    the relation is not affine."""
    return _parity_checks(rel.arity, rel.rows)


def is_affine(rel: Relation) -> bool:
    return affine_parity_checks(rel) is not None


def formula_system(formula: Formula) -> GF2Solver | None:
    """Load a formula whose relations are all affine; None otherwise.

    This is the hot path for verifying reduction outputs with hundreds of
    thousands of constraints, so the equation fold is inlined rather than
    routed through ``GF2Solver.add``.
    """
    solver = GF2Solver()
    cache: dict[str, tuple[tuple[tuple[int, ...], int], ...]] = {}
    mask = solver.mask
    users = solver._users
    for rel, vs in formula.constraints:
        checks = cache.get(rel.name)
        if checks is None:
            found = affine_parity_checks(rel)
            if found is None:
                return None
            checks = cache[rel.name] = found
        if solver.unsat:
            break
        for coords, parity in checks:
            expr = parity
            unseen: list[str] | None = None
            for j in coords:
                v = vs[j]
                m = mask.get(v)
                if m is not None:
                    expr ^= m
                elif unseen is None:
                    unseen = [v]
                elif v in unseen:
                    unseen.remove(v)
                else:
                    unseen.append(v)
            if unseen:
                pivot = unseen.pop()
                for v in unseen:
                    expr ^= 1 << solver._new_slot(v)
                mask[pivot] = expr
                bits = expr & ~1
                while bits:
                    low = bits & -bits
                    bits ^= low
                    users[low.bit_length() - 1].add(pivot)
            elif expr == 0:
                pass
            elif expr == 1:
                solver.unsat = True
                break
            else:
                solver._retire(expr)
    return solver


def _parity_vectors(masks: dict[int, int], dim_of_bit: dict[int, int], dim: int) -> np.ndarray:
    """Weight contribution over all 2**dim free assignments, const included."""
    total = np.zeros(1 << dim, dtype=np.int64)
    space = np.arange(1 << dim, dtype=np.uint32)
    for mask, count in masks.items():
        vec = np.zeros(1 << dim, dtype=bool)
        if mask & 1:
            vec ^= True
        bits = mask & ~1
        while bits:
            low = bits & -bits
            bits ^= low
            vec ^= ((space >> np.uint32(dim_of_bit[low.bit_length() - 1])) & np.uint32(1)).astype(bool)
        total += count * vec
    return total


def cms_affine(formula: Formula, query: str,
               dim_guard: int = DEFAULT_DIM_GUARD) -> tuple[bool, int | None, bool] | None:
    """Exact (satisfiable, min_weight, query-in-some-min-model) for a formula
    built from affine relations only; None when some relation is not affine.

    Variables mentioned by no parity check are weighed as constant 0, which
    matches minimum-weight semantics: setting them to 1 only adds weight.
    """
    require_query(formula, query)
    solver = formula_system(formula)
    if solver is None:
        return None
    if not solver.satisfiable:
        return (False, None, False)
    free = solver.free_slot_bits()
    dim = len(free)
    if dim > dim_guard:
        raise GuardError(f"solution space dimension {dim} exceeds guard {dim_guard}")
    dim_of_bit = {b: i for i, b in enumerate(free)}
    masks: dict[int, int] = {}
    for v in formula.universe:
        m = solver.value_mask(v)
        masks[m] = masks.get(m, 0) + 1
    weights = _parity_vectors(masks, dim_of_bit, dim)
    qvec = _parity_vectors({solver.value_mask(query): 1}, dim_of_bit, dim).astype(bool)
    min_weight = int(weights.min())
    verdict = bool(np.any(qvec & (weights == min_weight)))
    return (True, min_weight, verdict)
