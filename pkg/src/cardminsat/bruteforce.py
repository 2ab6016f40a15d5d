"""Exhaustive-enumeration oracles that every engine is checked against."""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .errors import GuardError, PreconditionError
from .formulas import (Assignment, CmsAnswer, CmsStarInstance, Formula, IN_MIN_MODEL,
                       QUERY_FALSE, UNSATISFIABLE, require_query)
from . import search

DEFAULT_MAX_VARS = 24
_CHUNK = 1 << 20


def _popcount_u32(a: np.ndarray) -> np.ndarray:
    a = a - ((a >> np.uint32(1)) & np.uint32(0x55555555))
    a = (a & np.uint32(0x33333333)) + ((a >> np.uint32(2)) & np.uint32(0x33333333))
    a = (a + (a >> np.uint32(4))) & np.uint32(0x0F0F0F0F)
    return ((a * np.uint32(0x01010101)) >> np.uint32(24)) & np.uint32(0x3F)


def _check_guard(formula: Formula, max_vars: int) -> int:
    n = formula.num_vars
    if n > max_vars:
        raise GuardError(f"universe of {n} variables exceeds the enumeration guard ({max_vars})")
    return n


def _model_chunks(formula: Formula, n: int) -> Iterator[np.ndarray]:
    """Yield arrays of model indices; index bit (n-1-j) holds variable j."""
    pos = {v: i for i, v in enumerate(formula.universe)}
    tables = [(c.relation.table(), [pos[v] for v in c.vars]) for c in formula.constraints]
    total = 1 << n
    for start in range(0, total, _CHUNK):
        idxs = np.arange(start, min(start + _CHUNK, total), dtype=np.uint32)
        keep = np.ones(len(idxs), dtype=bool)
        for table, positions in tables:
            k = len(positions)
            tup = np.zeros(len(idxs), dtype=np.uint32)
            for j, p in enumerate(positions):
                tup |= ((idxs >> np.uint32(n - 1 - p)) & np.uint32(1)) << np.uint32(k - 1 - j)
            keep &= table[tup]
            if not keep.any():
                break
        yield idxs[keep]


def _index_to_assignment(formula: Formula, idx: int) -> Assignment:
    n = formula.num_vars
    return Assignment(formula.universe, tuple((idx >> (n - 1 - j)) & 1 for j in range(n)))


def enumerate_models(formula: Formula, max_vars: int = DEFAULT_MAX_VARS) -> list[Assignment]:
    """All satisfying assignments, in lexicographic order of the universe."""
    n = _check_guard(formula, max_vars)
    out: list[Assignment] = []
    for chunk in _model_chunks(formula, n):
        out.extend(_index_to_assignment(formula, int(i)) for i in chunk)
    return out


def cms_bruteforce(formula: Formula, query: str, max_vars: int = DEFAULT_MAX_VARS) -> CmsAnswer:
    """Reference answer by scanning the full assignment space."""
    require_query(formula, query)
    n = _check_guard(formula, max_vars)
    qshift = np.uint32(n - 1 - formula.universe.index(query))
    min_weight: int | None = None
    best_q: int | None = None  # least index among min-weight models with query=1
    for chunk in _model_chunks(formula, n):
        if not len(chunk):
            continue
        weights = _popcount_u32(chunk).astype(np.int64)
        w = int(weights.min())
        if min_weight is None or w < min_weight:
            min_weight = w
            best_q = None
        if w == min_weight:
            sel = chunk[(weights == w) & (((chunk >> qshift) & np.uint32(1)).astype(bool))]
            if len(sel):
                cand = int(sel.min())
                if best_q is None or cand < best_q:
                    best_q = cand
    if min_weight is None:
        return CmsAnswer(False, None, None, UNSATISFIABLE)
    if best_q is None:
        return CmsAnswer(False, min_weight, None, QUERY_FALSE)
    return CmsAnswer(True, min_weight, _index_to_assignment(formula, best_q), IN_MIN_MODEL)


def cms_star_bruteforce(instance: CmsStarInstance, max_vars: int = DEFAULT_MAX_VARS) -> bool:
    answer = cms_bruteforce(instance.formula, instance.query, max_vars)
    return answer.verdict and answer.min_weight is not None and answer.min_weight <= instance.bound


def frozen_vars(formula: Formula, max_vars: int = DEFAULT_MAX_VARS, method: str = "auto") -> dict[str, int]:
    """Variables taking one fixed value across all models, with that value.

    ``method`` selects enumeration ("enumerate"), satisfiability probing
    ("probe"), or enumeration with probing beyond the guard ("auto").
    The formula must be satisfiable.
    """
    if method not in ("auto", "enumerate", "probe"):
        raise ValueError(f"unknown method {method!r}")
    if method == "probe" or (method == "auto" and formula.num_vars > max_vars):
        return search.frozen_by_probing(formula)
    n = _check_guard(formula, max_vars)
    ones = np.ones(n, dtype=bool)
    zeros = np.ones(n, dtype=bool)
    seen = False
    shifts = np.uint32(n - 1) - np.arange(n, dtype=np.uint32)
    for chunk in _model_chunks(formula, n):
        if not len(chunk):
            continue
        seen = True
        bits = ((chunk[:, None] >> shifts[None, :]) & np.uint32(1)).astype(bool)
        ones &= bits.all(axis=0)
        zeros &= (~bits).all(axis=0)
    if not seen:
        raise PreconditionError("formula is unsatisfiable; every variable is vacuously frozen")
    out: dict[str, int] = {}
    for j, v in enumerate(formula.universe):
        if ones[j]:
            out[v] = 1
        elif zeros[j]:
            out[v] = 0
    return out
