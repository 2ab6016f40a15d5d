"""Closure properties of relations: polymorphism tests, property
fingerprints, clause saturation, conjunction definability and the exact
pp-membership test for small relations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .errors import GuardError
from .formulas import Constraint, Formula
from .gauss import is_affine
from .relations import ConstraintLanguage, Relation, build_named_relation

CLOSURE_GUARD = 10**7


@dataclass(frozen=True)
class BoolOp:
    """A finite Boolean operation given by its truth table.

    Bit i of ``table`` is the value on the argument tuple whose index has the
    first argument as the most significant bit, matching Relation's row
    indexing.
    """

    name: str
    arity: int
    table: int

    def apply(self, args: Sequence[int]) -> int:
        idx = 0
        for a in args:
            idx = (idx << 1) | (a & 1)
        return (self.table >> idx) & 1


def op_from_function(name: str, arity: int, fn) -> BoolOp:
    table = 0
    for idx in range(1 << arity):
        bits = [(idx >> (arity - 1 - i)) & 1 for i in range(arity)]
        if fn(*bits):
            table |= 1 << idx
    return BoolOp(name, arity, table)


AND2 = op_from_function("and", 2, lambda x, y: x & y)
OR2 = op_from_function("or", 2, lambda x, y: x | y)
NOT1 = op_from_function("not", 1, lambda x: 1 - x)
MAJ3 = op_from_function("maj", 3, lambda x, y, z: (x + y + z) >= 2)
XOR3 = op_from_function("xor3", 3, lambda x, y, z: (x + y + z) & 1)


def closed_under(rel: Relation, op: BoolOp, guard: int = CLOSURE_GUARD) -> bool:
    """Does applying ``op`` component-wise to any tuples of ``rel`` stay in
    ``rel``?  Guarded at |R|**arity combinations."""
    r = rel.num_tuples
    if r == 0:
        return True
    m = op.arity
    total = r**m
    if total > guard:
        raise GuardError(f"closure check needs {r}**{m} combinations, over guard {guard}")
    bits = np.array(rel.tuples(), dtype=np.uint32)  # (r, k)
    table = np.fromiter(((op.table >> i) & 1 for i in range(1 << m)),
                        dtype=np.uint32, count=1 << m)
    member = rel.table()
    k = rel.arity
    place = np.left_shift(np.uint32(1), np.arange(k - 1, -1, -1, dtype=np.uint32))
    step = max(1, min(1 << 16, total))
    for start in range(0, total, step):
        cvec = np.arange(start, min(start + step, total), dtype=np.int64)
        arg = np.zeros((len(cvec), k), dtype=np.uint32)
        for i in range(m):
            digit = (cvec // r ** (m - 1 - i)) % r
            arg = (arg << np.uint32(1)) | bits[digit]
        res = table[arg]  # (chunk, k) result bits
        out = (res * place).sum(axis=1)
        if not member[out].all():
            return False
    return True


# ---------------------------------------------------------------------------
# Clause saturation
# ---------------------------------------------------------------------------

# Template kinds: eq / neq / impl are over coordinate pairs, T / F over single
# coordinates, pos / neg are clauses over coordinate subsets up to a width.


def _columns(arity: int) -> np.ndarray:
    space = np.arange(1 << arity, dtype=np.uint32)
    cols = np.zeros((arity, 1 << arity), dtype=bool)
    for i in range(arity):
        cols[i] = ((space >> np.uint32(arity - 1 - i)) & np.uint32(1)).astype(bool)
    return cols


def saturated_models(rel: Relation, kinds: Iterable[str], width: int | None = None) -> np.ndarray:
    """Model table of the conjunction of all implied template constraints."""
    k = rel.arity
    cols = _columns(k)
    members = np.flatnonzero(rel.table())
    acc = np.ones(1 << k, dtype=bool)
    tup = cols[:, members]  # (k, r) coordinate bits of the relation's tuples
    kindset = set(kinds)
    if "T" in kindset:
        for i in range(k):
            if tup[i].all():
                acc &= cols[i]
    if "F" in kindset:
        for i in range(k):
            if not tup[i].any():
                acc &= ~cols[i]
    if "eq" in kindset:
        for i, j in combinations(range(k), 2):
            if (tup[i] == tup[j]).all():
                acc &= ~(cols[i] ^ cols[j])
    if "neq" in kindset:
        for i, j in combinations(range(k), 2):
            if (tup[i] != tup[j]).all():
                acc &= cols[i] ^ cols[j]
    if "impl" in kindset:
        for i in range(k):
            for j in range(k):
                if i != j and (tup[i] <= tup[j]).all():
                    acc &= ~cols[i] | cols[j]
    if "pos" in kindset:
        for w in range(1, (width or k) + 1):
            for S in combinations(range(k), w):
                if tup[list(S)].any(axis=0).all():
                    acc &= cols[list(S)].any(axis=0)
    if "neg" in kindset:
        for w in range(1, (width or k) + 1):
            for S in combinations(range(k), w):
                if (~tup[list(S)]).any(axis=0).all():
                    acc &= (~cols[list(S)]).any(axis=0)
    return acc


def clause_definable(rel: Relation, kinds: Iterable[str], width: int | None = None) -> bool:
    """Is ``rel`` exactly the models of its implied template constraints?"""
    return bool((saturated_models(rel, kinds, width) == rel.table()).all())


# ---------------------------------------------------------------------------
# Property fingerprint
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyFingerprint:
    zero_valid: bool
    one_valid: bool
    complementive: bool
    horn: bool
    dual_horn: bool
    bijunctive: bool
    affine: bool
    width2_affine: bool
    pos_width: tuple[tuple[int, bool], ...]
    neg_width: tuple[tuple[int, bool], ...]

    def is_width_positive(self, k: int) -> bool:
        return dict(self.pos_width).get(k, False)

    def is_width_negative(self, k: int) -> bool:
        return dict(self.neg_width).get(k, False)

    def flags(self) -> dict[str, bool]:
        return {
            "zero_valid": self.zero_valid,
            "one_valid": self.one_valid,
            "complementive": self.complementive,
            "horn": self.horn,
            "dual_horn": self.dual_horn,
            "bijunctive": self.bijunctive,
            "affine": self.affine,
            "width2_affine": self.width2_affine,
        }


@lru_cache(maxsize=2048)
def relation_properties(rel: Relation) -> dict[str, bool]:
    """The seven basic closure/validity properties of one relation."""
    return {
        "zero": rel.zero_valid,
        "one": rel.one_valid,
        "comp": closed_under(rel, NOT1),
        "horn": closed_under(rel, AND2),
        "dual": closed_under(rel, OR2),
        "bij": closed_under(rel, MAJ3),
        "affine": is_affine(rel),
    }


def is_width_positive(rel: Relation, k: int) -> bool:
    """Definable by equalities, F units, implications and positive clauses
    of width <= k (the widest 0-side bounded-width class)."""
    return clause_definable(rel, ("eq", "F", "impl", "pos"), k)


def is_width_negative(rel: Relation, k: int) -> bool:
    return clause_definable(rel, ("eq", "T", "impl", "neg"), k)


def fingerprint(language: ConstraintLanguage) -> PropertyFingerprint:
    """Each flag holds iff every relation in the language has the property."""
    props = [relation_properties(r) for r in language]

    def every(key: str) -> bool:
        return all(p[key] for p in props)

    affine = every("affine")
    bij = every("bij")
    widths = range(2, language.max_arity + 1)
    return PropertyFingerprint(
        zero_valid=every("zero"),
        one_valid=every("one"),
        complementive=every("comp"),
        horn=every("horn"),
        dual_horn=every("dual"),
        bijunctive=bij,
        affine=affine,
        width2_affine=affine and bij,
        pos_width=tuple((k, all(is_width_positive(r, k) for r in language)) for k in widths),
        neg_width=tuple((k, all(is_width_negative(r, k) for r in language)) for k in widths),
    )


# ---------------------------------------------------------------------------
# Irredundancy and fictitious coordinates
# ---------------------------------------------------------------------------


def is_irredundant(rel: Relation) -> bool:
    """No two identical columns in the matrix representation."""
    cols = [rel.column(i) for i in range(1, rel.arity + 1)]
    return len(set(cols)) == len(cols)


def fictitious_coordinates(rel: Relation) -> tuple[int, ...]:
    """1-based coordinates whose value never affects membership."""
    table = rel.table()
    k = rel.arity
    space = np.arange(1 << k, dtype=np.uint32)
    out = []
    for i in range(1, k + 1):
        flipped = space ^ np.uint32(1 << (k - i))
        if (table == table[flipped]).all():
            out.append(i)
    return tuple(out)


# ---------------------------------------------------------------------------
# Conjunction definability (no existential variables)
# ---------------------------------------------------------------------------

DEFINABILITY_ARITY_GUARD = 10


def conjunction_definability(rel: Relation, language: ConstraintLanguage,
                             allow_equality: bool = False) -> Formula | None:
    """Witness formula defining ``rel`` over its own variables as a
    conjunction of language constraints, or None.

    The candidate is the conjunction of every implied constraint; any
    conjunctive definition is absorbed by it, so the test is exact.
    Tautological constraints and repeats of an already-seen constraint model
    set are dropped from the returned witness.
    """
    k = rel.arity
    if k > DEFINABILITY_ARITY_GUARD:
        raise GuardError(f"definability witness search limited to arity {DEFINABILITY_ARITY_GUARD}")
    vars = tuple(f"x{i}" for i in range(1, k + 1))
    cols = _columns(k)
    members = np.flatnonzero(rel.table())
    tup = cols[:, members]
    pool = list(language)
    if allow_equality and not any(r.same_tuples(build_named_relation("EQ")) for r in pool):
        pool.append(build_named_relation("EQ"))
    acc = np.ones(1 << k, dtype=bool)
    seen_masks: set[bytes] = set()
    witness: list[Constraint] = []
    for g in pool:
        g_table = g.table()
        for argpos in product(range(k), repeat=g.arity):
            # implied iff every tuple of rel lands in g on these coordinates
            arg = np.zeros(len(members), dtype=np.uint32)
            for p in argpos:
                arg = (arg << np.uint32(1)) | tup[p].astype(np.uint32)
            if not g_table[arg].all():
                continue
            model_bits = np.zeros(1 << k, dtype=np.uint32)
            for p in argpos:
                model_bits = (model_bits << np.uint32(1)) | cols[p].astype(np.uint32)
            mask_arr = g_table[model_bits]
            acc &= mask_arr
            key = mask_arr.tobytes()
            if mask_arr.all() or key in seen_masks:
                continue
            seen_masks.add(key)
            witness.append(Constraint(g, tuple(vars[p] for p in argpos)))
    if (acc == rel.table()).all():
        return Formula.of(witness, universe=vars)
    return None


# ---------------------------------------------------------------------------
# Exact pp-membership for relations with at most four tuples
# ---------------------------------------------------------------------------

PP_TUPLE_GUARD = 4


def pp_membership(rel: Relation, language: ConstraintLanguage) -> bool:
    """Is ``rel`` pp-definable from the language (rel in <language>)?

    Indicator criterion: with m = |rel|, the relation belongs to the
    co-clone generated by the language iff every m-ary polymorphism of the
    language maps the tuple columns of ``rel`` back into ``rel``.
    """
    m = rel.num_tuples
    if m == 0:
        return True
    if m > PP_TUPLE_GUARD:
        raise GuardError(f"pp-membership test limited to relations with <= {PP_TUPLE_GUARD} tuples")
    n_ops = 1 << (1 << m)
    ops = np.arange(n_ops, dtype=np.uint32)
    keep = np.ones(n_ops, dtype=bool)
    for g in language:
        g_tuples = g.tuples()
        member = g.table()
        kg = g.arity
        for combo in product(range(len(g_tuples)), repeat=m):
            res = np.zeros(n_ops, dtype=np.uint32)
            for j in range(kg):
                pattern = 0
                for t_index in combo:
                    pattern = (pattern << 1) | g_tuples[t_index][j]
                res = (res << np.uint32(1)) | ((ops >> np.uint32(pattern)) & np.uint32(1))
            keep &= member[res]
            if not keep.any():
                break
        if not keep.any():
            break
    surviving = ops[keep]
    if not len(surviving):
        raise AssertionError("projections always survive; polymorphism filter is broken")
    r_tuples = rel.tuples()
    member_r = rel.table()
    res = np.zeros(len(surviving), dtype=np.uint32)
    for j in range(rel.arity):
        pattern = 0
        for t in r_tuples:
            pattern = (pattern << 1) | t[j]
        res = (res << np.uint32(1)) | ((surviving >> np.uint32(pattern)) & np.uint32(1))
    return bool(member_r[res].all())
