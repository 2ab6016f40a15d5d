"""Boolean relations stored as bitsets over tuple indices.

A k-ary relation is a set of k-tuples over {0,1}.  We index tuples by the
integer whose binary expansion is the tuple with coordinate 1 as the most
significant bit, so a matrix row printed as ``10001101`` is simply
``int("10001101", 2)``.  The whole relation is one Python int with bit i set
iff tuple index i belongs to the relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import GuardError

MAX_ARITY = 16


def tuple_to_index(bits: Sequence[int]) -> int:
    """Index of a tuple, first coordinate most significant."""
    idx = 0
    for b in bits:
        idx = (idx << 1) | (b & 1)
    return idx


def index_to_tuple(idx: int, arity: int) -> tuple[int, ...]:
    return tuple((idx >> (arity - 1 - i)) & 1 for i in range(arity))


@dataclass(frozen=True)
class Relation:
    """A named k-ary Boolean relation; ``rows`` is the tuple-index bitset."""

    name: str
    arity: int
    rows: int

    def __post_init__(self) -> None:
        if not 1 <= self.arity <= MAX_ARITY:
            raise GuardError(f"relation arity must be in [1, {MAX_ARITY}], got {self.arity}")
        if self.rows < 0 or self.rows >> (1 << self.arity):
            raise ValueError(f"row bitset of {self.name!r} has tuples outside arity {self.arity}")
        if not self.name or any(c.isspace() for c in self.name):
            raise ValueError(f"bad relation name {self.name!r}")

    @classmethod
    def from_tuples(cls, name: str, arity: int, tuples: Iterable[Sequence[int]]) -> "Relation":
        rows = 0
        for t in tuples:
            if len(t) != arity:
                raise ValueError(f"tuple {tuple(t)} does not have arity {arity}")
            rows |= 1 << tuple_to_index(t)
        return cls(name, arity, rows)

    @classmethod
    def from_rows(cls, name: str, arity: int, rows: Iterable[str]) -> "Relation":
        """Build from matrix rows written as 0/1 strings, e.g. ``"100011"``."""
        bitset = 0
        for r in rows:
            if len(r) != arity or set(r) - {"0", "1"}:
                raise ValueError(f"bad matrix row {r!r} for arity {arity}")
            bitset |= 1 << int(r, 2)
        return cls(name, arity, bitset)

    # -- queries ---------------------------------------------------------

    def __contains__(self, t: Sequence[int]) -> bool:
        return bool((self.rows >> tuple_to_index(t)) & 1)

    def has_index(self, idx: int) -> bool:
        return bool((self.rows >> idx) & 1)

    @property
    def num_tuples(self) -> int:
        return self.rows.bit_count()

    def tuple_indices(self) -> list[int]:
        """Sorted tuple indices (the canonical matrix row order)."""
        rows, out = self.rows, []
        while rows:
            low = rows & -rows
            out.append(low.bit_length() - 1)
            rows ^= low
        return out

    def tuples(self) -> list[tuple[int, ...]]:
        return [index_to_tuple(i, self.arity) for i in self.tuple_indices()]

    def matrix_rows(self) -> list[str]:
        return ["".join(map(str, t)) for t in self.tuples()]

    def column(self, coord: int) -> tuple[int, ...]:
        """Column of the matrix representation; ``coord`` is 1-based."""
        if not 1 <= coord <= self.arity:
            raise ValueError(f"coordinate {coord} out of range for arity {self.arity}")
        return tuple(t[coord - 1] for t in self.tuples())

    @property
    def zero_valid(self) -> bool:
        return bool(self.rows & 1)

    @property
    def one_valid(self) -> bool:
        return self.has_index((1 << self.arity) - 1)

    def same_tuples(self, other: "Relation") -> bool:
        return self.arity == other.arity and self.rows == other.rows

    def renamed(self, name: str) -> "Relation":
        return Relation(name, self.arity, self.rows)

    def table(self) -> np.ndarray:
        """Membership table as a bool array of length 2**arity."""
        return _relation_table(self.arity, self.rows).copy()


@lru_cache(maxsize=512)
def _relation_table(arity: int, rows: int) -> np.ndarray:
    size = 1 << arity
    table = np.zeros(size, dtype=bool)
    idx = rows
    while idx:
        low = idx & -idx
        table[low.bit_length() - 1] = True
        idx ^= low
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class ConstraintLanguage:
    """A finite, non-empty set of relations with unique names."""

    relations: tuple[Relation, ...]

    def __post_init__(self) -> None:
        if not self.relations:
            raise ValueError("constraint language must be non-empty")
        names = [r.name for r in self.relations]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate relation names in language: {names}")

    @classmethod
    def of(cls, *relations: Relation) -> "ConstraintLanguage":
        return cls(tuple(relations))

    def __iter__(self) -> Iterator[Relation]:
        return iter(self.relations)

    def __len__(self) -> int:
        return len(self.relations)

    def get(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(f"no relation named {name!r} in language")

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.relations)

    @property
    def max_arity(self) -> int:
        return max(r.arity for r in self.relations)

    def union(self, other: "ConstraintLanguage") -> "ConstraintLanguage":
        extra = tuple(r for r in other.relations if r.name not in self)
        return ConstraintLanguage(self.relations + extra)


# ---------------------------------------------------------------------------
# Named relation families
# ---------------------------------------------------------------------------

FAMILIES = ("OR", "NAND", "XOR", "EVEN", "EVEN_KNEQ", "NAE3", "R13NEQ", "T", "F", "EQ", "NEQ", "IMPL")

_PARAM_MAX_K = 8


def _parity(idx: int) -> int:
    return idx.bit_count() & 1


def build_named_relation(family: str, k: int | None = None) -> Relation:
    """Construct one of the stock relations.

    ``k`` is required for the parameterized families (OR, NAND, XOR, EVEN,
    EVEN_KNEQ) with 1 <= k <= 8 and ignored for the fixed-arity ones.
    EVEN_KNEQ(k) is the 2k-ary relation pairing an even-weight first half
    with its coordinate-wise complement.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown relation family {family!r}")
    if family in ("OR", "NAND", "XOR", "EVEN", "EVEN_KNEQ"):
        if k is None:
            raise ValueError(f"family {family} needs an arity parameter")
        if not 1 <= k <= _PARAM_MAX_K:
            raise GuardError(f"family {family} arity parameter must be in [1, {_PARAM_MAX_K}]")
    if family == "OR":
        return Relation(f"OR{k}", k, ((1 << (1 << k)) - 1) & ~1)
    if family == "NAND":
        full = (1 << (1 << k)) - 1
        return Relation(f"NAND{k}", k, full & ~(1 << ((1 << k) - 1)))
    if family == "XOR":
        rows = sum(1 << i for i in range(1 << k) if _parity(i))
        return Relation(f"XOR{k}", k, rows)
    if family == "EVEN":
        rows = sum(1 << i for i in range(1 << k) if not _parity(i))
        return Relation(f"EVEN{k}", k, rows)
    if family == "EVEN_KNEQ":
        assert k is not None
        if 2 * k > MAX_ARITY:
            raise GuardError(f"EVEN_KNEQ({k}) would have arity {2 * k} > {MAX_ARITY}")
        mask = (1 << k) - 1
        rows = 0
        for half in range(1 << k):
            if not _parity(half):
                rows |= 1 << ((half << k) | (~half & mask))
        return Relation(f"EVEN{k}NEQ", 2 * k, rows)
    if family == "NAE3":
        return Relation("NAE3", 3, 0b01111110)
    if family == "R13NEQ":
        return Relation.from_rows("R13NEQ", 6, ["100011", "010101", "001110"])
    if family == "T":
        return Relation("T", 1, 0b10)
    if family == "F":
        return Relation("F", 1, 0b01)
    if family == "EQ":
        return Relation("EQ", 2, 0b1001)
    if family == "NEQ":
        return Relation("NEQ", 2, 0b0110)
    if family == "IMPL":
        return Relation("IMPL", 2, 0b1011)
    raise AssertionError(family)
