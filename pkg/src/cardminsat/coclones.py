"""Co-clone identification on Post's lattice and the minimal weak-base
registry.

Membership of a relation in a labeled co-clone is decided either by closure
properties (Horn = AND-closed, affine = XOR-definable, ...) or, for the
bounded-width IS chains, by clause saturation.  The containment order among
the labels is hardcoded static data; the test suite revalidates it against
the membership tests via the weak bases.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .classify import PropertyFingerprint, clause_definable, fingerprint, relation_properties
from .errors import CardMinSatError, GuardError
from .relations import ConstraintLanguage, Relation, build_named_relation

NON_IS_TAGS = (
    "IBF", "IR0", "IR1", "IR2",
    "IM", "IM0", "IM1", "IM2",
    "ID", "ID1", "ID2",
    "IL", "IL0", "IL1", "IL2", "IL3",
    "IV", "IV0", "IV1", "IV2",
    "IE", "IE0", "IE1", "IE2",
    "IN", "IN2",
    "II", "II0", "II1", "II2",
)

IS_TAGS = ("IS0", "IS02", "IS01", "IS00", "IS1", "IS12", "IS11", "IS10")

ALL_TAGS = NON_IS_TAGS + IS_TAGS


@dataclass(frozen=True)
class CoCloneId:
    """A labeled co-clone; IS-family tags carry their clause width."""

    tag: str
    width: int | None = None

    def __post_init__(self) -> None:
        if self.tag not in ALL_TAGS:
            raise ValueError(f"unknown co-clone tag {self.tag!r}")
        if self.tag in IS_TAGS:
            if self.width is None or self.width < 2:
                raise ValueError(f"{self.tag} needs a width >= 2")
        elif self.width is not None:
            raise ValueError(f"{self.tag} does not take a width")

    def __str__(self) -> str:
        if self.width is None:
            return self.tag
        return f"IS^{self.width}_{self.tag[2:]}"


def coclone(tag: str, width: int | None = None) -> CoCloneId:
    return CoCloneId(tag, width)


# --- membership --------------------------------------------------------

# Minimal property sets characterizing the property-based labels.
REQUIRED_PROPS: dict[str, tuple[str, ...]] = {
    "II2": (), "II0": ("zero",), "II1": ("one",), "II": ("zero", "one"),
    "IN2": ("comp",), "IN": ("comp", "zero"),
    "IE2": ("horn",), "IE1": ("horn", "one"), "IE0": ("horn", "zero"), "IE": ("horn", "zero", "one"),
    "IV2": ("dual",), "IV1": ("dual", "one"), "IV0": ("dual", "zero"), "IV": ("dual", "zero", "one"),
    "IL2": ("affine",), "IL1": ("affine", "one"), "IL0": ("affine", "zero"),
    "IL": ("affine", "zero", "one"), "IL3": ("affine", "comp"),
    "ID2": ("bij",), "ID1": ("bij", "affine"), "ID": ("bij", "comp"),
    "IM2": ("horn", "dual"), "IM1": ("horn", "dual", "one"), "IM0": ("horn", "dual", "zero"),
    "IM": ("horn", "dual", "zero", "one"),
    "IR2": ("horn", "affine"), "IR1": ("horn", "affine", "one"), "IR0": ("horn", "affine", "zero"),
    "IBF": ("horn", "comp"),
}

# Clause templates of the bounded-width chains (equality is always allowed).
IS_TEMPLATES: dict[str, tuple[str, ...]] = {
    "IS0": ("eq", "pos"),
    "IS02": ("eq", "F", "pos"),
    "IS01": ("eq", "impl", "pos"),
    "IS00": ("eq", "F", "impl", "pos"),
    "IS1": ("eq", "neg"),
    "IS12": ("eq", "T", "neg"),
    "IS11": ("eq", "impl", "neg"),
    "IS10": ("eq", "T", "impl", "neg"),
}


@lru_cache(maxsize=4096)
def _is_member(rel: Relation, tag: str, width: int | None) -> bool:
    if rel.rows == 0:
        return True  # the empty relation lies in every co-clone
    if tag in IS_TEMPLATES:
        return clause_definable(rel, IS_TEMPLATES[tag], width)
    props = relation_properties(rel)
    return all(props[p] for p in REQUIRED_PROPS[tag])


def relation_in_coclone(rel: Relation, c: CoCloneId) -> bool:
    return _is_member(rel, c.tag, c.width)


def language_in_coclone(language: ConstraintLanguage, c: CoCloneId) -> bool:
    return all(relation_in_coclone(r, c) for r in language)


# --- containment order --------------------------------------------------

# Implication-closed property sets; A <= B iff closed(B) is a subset of
# closed(A).  (More properties = smaller co-clone.)
_CLOSED_PROPS: dict[str, frozenset[str]] = {k: frozenset(v) for k, v in {
    "II2": (), "II0": ("zero",), "II1": ("one",), "II": ("zero", "one"),
    "IN2": ("comp",), "IN": ("comp", "zero", "one"),
    "IE2": ("horn",), "IE0": ("horn", "zero"), "IE1": ("horn", "one"), "IE": ("horn", "zero", "one"),
    "IV2": ("dual",), "IV0": ("dual", "zero"), "IV1": ("dual", "one"), "IV": ("dual", "zero", "one"),
    "IL2": ("affine",), "IL0": ("affine", "zero"), "IL1": ("affine", "one"),
    "IL": ("affine", "zero", "one", "comp"), "IL3": ("affine", "comp"),
    "ID2": ("bij",), "ID1": ("bij", "affine"), "ID": ("bij", "affine", "comp"),
    "IM2": ("horn", "dual", "bij"), "IM0": ("horn", "dual", "bij", "zero"),
    "IM1": ("horn", "dual", "bij", "one"), "IM": ("horn", "dual", "bij", "zero", "one"),
    "IR2": ("horn", "dual", "bij", "affine"), "IR0": ("horn", "dual", "bij", "affine", "zero"),
    "IR1": ("horn", "dual", "bij", "affine", "one"),
    "IBF": ("horn", "dual", "bij", "affine", "comp", "zero", "one"),
}.items()}

# IS-family order within a side (width ordered separately).
_IS_FAMILY_UP: dict[str, frozenset[str]] = {
    "IS0": frozenset({"IS0", "IS01", "IS02", "IS00"}),
    "IS01": frozenset({"IS01", "IS00"}),
    "IS02": frozenset({"IS02", "IS00"}),
    "IS00": frozenset({"IS00"}),
    "IS1": frozenset({"IS1", "IS11", "IS12", "IS10"}),
    "IS11": frozenset({"IS11", "IS10"}),
    "IS12": frozenset({"IS12", "IS10"}),
    "IS10": frozenset({"IS10"}),
}

# Property-based labels above / below each IS family (any width; ID2 is
# additionally above every width-2 family).
_IS_UPPER: dict[str, frozenset[str]] = {
    "IS0": frozenset({"IV2", "IV1", "II1", "II2"}),
    "IS01": frozenset({"IV2", "IV1", "II1", "II2"}),
    "IS02": frozenset({"IV2", "II2"}),
    "IS00": frozenset({"IV2", "II2"}),
    "IS1": frozenset({"IE2", "IE0", "II0", "II2"}),
    "IS11": frozenset({"IE2", "IE0", "II0", "II2"}),
    "IS12": frozenset({"IE2", "II2"}),
    "IS10": frozenset({"IE2", "II2"}),
}

_IS_LOWER: dict[str, frozenset[str]] = {
    "IS0": frozenset({"IBF", "IR1"}),
    "IS01": frozenset({"IBF", "IR1", "IM", "IM1"}),
    "IS02": frozenset({"IBF", "IR0", "IR1", "IR2"}),
    "IS00": frozenset({"IBF", "IR0", "IR1", "IR2", "IM", "IM0", "IM1", "IM2"}),
    "IS1": frozenset({"IBF", "IR0"}),
    "IS11": frozenset({"IBF", "IR0", "IM", "IM0"}),
    "IS12": frozenset({"IBF", "IR0", "IR1", "IR2"}),
    "IS10": frozenset({"IBF", "IR0", "IR1", "IR2", "IM", "IM0", "IM1", "IM2"}),
}


def coclone_leq(a: CoCloneId, b: CoCloneId) -> bool:
    """Containment a <= b in the co-clone lattice (hardcoded order)."""
    a_is, b_is = a.tag in IS_TAGS, b.tag in IS_TAGS
    if not a_is and not b_is:
        return _CLOSED_PROPS[b.tag] <= _CLOSED_PROPS[a.tag]
    if a_is and b_is:
        assert a.width is not None and b.width is not None
        return b.tag in _IS_FAMILY_UP[a.tag] and a.width <= b.width
    if a_is:
        return b.tag in _IS_UPPER[a.tag] or (b.tag == "ID2" and a.width == 2)
    return a.tag in _IS_LOWER[b.tag]


# --- classification buckets ---------------------------------------------


class Bucket(enum.Enum):
    TRIVIAL_0VALID = "Trivial0Valid"
    POLY_HORN = "PolyHorn"
    POLY_WIDTH2_AFFINE = "PolyWidth2Affine"
    THETA2_COMPLETE = "Theta2Complete"


_BUCKET_OF_TAG: dict[str, Bucket] = {}
for _t in ("IBF", "IR0", "IM", "IM0", "IL", "IL0", "IV", "IV0", "IE", "IE0",
           "IN", "II", "II0", "IS1", "IS11"):
    _BUCKET_OF_TAG[_t] = Bucket.TRIVIAL_0VALID
for _t in ("IR1", "IR2", "IM1", "IM2", "IE1", "IE2", "IS12", "IS10"):
    _BUCKET_OF_TAG[_t] = Bucket.POLY_HORN
for _t in ("ID", "ID1"):
    _BUCKET_OF_TAG[_t] = Bucket.POLY_WIDTH2_AFFINE
for _t in ("II2", "II1", "IN2", "IL1", "IL2", "IL3", "IV1", "IV2", "ID2",
           "IS0", "IS01", "IS02", "IS00"):
    _BUCKET_OF_TAG[_t] = Bucket.THETA2_COMPLETE
del _t


def bucket_for_coclone(c: CoCloneId) -> Bucket:
    """The tractability bucket a co-clone's lattice position dictates."""
    return _BUCKET_OF_TAG[c.tag]


@dataclass(frozen=True)
class ClassificationVerdict:
    bucket: Bucket
    fingerprint: PropertyFingerprint
    coclone: CoCloneId | None


def classify_cms(language: ConstraintLanguage) -> ClassificationVerdict:
    """The tractability classification of the minimum-weight query problem.

    0-valid languages are trivial (the answer is always no, the all-zero
    model being the unique minimum); otherwise Horn and width-2-affine
    languages are polynomial and everything else is complete for polynomial
    time with logarithmically many NP-oracle calls.
    """
    fp = fingerprint(language)
    if fp.zero_valid:
        bucket = Bucket.TRIVIAL_0VALID
    elif fp.horn:
        bucket = Bucket.POLY_HORN
    elif fp.width2_affine:
        bucket = Bucket.POLY_WIDTH2_AFFINE
    else:
        bucket = Bucket.THETA2_COMPLETE
    try:
        cc = identify_coclone(language)
    except GuardError:
        cc = None
    return ClassificationVerdict(bucket, fp, cc)


def identify_coclone(language: ConstraintLanguage) -> CoCloneId:
    """Least labeled co-clone containing the language (= its co-clone,
    since a finite language always generates a labeled one)."""
    members: list[CoCloneId] = []
    for tag in NON_IS_TAGS:
        c = CoCloneId(tag)
        if language_in_coclone(language, c):
            members.append(c)
    max_width = max(2, language.max_arity)
    for tag in IS_TAGS:
        for k in range(2, max_width + 1):
            c = CoCloneId(tag, k)
            if language_in_coclone(language, c):
                members.append(c)
                break  # wider instances of the same family are supersets
    minima = [m for m in members if all(coclone_leq(m, other) for other in members)]
    if len(minima) != 1:
        raise CardMinSatError(
            f"no unique least labeled co-clone found (candidates {[str(m) for m in minima]}); "
            "no finitely-generated label reachable")
    return minima[0]


# --- weak-base registry --------------------------------------------------


def _rel(name: str, arity: int, pred) -> Relation:
    return Relation.from_tuples(name, arity,
                                [t for t in _all_tuples(arity) if pred(*t)])


def _all_tuples(arity: int):
    for idx in range(1 << arity):
        yield tuple((idx >> (arity - 1 - i)) & 1 for i in range(arity))


def _weak_base_fixed(tag: str) -> Relation:
    if tag == "IBF":
        return build_named_relation("EQ").renamed("R_IBF")
    if tag == "IR0":
        return build_named_relation("F").renamed("R_IR0")
    if tag == "IR1":
        return build_named_relation("T").renamed("R_IR1")
    if tag == "IR2":
        return _rel("R_IR2", 2, lambda a, b: a == 0 and b == 1)
    if tag == "IM":
        return build_named_relation("IMPL").renamed("R_IM")
    if tag == "IM0":
        return _rel("R_IM0", 3, lambda a, b, f: a <= b and f == 0)
    if tag == "IM1":
        return _rel("R_IM1", 3, lambda a, b, t: a <= b and t == 1)
    if tag == "IM2":
        return _rel("R_IM2", 4, lambda a, b, f, t: a <= b and f == 0 and t == 1)
    if tag == "ID":
        return build_named_relation("NEQ").renamed("R_ID")
    if tag == "ID1":
        return _rel("R_ID1", 4, lambda a, b, f, t: a != b and f == 0 and t == 1)
    if tag == "ID2":
        return _rel("R_ID2", 6,
                    lambda a, b, c, d, f, t: (a or b) and a != c and b != d and f == 0 and t == 1)
    if tag == "IL":
        return build_named_relation("EVEN", 4).renamed("R_IL")
    if tag == "IL0":
        return _rel("R_IL0", 4, lambda a, b, c, f: (a + b + c) % 2 == 0 and f == 0)
    if tag == "IL1":
        return _rel("R_IL1", 4, lambda a, b, c, t: (a + b + c) % 2 == 1 and t == 1)
    if tag == "IL2":
        even3neq = build_named_relation("EVEN_KNEQ", 3)
        return Relation.from_tuples(
            "R_IL2", 8, [t + (0, 1) for t in even3neq.tuples()])
    if tag == "IL3":
        return build_named_relation("EVEN_KNEQ", 4).renamed("R_IL3")
    if tag == "IV":
        return _rel("R_IV", 4, lambda a, b, c, d: a == (b | c) and (b & c or d == 0))
    if tag == "IV0":
        return _rel("R_IV0", 4, lambda a, b, c, f: a == (b | c) and f == 0)
    if tag == "IV1":
        return _rel("R_IV1", 5,
                    lambda a, b, c, d, t: a == (b | c) and (b & c or d == 0) and t == 1)
    if tag == "IV2":
        return _rel("R_IV2", 5, lambda a, b, c, f, t: a == (b | c) and f == 0 and t == 1)
    if tag == "IE":
        return _rel("R_IE", 4, lambda a, b, c, d: a == (b & c) and (not (b | c) or d == 1))
    if tag == "IE0":
        return _rel("R_IE0", 5,
                    lambda a, b, c, d, f: a == (b & c) and (not (b | c) or d == 1) and f == 0)
    if tag == "IE1":
        return _rel("R_IE1", 4, lambda a, b, c, t: a == (b & c) and t == 1)
    if tag == "IE2":
        return _rel("R_IE2", 5, lambda a, b, c, f, t: a == (b & c) and f == 0 and t == 1)
    if tag == "IN":
        return _rel("R_IN", 4,
                    lambda a, b, c, d: (a + b + c + d) % 2 == 0 and (a & d) == (b & c))
    if tag == "IN2":
        # The even/disequality defining formula and the printed matrix of this
        # base disagree in the literature trail; the local-replacement
        # reductions only work with the matrix, so the matrix wins.
        return Relation.from_rows("R_IN2", 8, [
            "00001111", "00110011", "01010101", "10101010", "11001100", "11110000"])
    if tag == "II":
        return _rel("R_II", 4, lambda a, b, c, d: a == (b & c) and d == (b | c))
    if tag == "II0":
        return _rel("R_II0", 4,
                    lambda a, b, c, f: not (a and b) and c == (a | b) and f == 0)
    if tag == "II1":
        return _rel("R_II1", 4, lambda a, b, c, t: (a or b) and c == (a & b) and t == 1)
    if tag == "II2":
        r13 = build_named_relation("R13NEQ")
        return Relation.from_tuples("R_II2", 8, [t + (0, 1) for t in r13.tuples()])
    raise AssertionError(tag)


def _weak_base_is(tag: str, k: int) -> Relation:
    def orr(t: tuple[int, ...]) -> bool:
        return any(t[:k])

    def nand(t: tuple[int, ...]) -> bool:
        return not all(t[:k])

    name = f"R_{tag}_{k}"
    if tag == "IS0":
        return Relation.from_tuples(name, k + 1,
                                    [t for t in _all_tuples(k + 1) if orr(t) and t[k] == 1])
    if tag == "IS02":
        return Relation.from_tuples(name, k + 2,
                                    [t for t in _all_tuples(k + 2)
                                     if orr(t) and t[k] == 0 and t[k + 1] == 1])
    if tag == "IS01":
        return Relation.from_tuples(name, k + 2,
                                    [t for t in _all_tuples(k + 2)
                                     if orr(t) and (not t[k] or all(t[:k])) and t[k + 1] == 1])
    if tag == "IS00":
        return Relation.from_tuples(name, k + 3,
                                    [t for t in _all_tuples(k + 3)
                                     if orr(t) and (not t[k] or all(t[:k]))
                                     and t[k + 1] == 0 and t[k + 2] == 1])
    if tag == "IS1":
        return Relation.from_tuples(name, k + 1,
                                    [t for t in _all_tuples(k + 1) if nand(t) and t[k] == 0])
    if tag == "IS12":
        return Relation.from_tuples(name, k + 2,
                                    [t for t in _all_tuples(k + 2)
                                     if nand(t) and t[k] == 0 and t[k + 1] == 1])
    if tag == "IS11":
        return Relation.from_tuples(name, k + 2,
                                    [t for t in _all_tuples(k + 2)
                                     if nand(t) and all(x <= t[k] for x in t[:k]) and t[k + 1] == 0])
    if tag == "IS10":
        return Relation.from_tuples(name, k + 3,
                                    [t for t in _all_tuples(k + 3)
                                     if nand(t) and all(x <= t[k] for x in t[:k])
                                     and t[k + 1] == 0 and t[k + 2] == 1])
    raise AssertionError(tag)


@lru_cache(maxsize=None)
def weak_base(c: CoCloneId) -> Relation:
    """The minimal weak base of a labeled co-clone."""
    if c.tag in IS_TAGS:
        assert c.width is not None
        return _weak_base_is(c.tag, c.width)
    return _weak_base_fixed(c.tag)


def all_labels(widths: tuple[int, ...] = (2, 3, 4)) -> list[CoCloneId]:
    out = [CoCloneId(tag) for tag in NON_IS_TAGS]
    for tag in IS_TAGS:
        out.extend(CoCloneId(tag, k) for k in widths)
    return out


# --- report --------------------------------------------------------------


def format_verdict(verdict: ClassificationVerdict, witness=None) -> str:
    """Structured text report with a machine-readable key=value trailer."""
    from .fileio import render_formula_file, FormulaFile  # cycle-free at call time

    fp = verdict.fingerprint
    lines = ["classification report"]
    lines.append(f"  bucket: {verdict.bucket.value}")
    lines.append(f"  co-clone: {verdict.coclone if verdict.coclone else 'unidentified'}")
    flags = fp.flags()
    lines.append("  properties: " + ", ".join(k for k, v in flags.items() if v))
    lines.append("")
    lines.append(f"bucket={verdict.bucket.value}")
    lines.append(f"coclone={verdict.coclone if verdict.coclone else 'none'}")
    for key, val in flags.items():
        lines.append(f"{key}={'true' if val else 'false'}")
    for k, v in fp.pos_width:
        lines.append(f"width_positive_{k}={'true' if v else 'false'}")
    for k, v in fp.neg_width:
        lines.append(f"width_negative_{k}={'true' if v else 'false'}")
    text = "\n".join(lines) + "\n"
    if witness is not None:
        doc = FormulaFile(witness, ConstraintLanguage(tuple(witness.relations())), None, ())
        text += "witness:\n" + render_formula_file(doc)
    return text
