import random

import pytest

from cardminsat import (AND2, ConstraintLanguage, GuardError, MAJ3, NOT1, OR2 as OR2_OP, Relation,
                        XOR3 as XOR3_OP, build_named_relation, closed_under,
                        conjunction_definability, fictitious_coordinates, fingerprint,
                        is_irredundant, pp_membership)
from cardminsat.classify import relation_properties
from cardminsat.coclones import CoCloneId, weak_base

from helpers import EQ, F, IMPL, NAE3, NEQ, OR2, T, XOR3


def lang(*rels):
    return ConstraintLanguage.of(*rels)


def test_closed_under_examples():
    assert not closed_under(OR2, AND2)      # 01 and 10 meet at 00
    assert closed_under(OR2, OR2_OP)
    assert closed_under(XOR3, XOR3_OP)
    assert closed_under(NAE3, NOT1)
    assert not closed_under(NAE3, MAJ3)


def test_closed_under_guard():
    full = Relation("full", 10, (1 << (1 << 10)) - 1)
    with pytest.raises(GuardError):
        closed_under(full, MAJ3)


def test_fingerprint_impl():
    fp = fingerprint(lang(IMPL))
    assert fp.zero_valid and fp.one_valid and fp.horn and fp.dual_horn and fp.bijunctive
    assert not fp.affine and not fp.width2_affine and not fp.complementive


def test_fingerprint_neq():
    fp = fingerprint(lang(NEQ))
    assert fp.width2_affine and fp.affine and fp.bijunctive
    assert not fp.zero_valid and not fp.one_valid and fp.complementive


def test_fingerprint_or2():
    fp = fingerprint(lang(OR2))
    assert not fp.horn and fp.one_valid and fp.dual_horn and not fp.zero_valid
    assert fp.is_width_positive(2)
    assert not fp.is_width_negative(2)


def test_width_flags_grow_with_clause_width():
    or3 = build_named_relation("OR", 3)
    fp = fingerprint(lang(or3))
    assert not fp.is_width_positive(2)
    assert fp.is_width_positive(3)
    nand3 = build_named_relation("NAND", 3)
    fp = fingerprint(lang(nand3))
    assert not fp.is_width_negative(2)
    assert fp.is_width_negative(3)


def test_fingerprint_union_is_componentwise_conjunction():
    rng = random.Random(4)
    pool = [OR2, NEQ, IMPL, NAE3, XOR3, T, F, EQ,
            build_named_relation("NAND", 2), build_named_relation("EVEN", 3)]
    for _ in range(30):
        a = rng.sample(pool, rng.randint(1, 3))
        b = rng.sample(pool, rng.randint(1, 3))
        both = lang(*{r.name: r for r in a + b}.values())
        fa, fb, fu = fingerprint(lang(*a)), fingerprint(lang(*b)), fingerprint(both)
        for key, val in fu.flags().items():
            assert val == (fa.flags()[key] and fb.flags()[key])


def test_width2_affine_iff_definable_from_two_var_parity_relations():
    # cross-validation of the algebraic shortcut against the definability oracle
    basis = lang(F, T, NEQ)
    rng = random.Random(12)
    rows_pool = [rng.getrandbits(16) for _ in range(60)]
    for arity in (1, 2, 3):
        for rows in range(1 << (1 << arity)):
            rel = Relation("r", arity, rows)
            fp = relation_properties(rel)
            w2a = fp["affine"] and fp["bij"]
            witness = conjunction_definability(rel, basis, allow_equality=True)
            assert w2a == (witness is not None), (arity, rows)
    for rows in rows_pool:
        rel = Relation("r", 4, rows)
        fp = relation_properties(rel)
        w2a = fp["affine"] and fp["bij"]
        assert w2a == (conjunction_definability(rel, basis, allow_equality=True) is not None)


def test_definability_eq_from_impl_exact_witness():
    witness = conjunction_definability(EQ, lang(IMPL))
    assert witness is not None
    shape = [(c.relation.name, c.vars) for c in witness.constraints]
    assert shape == [("IMPL", ("x1", "x2")), ("IMPL", ("x2", "x1"))]


def test_definability_or2_from_impl_fails():
    assert conjunction_definability(OR2, lang(IMPL)) is None


def test_definability_neq_from_nae3():
    witness = conjunction_definability(NEQ, lang(NAE3))
    assert witness is not None
    assert [(c.relation.name, c.vars) for c in witness.constraints] == [("NAE3", ("x1", "x1", "x2"))]


def test_definability_equality_flag():
    assert conjunction_definability(EQ, lang(NEQ)) is None
    assert conjunction_definability(EQ, lang(NEQ), allow_equality=True) is not None


def test_definability_guard():
    wide = Relation("w", 11, 0)
    with pytest.raises(GuardError):
        conjunction_definability(wide, lang(T))


def test_pp_membership_examples():
    assert pp_membership(OR2, lang(weak_base(CoCloneId("II2"))))
    assert pp_membership(T, lang(OR2))
    assert not pp_membership(F, lang(OR2))


def test_pp_membership_guard():
    with pytest.raises(GuardError):
        pp_membership(NAE3, lang(OR2))  # six tuples


def test_definability_implies_pp_membership():
    cases = [(EQ, lang(IMPL)), (NEQ, lang(NAE3)), (T, lang(OR2)), (OR2, lang(OR2))]
    for rel, language in cases:
        if conjunction_definability(rel, language) is not None:
            assert pp_membership(rel, language)


def test_irredundancy_and_fictitious():
    assert is_irredundant(weak_base(CoCloneId("II2")))
    assert fictitious_coordinates(weak_base(CoCloneId("II2"))) == ()
    assert not is_irredundant(EQ)  # the two columns of {00, 11} coincide
    full2 = Relation("full", 2, 0b1111)
    assert fictitious_coordinates(full2) == (1, 2)
    dup = Relation.from_rows("dup", 2, ["00", "11"])
    assert not is_irredundant(dup)
