import pytest

from cardminsat import ConstraintLanguage, GuardError, Relation, build_named_relation
from cardminsat.relations import index_to_tuple, tuple_to_index


def test_tuple_indexing_first_coordinate_most_significant():
    assert tuple_to_index((1, 0, 0, 0, 1, 1, 0, 1)) == int("10001101", 2)
    assert index_to_tuple(int("10001101", 2), 8) == (1, 0, 0, 0, 1, 1, 0, 1)


def test_r13neq_exact_rows():
    rel = build_named_relation("R13NEQ")
    assert rel.arity == 6
    assert sorted(rel.matrix_rows()) == sorted(["100011", "010101", "001110"])
    assert rel.num_tuples == 3


def test_or2():
    rel = build_named_relation("OR", 2)
    assert set(rel.matrix_rows()) == {"01", "10", "11"}


def test_even_kneq3_matches_printed_columns():
    rel = build_named_relation("EVEN_KNEQ", 3)
    assert set(rel.matrix_rows()) == {"000111", "011100", "101010", "110001"}


def test_fixed_families():
    assert build_named_relation("T").tuples() == [(1,)]
    assert build_named_relation("F").tuples() == [(0,)]
    assert set(build_named_relation("EQ").matrix_rows()) == {"00", "11"}
    assert set(build_named_relation("NEQ").matrix_rows()) == {"01", "10"}
    assert set(build_named_relation("IMPL").matrix_rows()) == {"00", "01", "11"}
    assert set(build_named_relation("NAE3").matrix_rows()) == {
        "001", "010", "011", "100", "101", "110"}


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_parameterized_families_against_per_tuple_predicates(k):
    or_k = build_named_relation("OR", k)
    nand_k = build_named_relation("NAND", k)
    xor_k = build_named_relation("XOR", k)
    even_k = build_named_relation("EVEN", k)
    for idx in range(1 << k):
        t = index_to_tuple(idx, k)
        assert (t in or_k) == any(t)
        assert (t in nand_k) == (not all(t))
        assert (t in xor_k) == (sum(t) % 2 == 1)
        assert (t in even_k) == (sum(t) % 2 == 0)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_even_kneq_pairing(k):
    rel = build_named_relation("EVEN_KNEQ", k)
    assert rel.arity == 2 * k
    assert rel.num_tuples == 1 << (k - 1)
    for t in rel.tuples():
        assert sum(t[:k]) % 2 == 0
        assert all(t[i] != t[k + i] for i in range(k))


def test_family_arity_guards():
    with pytest.raises(GuardError):
        build_named_relation("OR", 0)
    with pytest.raises(GuardError):
        build_named_relation("XOR", 9)
    with pytest.raises(ValueError):
        build_named_relation("OR")
    with pytest.raises(ValueError):
        build_named_relation("NOPE", 2)


def test_relation_validation():
    with pytest.raises(GuardError):
        Relation("big", 17, 0)
    with pytest.raises(ValueError):
        Relation("bad", 1, 0b10000)  # tuple index 4 outside arity 1
    with pytest.raises(ValueError):
        Relation.from_rows("r", 2, ["012"])


def test_columns_and_semantic_equality():
    rel = Relation.from_rows("r", 3, ["010", "110"])
    assert rel.column(1) == (0, 1)
    assert rel.column(2) == (1, 1)
    assert rel.column(3) == (0, 0)
    assert rel.same_tuples(rel.renamed("other"))
    assert not rel.same_tuples(build_named_relation("NAE3"))


def test_language_validation():
    t = build_named_relation("T")
    with pytest.raises(ValueError):
        ConstraintLanguage(())
    with pytest.raises(ValueError):
        ConstraintLanguage((t, t.renamed("T")))
    lang = ConstraintLanguage.of(t, build_named_relation("F"))
    assert lang.get("F").tuples() == [(0,)]
    assert "T" in lang and "EQ" not in lang
    assert lang.max_arity == 1
