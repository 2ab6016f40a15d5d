import random

import pytest

from cardminsat import (ConstraintLanguage, Formula, FormulaFile, ParseError, Relation, constraint,
                        parse_formula_file, parse_language, render_formula_file, render_language,
                        render_relation)
from cardminsat.fileio import load_formula_file

from helpers import NAE3, OR2, T


def test_relation_round_trip_is_byte_identical():
    lang = ConstraintLanguage.of(OR2, NAE3, T)
    text = render_language(lang)
    again = parse_language(text)
    assert render_language(again) == text
    assert all(a.same_tuples(b) and a.name == b.name for a, b in zip(lang, again))


def test_relation_rows_serialize_in_index_order():
    assert render_relation(OR2) == "relation OR2 2\n01\n10\n11\n\n"


def test_random_relation_round_trips():
    rng = random.Random(3)
    for i in range(40):
        arity = rng.randint(1, 6)
        rows = rng.getrandbits(1 << arity)
        rel = Relation(f"r{i}", arity, rows)
        text = render_relation(rel)
        parsed = parse_language(text).get(f"r{i}")
        assert parsed.same_tuples(rel)
        assert render_relation(parsed) == text


def test_relation_format_rejections():
    with pytest.raises(ParseError):
        parse_language("relation  r 2\n01\n\n")  # double space
    with pytest.raises(ParseError):
        parse_language("relation r 2\n012\n\n")  # bad row
    with pytest.raises(ParseError):
        parse_language("relation r 2\n01")  # missing blank terminator
    with pytest.raises(ParseError):
        parse_language("")


def test_formula_round_trip(tmp_path):
    lang = ConstraintLanguage.of(OR2, T)
    (tmp_path / "lang.rel").write_text(render_language(lang))
    f = Formula.of([constraint(OR2, "x", "y"), constraint(T, "z")], universe=("x", "y", "z"))
    doc = FormulaFile(f, lang, "x", ("lang.rel",))
    text = render_formula_file(doc)
    parsed = parse_formula_file(text, base_dir=tmp_path)
    assert render_formula_file(parsed) == text
    assert parsed.query == "x"
    assert parsed.formula.universe == ("x", "y", "z")
    assert [c.relation.name for c in parsed.formula.constraints] == ["OR2", "T"]


def test_formula_parse_with_supplied_language():
    text = "var x y\nc OR2 x y\nquery y\n"
    doc = parse_formula_file(text, language=ConstraintLanguage.of(OR2))
    assert doc.query == "y"
    assert doc.formula.num_constraints == 1


def test_formula_format_rejections(tmp_path):
    lang = ConstraintLanguage.of(OR2)
    ok = dict(language=lang)
    with pytest.raises(ParseError):
        parse_formula_file("var x y\nc OR2 x y\nc OR2  x y\n", **ok)  # double space
    with pytest.raises(ParseError):
        parse_formula_file("var x y\nquery x\nc OR2 x y\n", **ok)  # constraint after query
    with pytest.raises(ParseError):
        parse_formula_file("var x y\nc MISSING x y\n", **ok)
    with pytest.raises(ParseError):
        parse_formula_file("var x y\nc OR2 x\n", **ok)  # arity mismatch
    with pytest.raises(ParseError):
        parse_formula_file("var x y\nwhat x\n", **ok)
    with pytest.raises(ParseError):
        parse_formula_file("var x y\nc OR2 x y\nquery z\n", **ok)  # foreign query
    with pytest.raises(ParseError):
        parse_formula_file("c OR2 x y\n")  # no language at all
    with pytest.raises(ParseError):
        parse_formula_file("lang nothere.rel\nc OR2 x y\n", base_dir=tmp_path)


def test_lang_imports_merge(tmp_path):
    (tmp_path / "a.rel").write_text(render_relation(OR2))
    (tmp_path / "b.rel").write_text(render_relation(T))
    text = "lang a.rel\nlang b.rel\nvar x\nc T x\nquery x\n"
    (tmp_path / "f.cms").write_text(text)
    doc = load_formula_file(tmp_path / "f.cms")
    assert {r.name for r in doc.language} == {"OR2", "T"}
    assert render_formula_file(doc) == text
