import random
from itertools import combinations

import pytest

from cardminsat import (CLOSED_WORLD, Formula, GuardError, NoSolutionError, PAP, POSITIVE_UNITS,
                        ParseError, PreconditionError, XorClause, cms_bruteforce, constraint,
                        enumerate_models, is_solution, parse_pap, reduce_cms_xor3_to_relevance,
                        relevance_bruteforce, render_pap)

from helpers import XOR3, random_clause_formula


def single_xor3():
    return Formula.of([constraint(XOR3, "x1", "x2", "x3")])


def test_reduction_shape():
    pap, h = reduce_cms_xor3_to_relevance(single_xor3(), "x1")
    assert h == "x1"
    assert pap.variables == ("x1", "x2", "x3", "_g1")
    assert pap.hypotheses == ("x1", "x2", "x3")
    assert pap.manifestations == ("_g1",)
    assert pap.theory == (XorClause(("x1", "x2", "x3", "_g1"), 0),)


def test_singleton_is_solution_under_closed_world_only():
    pap, _ = reduce_cms_xor3_to_relevance(single_xor3(), "x1")
    assert is_solution(pap, {"x1"}, CLOSED_WORLD)
    assert not is_solution(pap, {"x1"}, POSITIVE_UNITS)


def test_empty_solution_with_no_manifestations():
    pap = PAP(("x", "y"), ("x",), (), (XorClause(("x", "y"), 0),))
    assert is_solution(pap, set(), CLOSED_WORLD)
    assert is_solution(pap, set(), POSITIVE_UNITS)
    assert not relevance_bruteforce(pap, "x")  # minimum solution is empty


def test_relevance_example():
    pap, h = reduce_cms_xor3_to_relevance(single_xor3(), "x1")
    assert relevance_bruteforce(pap, h, CLOSED_WORLD)
    for other in ("x2", "x3"):
        assert relevance_bruteforce(pap, other, CLOSED_WORLD)


def test_relevance_rejects_non_hypothesis():
    pap, _ = reduce_cms_xor3_to_relevance(single_xor3(), "x1")
    with pytest.raises(PreconditionError):
        relevance_bruteforce(pap, "_g1")
    with pytest.raises(PreconditionError):
        is_solution(pap, {"_g1"})


def test_no_solution_reported_distinctly():
    pap = PAP(("x", "m"), ("x",), ("m",), ())
    with pytest.raises(NoSolutionError):
        relevance_bruteforce(pap, "x")


def test_inconsistent_theory_rejected():
    with pytest.raises(ValueError):
        PAP(("x",), (), (), (XorClause(("x",), 0), XorClause(("x",), 1)))


def test_undeclared_names_rejected():
    with pytest.raises(ValueError):
        PAP(("x",), ("y",), (), ())
    with pytest.raises(ValueError):
        PAP(("x",), (), (), (XorClause(("z",), 0),))


def test_variable_guard():
    vars = tuple(f"v{i}" for i in range(21))
    pap = PAP(vars, vars[:2], (), ())
    with pytest.raises(GuardError):
        is_solution(pap, set())


def test_solutions_coincide_with_models():
    rng = random.Random(40)
    for _ in range(25):
        f = random_clause_formula(rng, XOR3, rng.randint(3, 6), rng.randint(1, 3))
        pap, _ = reduce_cms_xor3_to_relevance(f, f.universe[0])
        models = {frozenset(v for v in f.universe if m.value(v)) for m in enumerate_models(f)}
        solutions = {frozenset(s) for size in range(len(f.universe) + 1)
                     for s in combinations(f.universe, size)
                     if is_solution(pap, s, CLOSED_WORLD)}
        assert solutions == models
        if models:
            # minimum solution cardinality = minimum model weight
            assert min(len(s) for s in solutions) == min(len(m) for m in models)


def test_relevance_equals_minimum_weight_verdict():
    rng = random.Random(41)
    for _ in range(25):
        f = random_clause_formula(rng, XOR3, rng.randint(3, 6), rng.randint(1, 3))
        q = rng.choice(f.universe)
        pap, h = reduce_cms_xor3_to_relevance(f, q)
        assert relevance_bruteforce(pap, h, CLOSED_WORLD) == cms_bruteforce(f, q).verdict


def test_pap_file_round_trip():
    pap, _ = reduce_cms_xor3_to_relevance(single_xor3(), "x1")
    text = render_pap(pap)
    again = parse_pap(text)
    assert again == pap
    assert render_pap(again) == text


def test_pap_parse_errors():
    with pytest.raises(ParseError):
        parse_pap("hyp x\nvars x\nman x\n")  # wrong order
    with pytest.raises(ParseError):
        parse_pap("vars x\nhyp x\n")  # missing man
    with pytest.raises(ParseError):
        parse_pap("vars x\nhyp x\nman\nt x = 2\n")
    with pytest.raises(ParseError):
        parse_pap("vars x\nhyp x\nman\nt x 1\n")
