#!/usr/bin/env python3
"""Regenerate the bundled instance corpus under corpus/.

One weak-base instance per labeled co-clone (IS chains at widths 2, 3, 4),
source samples for every reduction, and abduction instances.  The files are
committed; tests regenerate them in memory and fail on drift.
"""

from __future__ import annotations

import sys
from pathlib import Path

from cardminsat import (ConstraintLanguage, Formula, FormulaFile, all_labels, build_named_relation,
                        constraint, reduce_cms_xor3_to_relevance, render_formula_file,
                        render_language, render_pap, weak_base)


def label_slug(c) -> str:
    return c.tag if c.width is None else f"{c.tag}_{c.width}"


def build_corpus() -> dict[str, str]:
    """Relative path -> exact file text."""
    files: dict[str, str] = {}

    named = ConstraintLanguage.of(
        build_named_relation("OR", 2), build_named_relation("NAND", 2),
        build_named_relation("XOR", 2), build_named_relation("XOR", 3),
        build_named_relation("XOR", 4), build_named_relation("EVEN", 3),
        build_named_relation("NAE3"), build_named_relation("IMPL"),
        build_named_relation("EQ"), build_named_relation("NEQ"),
        build_named_relation("T"), build_named_relation("F"))
    files["relations/named.rel"] = render_language(named)

    for c in all_labels((2, 3, 4)):
        rel = weak_base(c)
        slug = label_slug(c)
        files[f"relations/wb_{slug}.rel"] = render_language(ConstraintLanguage.of(rel))
        vars_a = tuple(f"x{i}" for i in range(1, rel.arity + 1))
        vars_b = ("x2",) + tuple(f"y{i}" for i in range(2, rel.arity + 1))
        formula = Formula.of([constraint(rel, *vars_a), constraint(rel, *vars_b)])
        doc = FormulaFile(formula, ConstraintLanguage.of(rel), "x1",
                          (f"../relations/wb_{slug}.rel",))
        files[f"formulas/label_{slug}.cms"] = render_formula_file(doc)

    or2 = named.get("OR2")
    xor2, xor3, xor4 = named.get("XOR2"), named.get("XOR3"), named.get("XOR4")
    nae3 = named.get("NAE3")
    samples = {
        "step_or2": (Formula.of([constraint(or2, "a", "b"), constraint(or2, "b", "c")]), "a"),
        "step_nae3": (Formula.of([constraint(nae3, "a", "b", "c"),
                                  constraint(nae3, "b", "c", "d")]), "a"),
        "step_xor3": (Formula.of([constraint(xor3, "a", "b", "c"),
                                  constraint(xor3, "b", "c", "d")]), "a"),
        "step_xor4": (Formula.of([constraint(xor4, "a", "b", "c", "d")]), "a"),
        "step_xor3_xor2": (Formula.of([constraint(xor3, "a", "b", "c"),
                                       constraint(xor2, "c", "d")]), "a"),
        "step_xor2_unsat": (Formula.of([constraint(xor2, "a", "b"), constraint(xor2, "b", "c"),
                                        constraint(xor2, "a", "c")]), "a"),
    }
    for slug, (formula, query) in samples.items():
        doc = FormulaFile(formula, named, query, ("../relations/named.rel",))
        files[f"formulas/{slug}.cms"] = render_formula_file(doc)

    single = Formula.of([constraint(xor3, "x1", "x2", "x3")])
    pap, _ = reduce_cms_xor3_to_relevance(single, "x1")
    files["abduction/xor3_single.pap"] = render_pap(pap)
    pair = Formula.of([constraint(xor3, "x1", "x2", "x3"), constraint(xor3, "x2", "x3", "x4")])
    pap2, _ = reduce_cms_xor3_to_relevance(pair, "x1")
    files["abduction/xor3_pair.pap"] = render_pap(pap2)
    return files


def main() -> int:
    root = Path(__file__).resolve().parent.parent / "corpus"
    files = build_corpus()
    for rel_path, text in sorted(files.items()):
        target = root / rel_path
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text)
        print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
