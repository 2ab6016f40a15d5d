#!/usr/bin/env python3
"""Relations as bitset truth tables, formulas, and minimum-weight queries.

A k-ary Boolean relation is stored as one int over 2**k tuple slots, with
the first coordinate as the most significant bit, so printed matrix rows
transcribe directly: int("100011", 2) is the slot of tuple (1,0,0,0,1,1).
"""

from cardminsat import (Formula, build_named_relation, cms_bruteforce, constraint,
                        enumerate_models, frozen_vars)

or2 = build_named_relation("OR", 2)
xor3 = build_named_relation("XOR", 3)
nae3 = build_named_relation("NAE3")
r13 = build_named_relation("R13NEQ")

print("binary disjunction, matrix rows:", or2.matrix_rows())
print("the 1-in-3-with-complements relation:", r13.matrix_rows())

# A formula is a conjunction of constraints; repetition of variables is fine.
f = Formula.of([constraint(nae3, "x", "x", "y")])
print("\nnot-all-equal applied to (x, x, y) has models:",
      [str(m) for m in enumerate_models(f)])

# The central question: is an atom true in some minimum-weight model?
g = Formula.of([constraint(xor3, "x", "y", "z")])
answer = cms_bruteforce(g, "x")
print("\nternary parity, query x:")
print("  verdict:", answer.verdict)
print("  minimum model weight:", answer.min_weight)
print("  witness model:", answer.witness)

# Frozen variables take one value in every model.
h = Formula.of([constraint(or2, "a", "b"), constraint(or2, "b", "c")])
print("\nfrozen variables of a positive-2-clause formula:", frozen_vars(h))
