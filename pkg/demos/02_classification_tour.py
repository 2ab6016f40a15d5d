#!/usr/bin/env python3
"""Where does a constraint language land on the tractability map?

Every finite language generates a labeled co-clone on Post's lattice; the
minimum-weight query problem is trivial (0-valid), polynomial (Horn or
width-2-affine), or complete for log-many NP-oracle calls, purely as a
function of that position.
"""

from cardminsat import (ConstraintLanguage, all_labels, build_named_relation, bucket_for_coclone,
                        classify_cms, identify_coclone, weak_base)

examples = {
    "implications":        [build_named_relation("IMPL")],
    "disequalities":       [build_named_relation("NEQ")],
    "positive 2-clauses":  [build_named_relation("OR", 2)],
    "ternary parity":      [build_named_relation("XOR", 3)],
    "not-all-equal":       [build_named_relation("NAE3")],
    "equalities only":     [build_named_relation("EQ")],
    "both clause signs":   [build_named_relation("OR", 2), build_named_relation("NAND", 2)],
}

print(f"{'language':<22} {'co-clone':<10} bucket")
for name, rels in examples.items():
    lang = ConstraintLanguage.of(*rels)
    verdict = classify_cms(lang)
    print(f"{name:<22} {str(verdict.coclone):<10} {verdict.bucket.value}")

# The registry carries the minimal weak base of every labeled co-clone;
# classifying a weak base recovers its own label and bucket.
print("\nweak-base spine (one line per co-clone):")
for c in all_labels(widths=(2,)):
    rel = weak_base(c)
    got = identify_coclone(ConstraintLanguage.of(rel))
    assert got == c
    print(f"  {str(c):<8} arity {rel.arity}  tuples {rel.num_tuples}  "
          f"bucket {bucket_for_coclone(c).value}")
