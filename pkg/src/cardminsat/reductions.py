"""Local-replacement reductions preserving minimum-weight query answers.

Five chain steps take positive-2-clause instances down to ternary-parity
instances, and one gadget per hard co-clone rewrites those into weak-base
instances.  Boost blocks ("give a variable weight N") always use an N that
exceeds every competing model weight, so minimum-weight models never pay
them.  Fresh variables use a reserved prefix of underscores chosen so they
cannot collide with source variables, which keeps chained outputs
reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .coclones import CoCloneId, weak_base
from .errors import PreconditionError
from .formulas import Assignment, CmsStarInstance, Constraint, Formula, require_query
from .gauss import gauss_solve
from .relations import Relation, build_named_relation

_OR2 = build_named_relation("OR", 2)
_NAE3 = build_named_relation("NAE3")
_XOR2 = build_named_relation("XOR", 2)
_XOR3 = build_named_relation("XOR", 3)
_XOR4 = build_named_relation("XOR", 4)

OR2_WEAKBASE_TARGETS = ("II2", "II1", "IN2", "IV2", "IV1", "IS0", "IS01", "IS02", "IS00")
XOR3_WEAKBASE_TARGETS = ("IL2", "IL3", "IL1")
CHAIN_STEPS = ("or2_to_nae3", "nae3_to_xor3_star", "xor3_star_to_xor4",
               "xor4_to_xor3_xor2", "xor3xor2_to_xor3")


@dataclass(frozen=True)
class ReductionStats:
    fresh_var_count: int
    boost_n: int | None
    declared_weight_offset: int | None


@dataclass(frozen=True)
class ReductionOutput:
    formula: Formula
    query: str
    bound: int | None
    stats: ReductionStats
    source: Formula
    lifter: Callable[[dict[str, int]], dict[str, int]] | None


def lift_model(red: ReductionOutput, model: Assignment) -> Assignment:
    """Extend a source model to a model of the target.

    The extension is unique where the gadget determines the fresh variables;
    where it does not (complementary boost pairs), the lexicographically
    least minimum-weight extension is returned.
    """
    if red.lifter is None:
        raise PreconditionError("this output is the fixed placeholder for an unsatisfiable source")
    if model.vars != red.source.universe:
        raise PreconditionError("assignment is not over the source universe")
    values = model.as_dict()
    if not red.source.evaluate(values):
        raise PreconditionError("assignment is not a model of the source formula")
    values.update(red.lifter(values))
    return Assignment.from_mapping(red.formula.universe, values)


def restrict_model(red: ReductionOutput, model: Assignment) -> Assignment:
    """Drop the fresh variables from a model of the target."""
    if red.lifter is None:
        raise PreconditionError("this output is the fixed placeholder for an unsatisfiable source")
    if model.vars != red.formula.universe:
        raise PreconditionError("assignment is not over the target universe")
    if not model.satisfies(red.formula):
        raise PreconditionError("assignment is not a model of the target formula")
    return model.restrict(red.source.universe)


def _fresh_prefix(universe: tuple[str, ...]) -> str:
    prefix = "_"
    while any(v.startswith(prefix) for v in universe):
        prefix += "_"
    return prefix


def _require_fragment(formula: Formula, allowed: tuple[Relation, ...], what: str) -> None:
    verdicts: dict[str, bool] = {}
    for rel, _ in formula.constraints:
        ok = verdicts.get(rel.name)
        if ok is None:
            ok = verdicts[rel.name] = any(rel.same_tuples(a) for a in allowed)
        if not ok:
            raise PreconditionError(f"constraint over {rel.name} is outside the {what} fragment")


# ---------------------------------------------------------------------------
# Chain steps
# ---------------------------------------------------------------------------


def reduce_or2_to_nae3(formula: Formula, query: str) -> ReductionOutput:
    """Positive 2-clauses to not-all-equal constraints with a weighted zero."""
    require_query(formula, query)
    _require_fragment(formula, (_OR2,), "positive-2-clause")
    if not formula.constraints:
        raise PreconditionError("the clause-to-NAE rewriting needs a non-empty formula")
    n = formula.num_vars
    big_n = n + 1
    pre = _fresh_prefix(formula.universe)
    f, t = pre + "f", pre + "t"
    boosts = tuple(f"{pre}f{j}" for j in range(1, big_n + 1))
    cons = [Constraint(_NAE3, (a, b, f)) for _, (a, b) in formula.constraints]
    cons.append(Constraint(_NAE3, (f, f, t)))
    cons.extend(Constraint(_NAE3, (fj, fj, t)) for fj in boosts)
    target = Formula.of(cons, formula.universe + (f, t) + boosts, validate=False)

    def lifter(_values: dict[str, int]) -> dict[str, int]:
        ext = {f: 0, t: 1}
        ext.update({fj: 0 for fj in boosts})
        return ext

    stats = ReductionStats(fresh_var_count=big_n + 2, boost_n=big_n, declared_weight_offset=1)
    return ReductionOutput(target, query, None, stats, formula, lifter)


def reduce_nae3_to_xor3_star(formula: Formula, query: str) -> ReductionOutput:
    """Not-all-equal constraints to ternary parity with a cardinality bound.

    Per constraint, one parity variable per pair of arguments plus N-1 boost
    copies each; exactly one pair agrees when the constraint holds, all three
    when it is violated, so violated constraints cost 2N extra.  With
    N = n+2 the bound (m+1)N - 1 separates the two cases even counting the
    frozen truth variable.
    """
    require_query(formula, query)
    _require_fragment(formula, (_NAE3,), "not-all-equal")
    m = formula.num_constraints
    if m < 1:
        raise PreconditionError("the parity rewriting needs a non-empty formula")
    n = formula.num_vars
    big_n = n + 2
    bound = (m + 1) * big_n - 1
    pre = _fresh_prefix(formula.universe)
    t = pre + "t"
    cons = [Constraint(_XOR3, (t, t, t))]
    fresh: list[str] = [t]
    groups: list[tuple[str, str, str, tuple[str, ...]]] = []
    for i, (_, (x, y, z)) in enumerate(formula.constraints, start=1):
        for role, (u, v) in (("a", (x, y)), ("b", (x, z)), ("g", (y, z))):
            head = f"{pre}{role}{i}"
            copies = tuple(f"{pre}{role}{i}c{j}" for j in range(2, big_n + 1))
            cons.append(Constraint(_XOR3, (u, v, head)))
            cons.extend(Constraint(_XOR3, (head, c, t)) for c in copies)
            fresh.append(head)
            fresh.extend(copies)
            groups.append((head, u, v, copies))
    target = Formula.of(cons, formula.universe + tuple(fresh), validate=False)

    def lifter(values: dict[str, int]) -> dict[str, int]:
        ext = {t: 1}
        for head, u, v, copies in groups:
            bit = 1 ^ values[u] ^ values[v]
            ext[head] = bit
            ext.update({c: bit for c in copies})
        return ext

    stats = ReductionStats(fresh_var_count=len(fresh), boost_n=big_n,
                           declared_weight_offset=m * big_n + 1)
    return ReductionOutput(target, query, bound, stats, formula, lifter)


def reduce_xor3_star_to_xor4(instance: CmsStarInstance) -> ReductionOutput:
    """Bounded ternary parity to plain 4-ary parity.

    The k fresh variables are tied together by every constraint; setting all
    of them gives the sentinel model of weight exactly k, which absorbs the
    cardinality bound into the plain problem.
    """
    formula, query, k = instance.formula, instance.query, instance.bound
    _require_fragment(formula, (_XOR3,), "ternary-parity")
    if formula.num_constraints < 1:
        raise PreconditionError("the bound-absorbing rewriting needs a non-empty formula")
    if k < 1:
        raise PreconditionError("bound must be at least 1 so the sentinel model exists")
    pre = _fresh_prefix(formula.universe)
    alphas = tuple(f"{pre}a{j}" for j in range(1, k + 1))
    cons = [Constraint(_XOR4, (x, y, z, aj))
            for _, (x, y, z) in formula.constraints for aj in alphas]
    target = Formula.of(cons, formula.universe + alphas, validate=False)

    def lifter(_values: dict[str, int]) -> dict[str, int]:
        return {aj: 0 for aj in alphas}

    stats = ReductionStats(fresh_var_count=k, boost_n=None, declared_weight_offset=0)
    return ReductionOutput(target, query, None, stats, formula, lifter)


def reduce_xor4_to_xor3_xor2(formula: Formula, query: str) -> ReductionOutput:
    """Split 4-ary parity into two ternary halves tied by a 2-ary parity;
    the two halves take complementary values, contributing weight 1 each."""
    require_query(formula, query)
    _require_fragment(formula, (_XOR4,), "4-ary-parity")
    pre = _fresh_prefix(formula.universe)
    cons: list[Constraint] = []
    fresh: list[str] = []
    halves: list[tuple[str, str, tuple[str, ...]]] = []
    for i, (_, (x1, x2, x3, x4)) in enumerate(formula.constraints, start=1):
        y, z = f"{pre}y{i}", f"{pre}z{i}"
        cons.append(Constraint(_XOR3, (x1, x2, y)))
        cons.append(Constraint(_XOR3, (x3, x4, z)))
        cons.append(Constraint(_XOR2, (y, z)))
        fresh.extend((y, z))
        halves.append((y, z, (x1, x2, x3, x4)))
    target = Formula.of(cons, formula.universe + tuple(fresh), validate=False)

    def lifter(values: dict[str, int]) -> dict[str, int]:
        ext = {}
        for y, z, (x1, x2, x3, x4) in halves:
            ext[y] = 1 ^ values[x1] ^ values[x2]
            ext[z] = 1 ^ values[x3] ^ values[x4]
        return ext

    p = formula.num_constraints
    stats = ReductionStats(fresh_var_count=2 * p, boost_n=None, declared_weight_offset=p)
    return ReductionOutput(target, query, None, stats, formula, lifter)


def reduce_xor3xor2_to_xor3(formula: Formula, query: str) -> ReductionOutput:
    """Eliminate 2-ary parity constraints via one shared weighted variable.

    Unsatisfiable sources map to a fixed negative instance whose unique
    minimum model leaves the query false.
    """
    require_query(formula, query)
    _require_fragment(formula, (_XOR3, _XOR2), "parity")
    sat, _ = gauss_solve([(vs, 1) for _, vs in formula.constraints])
    pre = _fresh_prefix(formula.universe)
    if not sat:
        y = pre + "y"
        target = Formula.of([Constraint(_XOR3, (y, query, query))], (query, y))
        stats = ReductionStats(fresh_var_count=1, boost_n=None, declared_weight_offset=None)
        return ReductionOutput(target, query, None, stats, formula, None)
    n = formula.num_vars
    big_n = n + 1
    w, t = pre + "w", pre + "t"
    boosts = tuple(f"{pre}w{j}" for j in range(1, big_n + 1))
    cons = []
    for rel, vs in formula.constraints:
        if rel.same_tuples(_XOR2):
            cons.append(Constraint(_XOR3, (vs[0], vs[1], w)))
        else:
            cons.append(Constraint(_XOR3, vs))
    cons.append(Constraint(_XOR3, (t, t, t)))
    cons.extend(Constraint(_XOR3, (t, w, wj)) for wj in boosts)
    target = Formula.of(cons, formula.universe + (w, t) + boosts, validate=False)

    def lifter(_values: dict[str, int]) -> dict[str, int]:
        ext = {w: 0, t: 1}
        ext.update({wj: 0 for wj in boosts})
        return ext

    stats = ReductionStats(fresh_var_count=big_n + 2, boost_n=big_n, declared_weight_offset=1)
    return ReductionOutput(target, query, None, stats, formula, lifter)


# ---------------------------------------------------------------------------
# Weak-base gadgets
# ---------------------------------------------------------------------------


def _fill_map(rel: Relation, fixed: dict[int, int], key_coords: tuple[int, ...],
              value_coords: tuple[int, ...]) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Rows of ``rel`` matching the fixed coordinates, keyed by a projection."""
    out: dict[tuple[int, ...], tuple[int, ...]] = {}
    for t in rel.tuples():
        if all(t[i] == b for i, b in fixed.items()):
            key = tuple(t[i] for i in key_coords)
            if key in out:
                raise AssertionError(f"{rel.name}: fresh coordinates not determined for {key}")
            out[key] = tuple(t[i] for i in value_coords)
    return out


def reduce_to_weakbase(c: CoCloneId, formula: Formula, query: str) -> ReductionOutput:
    """Rewrite a source instance into a weak-base instance of a hard co-clone.

    Sources are positive-2-clause formulas, except for the affine targets
    (IL1, IL2, IL3) which start from ternary parity.
    """
    require_query(formula, query)
    if c.tag in OR2_WEAKBASE_TARGETS:
        _require_fragment(formula, (_OR2,), "positive-2-clause")
    elif c.tag in XOR3_WEAKBASE_TARGETS:
        _require_fragment(formula, (_XOR3,), "ternary-parity")
    else:
        raise PreconditionError(f"no weak-base gadget for {c}; the co-clone is not in the hard list")
    rel = weak_base(c)
    builder = _WEAKBASE_BUILDERS[c.tag]
    return builder(c, rel, formula, query)


def _wb_ii2(c: CoCloneId, rel: Relation, formula: Formula, query: str) -> ReductionOutput:
    pre = _fresh_prefix(formula.universe)
    f, t = pre + "f", pre + "t"
    fill = _fill_map(rel, {6: 0, 7: 1}, (4, 5), (0, 1, 2, 3))
    cons: list[Constraint] = []
    fresh: list[str] = []
    clause_fresh: list[tuple[tuple[str, str], tuple[str, ...], tuple[str, ...]]] = []
    for i, (_, (x1, x2)) in enumerate(formula.constraints, start=1):
        base = tuple(f"{pre}{r}{i}" for r in "abcd")
        primes = tuple(f"{pre}{r}p{i}" for r in "abcd")
        a, b, cc, d = base
        cons.append(Constraint(rel, (a, b, cc, d, x1, x2, f, t)))
        for u, up in zip(base, primes):
            cons.append(Constraint(rel, (u, up, f, up, u, t, f, t)))
        fresh.extend(base + primes)
        clause_fresh.append(((x1, x2), base, primes))
    fresh.extend((f, t))
    target = Formula.of(cons, formula.universe + tuple(fresh), validate=False)

    def lifter(values: dict[str, int]) -> dict[str, int]:
        ext = {f: 0, t: 1}
        for (x1, x2), base, primes in clause_fresh:
            bits = fill[(values[x1], values[x2])]
            ext.update(zip(base, bits))
            ext.update(zip(primes, (1 - b for b in bits)))
        return ext

    p = formula.num_constraints
    stats = ReductionStats(fresh_var_count=8 * p + 2, boost_n=None,
                           declared_weight_offset=4 * p + 1)
    return ReductionOutput(target, query, None, stats, formula, lifter)


def _wb_ii1(c: CoCloneId, rel: Relation, formula: Formula, query: str) -> ReductionOutput:
    pre = _fresh_prefix(formula.universe)
    n, p = formula.num_vars, formula.num_constraints
    big_n = n + p + 1
    f, t = pre + "f", pre + "t"
    cons = []
    fresh: list[str] = []
    ys: list[tuple[str, str, tuple[str, str]]] = []
    for i, (_, (x1, x2)) in enumerate(formula.constraints, start=1):
        y, z = f"{pre}y{i}", f"{pre}z{i}"
        cons.append(Constraint(rel, (x1, x2, y, t)))
        cons.append(Constraint(rel, (y, z, f, t)))
        fresh.extend((y, z))
        ys.append((y, z, (x1, x2)))
    fresh.append(f)
    pairs = tuple((f"{pre}u{j}", f"{pre}v{j}") for j in range(1, big_n + 1))
    for f1, f2 in pairs:
        cons.append(Constraint(rel, (f1, f2, f, t)))
        fresh.extend((f1, f2))
    fresh.append(t)
    target = Formula.of(cons, formula.universe + tuple(fresh), validate=False)

    def lifter(values: dict[str, int]) -> dict[str, int]:
        ext = {f: 0, t: 1}
        for y, z, (x1, x2) in ys:
            ext[y] = values[x1] & values[x2]
            ext[z] = 1 - ext[y]
        for f1, f2 in pairs:
            ext[f1], ext[f2] = 0, 1
        return ext

    stats = ReductionStats(fresh_var_count=2 * p + 2 * big_n + 2, boost_n=big_n,
                           declared_weight_offset=p + big_n + 1)
    return ReductionOutput(target, query, None, stats, formula, lifter)


def _wb_in2(c: CoCloneId, rel: Relation, formula: Formula, query: str) -> ReductionOutput:
    pre = _fresh_prefix(formula.universe)
    n, p = formula.num_vars, formula.num_constraints
    big_n = n + p + 1
    f, t = pre + "f", pre + "t"
    fill = _fill_map(rel, {0: 0, 7: 1}, (5, 6), (1, 2, 3, 4))
    cons: list[Constraint] = []
    fresh: list[str] = []
    clause_fresh = []
    for i, (_, (x1, x2)) in enumerate(formula.constraints, start=1):
        base = tuple(f"{pre}{r}{i}" for r in "abcd")
        primes = tuple(f"{pre}{r}p{i}" for r in "abcd")
        a, b, cc, d = base
        cons.append(Constraint(rel, (f, a, b, cc, d, x1, x2, t)))
        for u, up in zip(base, primes):
            cons.append(Constraint(rel, (u, u, u, u, up, up, up, up)))
        fresh.extend(base + primes)
        clause_fresh.append(((x1, x2), base, primes))
    cons.append(Constraint(rel, (f, f, f, f, t, t, t, t)))
    boosts = tuple(f"{pre}f{j}" for j in range(1, big_n + 1))
    cons.extend(Constraint(rel, (fj, fj, fj, fj, t, t, t, t)) for fj in boosts)
    fresh.extend((f, t))
    fresh.extend(boosts)
    target = Formula.of(cons, formula.universe + tuple(fresh), validate=False)

    def lifter(values: dict[str, int]) -> dict[str, int]:
        ext = {f: 0, t: 1}
        ext.update({fj: 0 for fj in boosts})
        for (x1, x2), base, primes in clause_fresh:
            bits = fill[(values[x1], values[x2])]
            ext.update(zip(base, bits))
            ext.update(zip(primes, (1 - b for b in bits)))
        return ext

    stats = ReductionStats(fresh_var_count=8 * p + big_n + 2, boost_n=big_n,
                           declared_weight_offset=4 * p + 1)
    return ReductionOutput(target, query, None, stats, formula, lifter)


def _wb_il2(c: CoCloneId, rel: Relation, formula: Formula, query: str) -> ReductionOutput:
    pre = _fresh_prefix(formula.universe)
    f, t = pre + "f", pre + "t"
    cons: list[Constraint] = []
    fresh: list[str] = []
    clause_fresh = []
    for i, (_, (x1, x2, x3)) in enumerate(formula.constraints, start=1):
        base = tuple(f"{pre}{r}{i}" for r in "uvw")
        primes = tuple(f"{pre}{r}p{i}" for r in "uvw")
        u, v, w = base
        up, vp, wp = primes
        cons.append(Constraint(rel, (u, v, w, x1, x2, x3, f, t)))
        cons.append(Constraint(rel, (u, v, w, up, vp, wp, f, t)))
        fresh.extend(base + primes)
        clause_fresh.append(((x1, x2, x3), base, primes))
    fresh.extend((f, t))
    target = Formula.of(cons, formula.universe + tuple(fresh), validate=False)

    def lifter(values: dict[str, int]) -> dict[str, int]:
        ext = {f: 0, t: 1}
        for xs, base, primes in clause_fresh:
            for x, u, up in zip(xs, base, primes):
                ext[u] = 1 - values[x]
                ext[up] = values[x]
        return ext

    p = formula.num_constraints
    stats = ReductionStats(fresh_var_count=6 * p + 2, boost_n=None,
                           declared_weight_offset=3 * p + 1)
    return ReductionOutput(target, query, None, stats, formula, lifter)


def _wb_il3(c: CoCloneId, rel: Relation, formula: Formula, query: str) -> ReductionOutput:
    pre = _fresh_prefix(formula.universe)
    n, p = formula.num_vars, formula.num_constraints
    big_n = n + p + 1
    f, t = pre + "f", pre + "t"
    cons: list[Constraint] = []
    fresh: list[str] = []
    clause_fresh = []
    for i, (_, (x1, x2, x3)) in enumerate(formula.constraints, start=1):
        base = tuple(f"{pre}{r}{i}" for r in "uvw")
        primes = tuple(f"{pre}{r}p{i}" for r in "uvw")
        u, v, w = base
        up, vp, wp = primes
        cons.append(Constraint(rel, (u, v, w, f, x1, x2, x3, t)))
        cons.append(Constraint(rel, (u, v, w, f, up, vp, wp, t)))
        fresh.extend(base + primes)
        clause_fresh.append(((x1, x2, x3), base, primes))
    cons.append(Constraint(rel, (f, f, f, f, t, t, t, t)))
    boosts = tuple(f"{pre}f{j}" for j in range(1, big_n + 1))
    cons.extend(Constraint(rel, (fj, fj, fj, fj, t, t, t, t)) for fj in boosts)
    fresh.extend((f, t))
    fresh.extend(boosts)
    target = Formula.of(cons, formula.universe + tuple(fresh), validate=False)

    def lifter(values: dict[str, int]) -> dict[str, int]:
        ext = {f: 0, t: 1}
        ext.update({fj: 0 for fj in boosts})
        for xs, base, primes in clause_fresh:
            for x, u, up in zip(xs, base, primes):
                ext[u] = 1 - values[x]
                ext[up] = values[x]
        return ext

    stats = ReductionStats(fresh_var_count=6 * p + big_n + 2, boost_n=big_n,
                           declared_weight_offset=3 * p + 1)
    return ReductionOutput(target, query, None, stats, formula, lifter)


def _wb_il1(c: CoCloneId, rel: Relation, formula: Formula, query: str) -> ReductionOutput:
    pre = _fresh_prefix(formula.universe)
    t = pre + "t"
    cons = [Constraint(rel, vs + (t,)) for _, vs in formula.constraints]
    target = Formula.of(cons, formula.universe + (t,), validate=False)
    stats = ReductionStats(fresh_var_count=1, boost_n=None, declared_weight_offset=1)
    return ReductionOutput(target, query, None, stats, formula, lambda _v: {t: 1})


def _wb_iv(c: CoCloneId, rel: Relation, formula: Formula, query: str) -> ReductionOutput:
    # IV2 and IV1 share the layout R(t, x1, x2, f, t); only the base differs.
    pre = _fresh_prefix(formula.universe)
    f, t = pre + "f", pre + "t"
    cons = [Constraint(rel, (t, x1, x2, f, t)) for _, (x1, x2) in formula.constraints]
    target = Formula.of(cons, formula.universe + (f, t), validate=False)
    stats = ReductionStats(fresh_var_count=2, boost_n=None, declared_weight_offset=1)
    return ReductionOutput(target, query, None, stats, formula, lambda _v: {f: 0, t: 1})


def _wb_is(c: CoCloneId, rel: Relation, formula: Formula, query: str) -> ReductionOutput:
    assert c.width is not None
    k = c.width
    pre = _fresh_prefix(formula.universe)
    f, t = pre + "f", pre + "t"
    tails = {"IS0": (t,), "IS01": (f, t), "IS02": (f, t), "IS00": (f, f, t)}[c.tag]
    cons = [Constraint(rel, (x1,) + (x2,) * (k - 1) + tails)
            for _, (x1, x2) in formula.constraints]
    uses_f = c.tag != "IS0"
    universe = formula.universe + ((f, t) if uses_f else (t,))
    target = Formula.of(cons, universe, validate=False)

    def lifter(_values: dict[str, int]) -> dict[str, int]:
        return {f: 0, t: 1} if uses_f else {t: 1}

    stats = ReductionStats(fresh_var_count=2 if uses_f else 1, boost_n=None,
                           declared_weight_offset=1)
    return ReductionOutput(target, query, None, stats, formula, lifter)


_WEAKBASE_BUILDERS = {
    "II2": _wb_ii2,
    "II1": _wb_ii1,
    "IN2": _wb_in2,
    "IL2": _wb_il2,
    "IL3": _wb_il3,
    "IL1": _wb_il1,
    "IV2": _wb_iv,
    "IV1": _wb_iv,
    "IS0": _wb_is,
    "IS01": _wb_is,
    "IS02": _wb_is,
    "IS00": _wb_is,
}


# ---------------------------------------------------------------------------
# Chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainPipeline:
    """An ordered reduction pipeline from positive-2-clause instances to
    weak-base instances of a hard co-clone."""

    target: CoCloneId
    steps: tuple[str, ...]

    def run(self, formula: Formula, query: str) -> list[ReductionOutput]:
        """Apply every step; returns one output per stage, in order."""
        outputs: list[ReductionOutput] = []
        current, q, bound = formula, query, None
        for step in self.steps:
            if step == "or2_to_nae3":
                out = reduce_or2_to_nae3(current, q)
            elif step == "nae3_to_xor3_star":
                out = reduce_nae3_to_xor3_star(current, q)
            elif step == "xor3_star_to_xor4":
                assert bound is not None
                out = reduce_xor3_star_to_xor4(CmsStarInstance(current, q, bound))
            elif step == "xor4_to_xor3_xor2":
                out = reduce_xor4_to_xor3_xor2(current, q)
            elif step == "xor3xor2_to_xor3":
                out = reduce_xor3xor2_to_xor3(current, q)
            elif step.startswith("to_weakbase_"):
                out = reduce_to_weakbase(self.target, current, q)
            else:
                raise AssertionError(step)
            outputs.append(out)
            current, q, bound = out.formula, out.query, out.bound
        return outputs


def compose_chain(target: CoCloneId) -> ChainPipeline:
    """The reduction pipeline reaching the weak base of a hard co-clone.

    Co-clones handled by a polynomial engine (or by the bijunctive special
    case) have no chain and are rejected.
    """
    suffix = f"to_weakbase_{target.tag}" + (f"_{target.width}" if target.width else "")
    if target.tag in OR2_WEAKBASE_TARGETS:
        return ChainPipeline(target, (suffix,))
    if target.tag in XOR3_WEAKBASE_TARGETS:
        return ChainPipeline(target, CHAIN_STEPS + (suffix,))
    raise PreconditionError(f"{target} is not one of the chain-reducible hard co-clones")
