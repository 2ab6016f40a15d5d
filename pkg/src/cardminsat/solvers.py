"""The solving engines: trivial route, Horn fixpoint, parity components,
the generic oracle-budgeted engine, and the dispatcher."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from . import search
from .bruteforce import cms_bruteforce
from .classify import AND2, closed_under, saturated_models
from .coclones import Bucket, classify_cms
from .errors import PreconditionError
from .formulas import (Assignment, CmsAnswer, Formula, IN_MIN_MODEL, QUERY_FALSE,
                       UNSATISFIABLE, require_query)
from .relations import ConstraintLanguage, Relation


class Engine(enum.Enum):
    TRIVIAL = "Trivial"
    HORN_FIXPOINT = "HornFixpoint"
    WIDTH2_AFFINE = "Width2Affine"
    GENERIC_ORACLE = "GenericOracle"
    BRUTE_FORCE = "BruteForce"


@dataclass(frozen=True)
class SolveReport:
    answer: CmsAnswer
    engine: Engine
    oracle_calls: int = 0


def oracle_budget(n: int) -> int:
    """ceil(log2(n+2)) + 1: binary search over weights 0..n plus "unsat",
    plus one final query call."""
    return (n + 1).bit_length() + 1


# ---------------------------------------------------------------------------
# Horn engine
# ---------------------------------------------------------------------------


def _own_candidates(rel: Relation, positions: list[int]) -> list[tuple[int, ...]]:
    """Relation tuples consistent with repeated variables in the constraint."""
    out = []
    for t in rel.tuples():
        seen: dict[int, int] = {}
        if all(seen.setdefault(p, t[j]) == t[j] for j, p in enumerate(positions)):
            out.append(t)
    return out


def solve_horn(formula: Formula, query: str) -> SolveReport:
    """Least-model computation by generalized unit propagation.

    Maintains the set of variables forced to 1; each pass keeps only the
    relation tuples pointwise-compatible with the forced set and forces every
    position on which all surviving tuples agree on 1.  The fixpoint is the
    unique minimum-weight model.
    """
    require_query(formula, query)
    for rel in formula.relations():
        if not closed_under(rel, AND2):
            raise PreconditionError(f"relation {rel.name} is not Horn; refusing to run the Horn engine")
    index = {v: i for i, v in enumerate(formula.universe)}
    compiled = [( [index[v] for v in vs], _own_candidates(rel, [index[v] for v in vs]))
                for rel, vs in formula.constraints]
    forced: set[int] = set()
    changed = True
    while changed:
        changed = False
        for positions, candidates in compiled:
            compat = [t for t in candidates
                      if all(t[j] == 1 for j, p in enumerate(positions) if p in forced)]
            if not compat:
                return SolveReport(CmsAnswer(False, None, None, UNSATISFIABLE), Engine.HORN_FIXPOINT)
            for j, p in enumerate(positions):
                if p not in forced and all(t[j] == 1 for t in compat):
                    forced.add(p)
                    changed = True
    values = tuple(1 if i in forced else 0 for i in range(len(formula.universe)))
    min_weight = len(forced)
    if index[query] in forced:
        witness = Assignment(formula.universe, values)
        return SolveReport(CmsAnswer(True, min_weight, witness, IN_MIN_MODEL), Engine.HORN_FIXPOINT)
    return SolveReport(CmsAnswer(False, min_weight, None, QUERY_FALSE), Engine.HORN_FIXPOINT)


# ---------------------------------------------------------------------------
# Width-2-affine engine
# ---------------------------------------------------------------------------


@lru_cache(maxsize=512)
def _w2a_compile(rel: Relation) -> tuple[tuple, ...]:
    """Implied <=2-variable parity equations over coordinates; verified to
    define the relation exactly (else the relation is not width-2-affine)."""
    if not (saturated_models(rel, ("T", "F", "eq", "neq")) == rel.table()).all():
        raise PreconditionError(
            f"relation {rel.name} is not width-2-affine; refusing to run the parity engine")
    tuples = rel.tuples()
    k = rel.arity
    eqs: list[tuple] = []
    for i in range(k):
        col = {t[i] for t in tuples}
        if col == {0}:
            eqs.append(("unit", i, 0))
        elif col == {1}:
            eqs.append(("unit", i, 1))
    for i in range(k):
        for j in range(i + 1, k):
            pairs = {(t[i] ^ t[j]) for t in tuples}
            if pairs == {0}:
                eqs.append(("pair", i, j, 0))
            elif pairs == {1}:
                eqs.append(("pair", i, j, 1))
    return tuple(eqs)


class _ParityDSU:
    ZERO = "\x00const"

    def __init__(self) -> None:
        self.parent: dict[str, str] = {}
        self.par: dict[str, int] = {}
        self.unsat = False

    def find(self, v: str) -> tuple[str, int]:
        if v not in self.parent:
            self.parent[v] = v
            self.par[v] = 0
            return v, 0
        if self.parent[v] == v:
            return v, self.par[v]
        root, p = self.find(self.parent[v])
        self.par[v] ^= p
        self.parent[v] = root
        return root, self.par[v]

    def union(self, u: str, v: str, parity: int) -> None:
        ru, pu = self.find(u)
        rv, pv = self.find(v)
        if ru == rv:
            if pu ^ pv != parity:
                self.unsat = True
            return
        self.parent[rv] = ru
        self.par[rv] = pu ^ pv ^ parity


def solve_width2affine(formula: Formula, query: str) -> SolveReport:
    """Exact engine for formulas over width-2-affine relations.

    Compiles every constraint to unit and two-variable parity equations,
    groups variables into parity components, and picks the lighter side per
    unforced component (both on ties).
    """
    require_query(formula, query)
    compiled = {rel.name: _w2a_compile(rel) for rel in formula.relations()}
    dsu = _ParityDSU()
    unsat = False
    for rel, vs in formula.constraints:
        for eq in compiled[rel.name]:
            if eq[0] == "unit":
                _, i, a = eq
                dsu.union(vs[i], dsu.ZERO, a)
            else:
                _, i, j, parity = eq
                if vs[i] == vs[j]:
                    if parity == 1:
                        unsat = True
                else:
                    dsu.union(vs[i], vs[j], parity)
    if unsat or dsu.unsat:
        return SolveReport(CmsAnswer(False, None, None, UNSATISFIABLE), Engine.WIDTH2_AFFINE)
    comps: dict[str, list[tuple[str, int]]] = {}
    for v in formula.universe:
        if v in dsu.parent:
            root, p = dsu.find(v)
            comps.setdefault(root, []).append((v, p))
    zero_root, zero_par = (dsu.find(dsu.ZERO) if dsu.ZERO in dsu.parent else (None, 0))
    position = {v: i for i, v in enumerate(formula.universe)}
    min_weight = 0
    choice: dict[str, int] = {}  # component root -> value of the root
    query_yes: bool
    if zero_root is not None:
        # The constant sits in this component with parity zero_par to the
        # root, so the root's value is forced to zero_par.
        min_weight += sum(p ^ zero_par for _, p in comps.get(zero_root, []))
        choice[zero_root] = zero_par
    for root, members in comps.items():
        if root == zero_root:
            continue
        c1 = sum(p for _, p in members)          # weight when root = 0
        c0 = len(members) - c1                   # weight when root = 1
        min_weight += min(c1, c0)
        if c1 < c0:
            choice[root] = 0
        elif c0 < c1:
            choice[root] = 1
        else:
            earliest = min(members, key=lambda vp: position[vp[0]])
            choice[root] = earliest[1]  # makes the earliest member 0
    if query in dsu.parent:
        qroot, qpar = dsu.find(query)
        if qroot == zero_root:
            query_yes = (qpar ^ zero_par) == 1
        else:
            members = comps[qroot]
            c1 = sum(p for _, p in members)
            c0 = len(members) - c1
            b_for_one = qpar ^ 1
            w_one = c0 if b_for_one == 1 else c1
            w_zero = c0 if b_for_one == 0 else c1
            query_yes = w_one <= w_zero
            if query_yes:
                choice[qroot] = b_for_one
    else:
        query_yes = False  # isolated variables are 0 in every minimum model
    if not query_yes:
        return SolveReport(CmsAnswer(False, min_weight, None, QUERY_FALSE), Engine.WIDTH2_AFFINE)
    values = []
    for v in formula.universe:
        if v in dsu.parent:
            root, p = dsu.find(v)
            values.append(p ^ choice[root])
        else:
            values.append(0)
    witness = Assignment(formula.universe, tuple(values))
    return SolveReport(CmsAnswer(True, min_weight, witness, IN_MIN_MODEL), Engine.WIDTH2_AFFINE)


# ---------------------------------------------------------------------------
# Generic oracle engine
# ---------------------------------------------------------------------------


def solve_generic(formula: Formula, query: str) -> SolveReport:
    """Binary search over the weight bound with an internal NP oracle,
    then one final call with the query atom forced to 1.

    The number of oracle calls never exceeds ceil(log2(n+2)) + 1.
    """
    require_query(formula, query)
    n = formula.num_vars
    calls = 0
    lo, hi = 0, n + 1  # n+1 encodes "unsatisfiable"
    while lo < hi:
        mid = (lo + hi) // 2
        calls += 1
        if search.sat_leq(formula, mid):
            hi = mid
        else:
            lo = mid + 1
    if lo == n + 1:
        return SolveReport(CmsAnswer(False, None, None, UNSATISFIABLE), Engine.GENERIC_ORACLE, calls)
    min_weight = lo
    calls += 1
    witness = search.find_model(formula, weight_bound=min_weight, forced={query: 1})
    if witness is None:
        return SolveReport(CmsAnswer(False, min_weight, None, QUERY_FALSE), Engine.GENERIC_ORACLE, calls)
    return SolveReport(CmsAnswer(True, min_weight, witness, IN_MIN_MODEL), Engine.GENERIC_ORACLE, calls)


def solve_brute(formula: Formula, query: str) -> SolveReport:
    return SolveReport(cms_bruteforce(formula, query), Engine.BRUTE_FORCE)


# ---------------------------------------------------------------------------
# Dispatcher
# ---------------------------------------------------------------------------


def dispatch(language: ConstraintLanguage, formula: Formula, query: str) -> SolveReport:
    """Route per the tractability classification of the language."""
    require_query(formula, query)
    for rel in formula.relations():
        if rel.name not in language or not language.get(rel.name).same_tuples(rel):
            raise PreconditionError(f"formula uses relation {rel.name!r} outside the language")
    verdict = classify_cms(language)
    if verdict.bucket is Bucket.TRIVIAL_0VALID:
        # 0-valid language: the all-zero assignment is the unique minimum model.
        return SolveReport(CmsAnswer(False, 0, None, QUERY_FALSE), Engine.TRIVIAL)
    if verdict.bucket is Bucket.POLY_HORN:
        return solve_horn(formula, query)
    if verdict.bucket is Bucket.POLY_WIDTH2_AFFINE:
        return solve_width2affine(formula, query)
    return solve_generic(formula, query)


def render_solve_report(report: SolveReport, budget: int | None = None) -> str:
    a = report.answer
    lines = ["solve report"]
    lines.append(f"  engine: {report.engine.value}")
    lines.append(f"  answer: {'yes' if a.verdict else 'no'} ({a.reason})")
    if a.min_weight is not None:
        lines.append(f"  minimum model weight: {a.min_weight}")
    if a.witness is not None:
        lines.append(f"  witness: {a.witness}")
    lines.append("")
    lines.append(f"engine={report.engine.value}")
    lines.append(f"verdict={'yes' if a.verdict else 'no'}")
    lines.append(f"reason={a.reason}")
    lines.append(f"min_weight={a.min_weight if a.min_weight is not None else 'none'}")
    lines.append(f"witness={a.witness if a.witness is not None else 'none'}")
    lines.append(f"oracle_calls={report.oracle_calls}")
    if budget is not None:
        lines.append(f"oracle_budget={budget}")
    return "\n".join(lines) + "\n"
