"""Propositional abduction with parity-clause theories and minimum-size
explanations, plus the rewriting of minimum-weight parity queries into the
relevance question."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import GuardError, NoSolutionError, ParseError, PreconditionError
from .formulas import Formula, require_query
from .gauss import gauss_solve
from .relations import build_named_relation

CLOSED_WORLD = "cw"
POSITIVE_UNITS = "pu"
SEMANTICS = (CLOSED_WORLD, POSITIVE_UNITS)

VAR_GUARD = 20

_XOR3 = build_named_relation("XOR", 3)


class XorClause(NamedTuple):
    vars: tuple[str, ...]
    parity: int


@dataclass(frozen=True)
class PAP:
    """An abduction instance: variables, hypotheses, manifestations, and a
    consistent theory made of parity clauses."""

    variables: tuple[str, ...]
    hypotheses: tuple[str, ...]
    manifestations: tuple[str, ...]
    theory: tuple[XorClause, ...]

    def __post_init__(self) -> None:
        vs = set(self.variables)
        if len(vs) != len(self.variables):
            raise ValueError("duplicate variables")
        for group, name in ((self.hypotheses, "hypothesis"), (self.manifestations, "manifestation")):
            for v in group:
                if v not in vs:
                    raise ValueError(f"{name} {v!r} is not a declared variable")
        for clause in self.theory:
            for v in clause.vars:
                if v not in vs:
                    raise ValueError(f"theory variable {v!r} is not declared")
        sat, _ = gauss_solve([(c.vars, c.parity) for c in self.theory])
        if not sat:
            raise ValueError("theory is inconsistent")


def _check_semantics(semantics: str) -> None:
    if semantics not in SEMANTICS:
        raise ValueError(f"unknown semantics {semantics!r}; use one of {SEMANTICS}")


def _units(pap: PAP, chosen: frozenset[str], semantics: str) -> dict[str, int]:
    units = {h: 1 for h in chosen}
    if semantics == CLOSED_WORLD:
        units.update({h: 0 for h in pap.hypotheses if h not in chosen})
    return units


def is_solution(pap: PAP, chosen: Iterable[str], semantics: str = CLOSED_WORLD,
                max_vars: int = VAR_GUARD) -> bool:
    """Is the hypothesis set a solution: theory plus the chosen units is
    consistent and entails every manifestation?

    Under the closed-world reading the un-chosen hypotheses are asserted
    false; under the positive-units reading they are left open.  Entailment
    is checked by enumeration over the unfixed variables, with a fast
    parity-elimination consistency pre-filter.
    """
    _check_semantics(semantics)
    chosen = frozenset(chosen)
    for h in chosen:
        if h not in pap.hypotheses:
            raise PreconditionError(f"{h!r} is not a hypothesis")
    if len(pap.variables) > max_vars:
        raise GuardError(f"{len(pap.variables)} variables exceed the enumeration guard ({max_vars})")
    units = _units(pap, chosen, semantics)
    equations = [(c.vars, c.parity) for c in pap.theory]
    equations.extend((((v,), b) for v, b in units.items()))
    sat, _ = gauss_solve(equations)
    if not sat:
        return False
    free = [v for v in pap.variables if v not in units]
    values = dict(units)
    targets = [m for m in pap.manifestations]
    for mask in range(1 << len(free)):
        for i, v in enumerate(free):
            values[v] = (mask >> i) & 1
        if all(sum(values[x] for x in c.vars) % 2 == c.parity for c in pap.theory):
            if any(values[m] == 0 for m in targets):
                return False
    return True


def relevance_bruteforce(pap: PAP, hypothesis: str, semantics: str = CLOSED_WORLD,
                         max_vars: int = VAR_GUARD) -> bool:
    """Does some minimum-cardinality solution contain the hypothesis?"""
    _check_semantics(semantics)
    if hypothesis not in pap.hypotheses:
        raise PreconditionError(f"{hypothesis!r} is not a hypothesis")
    for size in range(len(pap.hypotheses) + 1):
        found = [s for s in combinations(pap.hypotheses, size)
                 if is_solution(pap, s, semantics, max_vars)]
        if found:
            return any(hypothesis in s for s in found)
    raise NoSolutionError("the abduction instance has no solution")


def reduce_cms_xor3_to_relevance(formula: Formula, query: str) -> tuple[PAP, str]:
    """Rewrite a ternary-parity minimum-weight query as a relevance question.

    One manifestation per constraint, defined by a 4-ary parity clause; under
    the closed-world semantics the solutions are exactly the models of the
    source formula.
    """
    require_query(formula, query)
    for rel, _ in formula.constraints:
        if not rel.same_tuples(_XOR3):
            raise PreconditionError(f"constraint over {rel.name} is outside the ternary-parity fragment")
    prefix = "_"
    while any(v.startswith(prefix) for v in formula.universe):
        prefix += "_"
    goals = tuple(f"{prefix}g{i}" for i in range(1, formula.num_constraints + 1))
    theory = tuple(XorClause(vs + (g,), 0) for (_, vs), g in zip(formula.constraints, goals))
    pap = PAP(formula.universe + goals, formula.universe, goals, theory)
    return pap, query


# ---------------------------------------------------------------------------
# File format:  vars / hyp / man lines, then one "t v1 v2 ... = a" per clause
# ---------------------------------------------------------------------------


def render_pap(pap: PAP) -> str:
    def section(tag: str, names: tuple[str, ...]) -> str:
        return tag + ("" if not names else " " + " ".join(names))

    lines = [section("vars", pap.variables), section("hyp", pap.hypotheses),
             section("man", pap.manifestations)]
    for c in pap.theory:
        lines.append("t " + " ".join(c.vars) + f" = {c.parity}")
    return "\n".join(lines) + "\n"


def parse_pap(text: str) -> PAP:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    header: dict[str, tuple[str, ...]] = {}
    clauses: list[XorClause] = []
    expected = ["vars", "hyp", "man"]
    for lineno, line in enumerate(lines, start=1):
        if line != line.strip() or "  " in line or line == "":
            raise ParseError(f"line {lineno}: malformed line {line!r}")
        parts = line.split(" ")
        if parts[0] in ("vars", "hyp", "man"):
            if not expected or parts[0] != expected[0]:
                raise ParseError(f"line {lineno}: misplaced {parts[0]!r} line")
            header[parts[0]] = tuple(parts[1:])
            expected.pop(0)
        elif parts[0] == "t":
            if expected:
                raise ParseError(f"line {lineno}: theory clause before the header is complete")
            if len(parts) < 4 or parts[-2] != "=" or parts[-1] not in ("0", "1"):
                raise ParseError(f"line {lineno}: expected 't v1 ... = a'")
            clauses.append(XorClause(tuple(parts[1:-2]), int(parts[-1])))
        else:
            raise ParseError(f"line {lineno}: unknown line tag {parts[0]!r}")
    if expected:
        raise ParseError(f"missing {expected[0]!r} line")
    try:
        return PAP(header["vars"], header["hyp"], header["man"], tuple(clauses))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
