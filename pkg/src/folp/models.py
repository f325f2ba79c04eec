"""Finite Mkrtychev models: admissible-evidence validation, truth
evaluation, and bounded countermodel search.

A model is a finite domain, a predicate interpretation, and a finitely
presented evidence function mapping justification terms to sets of
domain formulas.  The closure conditions E1-E6 are checked over the
presented fragment only; membership in an evidence set is structural
equality up to renaming of bound variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .axioms import ConstantSpecification
from .syntax import (
    App,
    Assert,
    Bang,
    Exists,
    Forall,
    Formula,
    Gen,
    Impl,
    Neg,
    Pred,
    Sum,
    Term,
    TermConst,
    canonical,
    elem,
    elem_set,
    formula_terms,
    free_vars,
    mkwindow,
    par_set,
    predicate_arities,
    subformulas,
    substitute,
    subterms,
    universal_closure,
)


class ModelError(Exception):
    """The model presentation itself is unusable (bad arity, open query)."""


@dataclass
class MkrtychevModel:
    domain: tuple[str, ...]
    interp: dict[str, frozenset[tuple[str, ...]]]
    evidence: dict[Term, tuple[Formula, ...]]

    def evidence_of(self, t: Term) -> tuple[Formula, ...]:
        return self.evidence.get(t, ())

    def canon_evidence(self, t: Term) -> frozenset[Formula]:
        return frozenset(canonical(f) for f in self.evidence_of(t))


@dataclass(frozen=True)
class Violation:
    condition: str  # one of E1..E6
    message: str

    def __str__(self) -> str:
        return f"{self.condition}: {self.message}"


def _arity_map(m: MkrtychevModel) -> dict[str, int]:
    arities: dict[str, int] = {}
    for q, rows in m.interp.items():
        for row in rows:
            if arities.setdefault(q, len(row)) != len(row):
                raise ModelError(f"predicate {q} interpreted at mixed arities")
    for formulas in m.evidence.values():
        for f in formulas:
            for q, used in predicate_arities(f).items():
                if q not in m.interp:
                    raise ModelError(
                        f"evidence references undeclared predicate {q}"
                    )
                for k in used:
                    if arities.setdefault(q, k) != k:
                        raise ModelError(
                            f"predicate {q} used at arity {k}, "
                            f"expected {arities[q]}"
                        )
    return arities


def validate_model(
    m: MkrtychevModel, cs: ConstantSpecification
) -> list[Violation]:
    """Check E1-E6 over the finitely presented fragment.

    E1 is checked for concrete CS entries only; schematic and total
    specifications have infinitely many instances and are out of reach
    of a finite check.  Compound conditions are checked for every
    compound term present in the evidence map.
    """
    if not m.domain:
        raise ModelError("domain must be non-empty")
    _arity_map(m)
    violations: list[Violation] = []
    canon = {t: m.canon_evidence(t) for t in m.evidence}

    def member(t: Term, f: Formula) -> bool:
        return canonical(f) in canon.get(t, m.canon_evidence(t))

    for c, a in cs.concrete:
        if not member(TermConst(c), a):
            violations.append(
                Violation("E1", f"{c} : {a} in CS but {a} not in evidence({c})")
            )

    for t in m.evidence:
        if isinstance(t, App):
            for f in m.evidence_of(t.left):
                if not isinstance(f, Impl):
                    continue
                if member(t.right, f.left) and not member(t, f.right):
                    violations.append(
                        Violation(
                            "E2",
                            f"{f.left} -> {f.right} in evidence({t.left}) and "
                            f"{f.left} in evidence({t.right}) but "
                            f"{f.right} not in evidence({t})",
                        )
                    )
        elif isinstance(t, Sum):
            for part in (t.left, t.right):
                for f in m.evidence_of(part):
                    if not member(t, f):
                        violations.append(
                            Violation(
                                "E3",
                                f"{f} in evidence({part}) but not in evidence({t})",
                            )
                        )
        elif isinstance(t, Bang):
            for f in m.evidence_of(t.inner):
                base = sorted(elem_set(f))
                rest = [d for d in m.domain if d not in base]
                for k in range(len(rest) + 1):
                    for extra in itertools.combinations(rest, k):
                        window = mkwindow(elem(d) for d in [*base, *extra])
                        want = Assert(t.inner, window, f)
                        if not member(t, want):
                            violations.append(
                                Violation(
                                    "E4",
                                    f"{f} in evidence({t.inner}) but {want} "
                                    f"not in evidence({t})",
                                )
                            )
        elif isinstance(t, Gen):
            for f in m.evidence_of(t.inner):
                want = Forall(t.bound, f)
                if not member(t, want):
                    violations.append(
                        Violation(
                            "E5",
                            f"{f} in evidence({t.inner}) but {want} "
                            f"not in evidence({t})",
                        )
                    )

    for t, formulas in m.evidence.items():
        for f in formulas:
            for x in sorted(free_vars(f)):
                for d in m.domain:
                    inst = substitute(f, x, elem(d))
                    if not member(t, inst):
                        violations.append(
                            Violation(
                                "E6",
                                f"{f} in evidence({t}) but instance {inst} "
                                f"is not",
                            )
                        )
    return violations


def satisfies(m: MkrtychevModel, f: Formula) -> bool:
    """Truth of a closed domain formula in ``m``.

    An assertion is true iff its body belongs to the term's evidence and
    the body's universal closure holds over the domain.
    """
    if free_vars(f) or par_set(f):
        raise ModelError(f"satisfaction is defined for closed domain formulas: {f}")
    return _eval(m, f)


def _eval(m: MkrtychevModel, f: Formula) -> bool:
    if isinstance(f, Pred):
        row = tuple(a.name for a in f.args)
        return row in m.interp.get(f.name, frozenset())
    if isinstance(f, Neg):
        return not _eval(m, f.body)
    if isinstance(f, Impl):
        return (not _eval(m, f.left)) or _eval(m, f.right)
    if isinstance(f, Forall):
        return all(
            _eval(m, substitute(f.body, f.bound, elem(d))) for d in m.domain
        )
    if isinstance(f, Exists):
        return any(
            _eval(m, substitute(f.body, f.bound, elem(d))) for d in m.domain
        )
    if isinstance(f, Assert):
        if canonical(f.body) not in m.canon_evidence(f.term):
            return False
        return _eval(m, universal_closure(f.body))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Bounded countermodel search


@dataclass
class CountermodelSearch:
    model: Optional[MkrtychevModel]
    status: str  # "found", "absent", or "exhausted"
    models_checked: int = 0


_DOMAIN_NAMES = "abcdefgh"


def _instantiation_closure(
    bodies: Iterable[Formula], domain: tuple[str, ...], cap: int
) -> list[Formula]:
    """Close a formula pool under single-variable instantiation over the
    domain (the shape E6 demands)."""
    pool: dict[Formula, Formula] = {}
    work = list(bodies)
    while work:
        f = work.pop()
        key = canonical(f)
        if key in pool:
            continue
        pool[key] = f
        if len(pool) > cap:
            raise _PoolOverflow()
        for x in sorted(free_vars(f)):
            for d in domain:
                work.append(substitute(f, x, elem(d)))
    return sorted(pool.values(), key=lambda g: str(g))


class _PoolOverflow(Exception):
    pass


def _close_evidence(
    ev: dict[Term, dict[Formula, Formula]],
    terms: list[Term],
    domain: tuple[str, ...],
    cs: ConstantSpecification,
) -> None:
    """Mutate ``ev`` to the least fixpoint of E1-E6 over ``terms``."""
    term_set = set(terms)
    for c, a in cs.concrete:
        t = TermConst(c)
        if t in term_set:
            ev.setdefault(t, {})[canonical(a)] = a

    def add(t: Term, f: Formula) -> bool:
        key = canonical(f)
        bucket = ev.setdefault(t, {})
        if key in bucket:
            return False
        bucket[key] = f
        return True

    changed = True
    rounds = 0
    while changed and rounds < 50:
        changed = False
        rounds += 1
        for t in terms:
            if isinstance(t, App):
                for f in list(ev.get(t.left, {}).values()):
                    if isinstance(f, Impl) and canonical(f.left) in ev.get(
                        t.right, {}
                    ):
                        changed |= add(t, f.right)
            elif isinstance(t, Sum):
                for part in (t.left, t.right):
                    for f in list(ev.get(part, {}).values()):
                        changed |= add(t, f)
            elif isinstance(t, Bang):
                for f in list(ev.get(t.inner, {}).values()):
                    base = sorted(elem_set(f))
                    rest = [d for d in domain if d not in base]
                    for k in range(len(rest) + 1):
                        for extra in itertools.combinations(rest, k):
                            window = mkwindow(elem(d) for d in [*base, *extra])
                            changed |= add(t, Assert(t.inner, window, f))
            elif isinstance(t, Gen):
                for f in list(ev.get(t.inner, {}).values()):
                    changed |= add(t, Forall(t.bound, f))
        for t in terms:
            for f in list(ev.get(t, {}).values()):
                for x in sorted(free_vars(f)):
                    for d in domain:
                        changed |= add(t, substitute(f, x, elem(d)))


def find_countermodel(
    goal: Formula,
    cs: ConstantSpecification,
    max_domain: int = 2,
    formula_pool_depth: int = 2,
    max_models: int = 200_000,
) -> CountermodelSearch:
    """Enumerate small models looking for one that falsifies ``goal``.

    Evidence sets are drawn from the goal's assertion bodies (and CS
    bodies), instantiated over the domain and closed under E1-E6.
    Absence proves nothing; hitting the enumeration cap is reported as
    exhaustion, distinct from absence.
    """
    if free_vars(goal) or par_set(goal) or elem_set(goal):
        raise ModelError(f"countermodel goals must be sentences: {goal}")

    arities: dict[str, int] = {}
    for q, used in predicate_arities(goal).items():
        arities[q] = min(used)
    for _, a in cs.concrete:
        for q, used in predicate_arities(a).items():
            arities.setdefault(q, min(used))

    terms: set[Term] = set(formula_terms(goal))
    for c, _ in cs.concrete:
        terms.add(TermConst(c))
    for t in list(terms):
        terms.update(subterms(t))
    term_list = sorted(terms, key=str)

    bodies = [f.body for f in subformulas(goal) if isinstance(f, Assert)]
    bodies += [a for _, a in cs.concrete]

    checked = 0
    pool_cap = max(8, 4 * formula_pool_depth)
    for n in range(1, max_domain + 1):
        domain = tuple(_DOMAIN_NAMES[:n])
        try:
            pool = _instantiation_closure(bodies, domain, pool_cap)
        except _PoolOverflow:
            return CountermodelSearch(None, "exhausted", checked)

        pred_tuples = {
            q: list(itertools.product(domain, repeat=k)) for q, k in arities.items()
        }
        pred_names = sorted(arities)
        interp_choices = [
            list(_subsets(pred_tuples[q])) for q in pred_names
        ]
        # Subsets are assigned to every term, compound terms included:
        # some countermodels need evidence on a compound term that the
        # minimal closure of its parts would not provide.
        ev_choices = [list(_subsets(pool)) for _ in term_list]

        for interp_rows in itertools.product(*interp_choices):
            interp = {
                q: frozenset(rows) for q, rows in zip(pred_names, interp_rows)
            }
            for assignment in itertools.product(*ev_choices):
                checked += 1
                if checked > max_models:
                    return CountermodelSearch(None, "exhausted", checked)
                ev: dict[Term, dict[Formula, Formula]] = {
                    t: {canonical(f): f for f in fs}
                    for t, fs in zip(term_list, assignment)
                }
                _close_evidence(ev, term_list, domain, cs)
                model = MkrtychevModel(
                    domain=domain,
                    interp=interp,
                    evidence={
                        t: tuple(sorted(ev.get(t, {}).values(), key=str))
                        for t in term_list
                    },
                )
                if validate_model(model, cs):
                    continue
                if not satisfies(model, goal):
                    return CountermodelSearch(model, "found", checked)
    return CountermodelSearch(None, "absent", checked)


def _subsets(items: list) -> Iterable[tuple]:
    for k in range(len(items) + 1):
        yield from itertools.combinations(items, k)
