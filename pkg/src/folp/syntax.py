"""Abstract syntax for first order logic of proofs.

Formulas extend first order logic with justification assertions
``t :_X A`` whose subscript ``X`` (the "window") lists the atoms that
are substitutable-for and not quantifiable.  Three disjoint atom
namespaces exist: individual variables (bare lowercase), parameters
(``@u``), and domain elements (``$a``).  Parameters and domain elements
are never bound by quantifiers.

All values are immutable; windows are kept as sorted duplicate-free
tuples so structural equality of formulas is plain ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

VAR = "var"
PARAM = "param"
ELEM = "elem"

_KIND_ORDER = {VAR: 0, PARAM: 1, ELEM: 2}
_KIND_SIGIL = {VAR: "", PARAM: "@", ELEM: "$"}


@dataclass(frozen=True, slots=True)
class Atom:
    """An individual variable, a parameter, or a domain element."""

    kind: str
    name: str

    def __post_init__(self) -> None:
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown atom kind: {self.kind!r}")

    def __str__(self) -> str:
        return _KIND_SIGIL[self.kind] + self.name

    def sort_key(self) -> tuple[int, str]:
        return (_KIND_ORDER[self.kind], self.name)


def var(name: str) -> Atom:
    return Atom(VAR, name)


def param(name: str) -> Atom:
    return Atom(PARAM, name)


def elem(name: str) -> Atom:
    return Atom(ELEM, name)


# ---------------------------------------------------------------------------
# Justification terms


class Term:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class TermVar(Term):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class TermConst(Term):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Sum(Term):
    left: Term
    right: Term

    def __str__(self) -> str:
        return f"{_fmt_term(self.left, 0)}+{_fmt_term(self.right, 1)}"


@dataclass(frozen=True, slots=True)
class App(Term):
    left: Term
    right: Term

    def __str__(self) -> str:
        return f"{_fmt_term(self.left, 1)}*{_fmt_term(self.right, 2)}"


@dataclass(frozen=True, slots=True)
class Bang(Term):
    inner: Term

    def __str__(self) -> str:
        return "!" + _fmt_term(self.inner, 2)


@dataclass(frozen=True, slots=True)
class Gen(Term):
    """``gen_x(t)``; ``bound`` is always an individual variable name."""

    bound: str
    inner: Term

    def __str__(self) -> str:
        return f"gen<{self.bound}>({self.inner})"


def _term_level(t: Term) -> int:
    # 0: sum, 1: application, 2: prefix/atomic
    if isinstance(t, Sum):
        return 0
    if isinstance(t, App):
        return 1
    return 2


def _fmt_term(t: Term, required: int) -> str:
    s = str(t)
    return f"({s})" if _term_level(t) < required else s


def subterms(t: Term) -> Iterator[Term]:
    """Yield ``t`` and every subterm of ``t``."""
    yield t
    if isinstance(t, (Sum, App)):
        yield from subterms(t.left)
        yield from subterms(t.right)
    elif isinstance(t, Bang):
        yield from subterms(t.inner)
    elif isinstance(t, Gen):
        yield from subterms(t.inner)


# ---------------------------------------------------------------------------
# Formulas


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        from .parser import print_formula

        return print_formula(self)  # type: ignore[arg-type]


Window = tuple[Atom, ...]


def mkwindow(atoms: Iterable[Atom]) -> Window:
    """Sorted duplicate-free window."""
    return tuple(sorted(set(atoms), key=Atom.sort_key))


@dataclass(frozen=True, slots=True)
class Pred(Formula):
    name: str
    args: tuple[Atom, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True, slots=True)
class Neg(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class Impl(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Forall(Formula):
    bound: str
    body: Formula


@dataclass(frozen=True, slots=True)
class Exists(Formula):
    bound: str
    body: Formula


@dataclass(frozen=True, slots=True)
class Assert(Formula):
    """A justification assertion ``term :_window body``."""

    term: Term
    window: Window
    body: Formula

    def __post_init__(self) -> None:
        object.__setattr__(self, "window", mkwindow(self.window))


class CaptureError(Exception):
    """Substitution would capture the substituted atom under a binder."""


# ---------------------------------------------------------------------------
# Variable and parameter bookkeeping


def free_vars(f: Formula) -> frozenset[str]:
    """Free individual variables of ``f``.

    The free variables of ``t :_X A`` are exactly the individual
    variables of ``X``; occurrences in ``A`` of variables not in ``X``
    are neither free nor bindable.
    """
    if isinstance(f, Pred):
        return frozenset(a.name for a in f.args if a.kind == VAR)
    if isinstance(f, Neg):
        return free_vars(f.body)
    if isinstance(f, Impl):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - {f.bound}
    if isinstance(f, Assert):
        return frozenset(a.name for a in f.window if a.kind == VAR)
    raise TypeError(f"not a formula: {f!r}")


def _atom_names(f: Formula, kind: str) -> frozenset[str]:
    if isinstance(f, Pred):
        return frozenset(a.name for a in f.args if a.kind == kind)
    if isinstance(f, Neg):
        return _atom_names(f.body, kind)
    if isinstance(f, Impl):
        return _atom_names(f.left, kind) | _atom_names(f.right, kind)
    if isinstance(f, (Forall, Exists)):
        return _atom_names(f.body, kind)
    if isinstance(f, Assert):
        here = frozenset(a.name for a in f.window if a.kind == kind)
        return here | _atom_names(f.body, kind)
    raise TypeError(f"not a formula: {f!r}")


def par_set(f: Formula) -> frozenset[str]:
    """All parameters occurring in ``f``, windows included."""
    return _atom_names(f, PARAM)


def elem_set(f: Formula) -> frozenset[str]:
    """All domain elements occurring in ``f``, windows included."""
    return _atom_names(f, ELEM)


def atoms_of(f: Formula) -> frozenset[Atom]:
    """Every atom occurring in ``f`` (predicate arguments and windows)."""
    if isinstance(f, Pred):
        return frozenset(f.args)
    if isinstance(f, Neg):
        return atoms_of(f.body)
    if isinstance(f, Impl):
        return atoms_of(f.left) | atoms_of(f.right)
    if isinstance(f, (Forall, Exists)):
        return atoms_of(f.body)
    if isinstance(f, Assert):
        return frozenset(f.window) | atoms_of(f.body)
    raise TypeError(f"not a formula: {f!r}")


def is_closed_par_formula(f: Formula) -> bool:
    """True iff ``f`` has no free individual variables."""
    return not free_vars(f)


def predicate_arities(f: Formula) -> dict[str, set[int]]:
    """Map each predicate symbol of ``f`` to the arities it is used at."""
    out: dict[str, set[int]] = {}

    def walk(g: Formula) -> None:
        if isinstance(g, Pred):
            out.setdefault(g.name, set()).add(len(g.args))
        elif isinstance(g, Neg):
            walk(g.body)
        elif isinstance(g, Impl):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (Forall, Exists)):
            walk(g.body)
        elif isinstance(g, Assert):
            walk(g.body)

    walk(f)
    return out


def formula_terms(f: Formula) -> frozenset[Term]:
    """All justification terms occurring in ``f``, subterms included."""
    if isinstance(f, Pred):
        return frozenset()
    if isinstance(f, Neg):
        return formula_terms(f.body)
    if isinstance(f, Impl):
        return formula_terms(f.left) | formula_terms(f.right)
    if isinstance(f, (Forall, Exists)):
        return formula_terms(f.body)
    if isinstance(f, Assert):
        return frozenset(subterms(f.term)) | formula_terms(f.body)
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    """Yield ``f`` and all its subformulas, outermost first."""
    yield f
    if isinstance(f, Neg):
        yield from subformulas(f.body)
    elif isinstance(f, Impl):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (Forall, Exists, Assert)):
        yield from subformulas(f.body)


# ---------------------------------------------------------------------------
# Substitution


def substitute(f: Formula, x: str, a: Atom) -> Formula:
    """Replace every free occurrence of individual variable ``x`` by ``a``.

    Raises :class:`CaptureError` when ``a`` is a variable that would be
    captured by a quantifier.  Occurrences in an assertion are touched
    only when ``x`` belongs to its window.
    """
    if isinstance(f, Pred):
        return Pred(
            f.name,
            tuple(a if (g.kind == VAR and g.name == x) else g for g in f.args),
        )
    if isinstance(f, Neg):
        return Neg(substitute(f.body, x, a))
    if isinstance(f, Impl):
        return Impl(substitute(f.left, x, a), substitute(f.right, x, a))
    if isinstance(f, (Forall, Exists)):
        if f.bound == x or x not in free_vars(f.body):
            return f
        if a.kind == VAR and a.name == f.bound:
            raise CaptureError(
                f"substituting {a} for {x} would be captured by the "
                f"quantifier binding {f.bound}"
            )
        return type(f)(f.bound, substitute(f.body, x, a))
    if isinstance(f, Assert):
        wnames = {w.name for w in f.window if w.kind == VAR}
        if x not in wnames:
            return f
        new_window = tuple(
            a if (w.kind == VAR and w.name == x) else w for w in f.window
        )
        return Assert(f.term, new_window, substitute(f.body, x, a))
    raise TypeError(f"not a formula: {f!r}")


def substitute_param(f: Formula, u: str, a: Atom) -> Formula:
    """Replace every occurrence of parameter ``u`` in ``f`` by ``a``.

    Parameters occur freely everywhere (they are never bound), so all
    occurrences are replaced, nested windows included.  When ``a`` is an
    individual variable, placing it under a quantifier binding the same
    name raises :class:`CaptureError`.
    """
    if isinstance(f, Pred):
        return Pred(
            f.name,
            tuple(a if (g.kind == PARAM and g.name == u) else g for g in f.args),
        )
    if isinstance(f, Neg):
        return Neg(substitute_param(f.body, u, a))
    if isinstance(f, Impl):
        return Impl(substitute_param(f.left, u, a), substitute_param(f.right, u, a))
    if isinstance(f, (Forall, Exists)):
        if u not in par_set(f.body):
            return f
        if a.kind == VAR and a.name == f.bound:
            raise CaptureError(
                f"replacing @{u} by {a} under the quantifier binding {f.bound}"
            )
        return type(f)(f.bound, substitute_param(f.body, u, a))
    if isinstance(f, Assert):
        new_window = tuple(
            a if (w.kind == PARAM and w.name == u) else w for w in f.window
        )
        return Assert(f.term, new_window, substitute_param(f.body, u, a))
    raise TypeError(f"not a formula: {f!r}")


def universal_closure(f: Formula) -> Formula:
    """Quantify the free individual variables of ``f``, lexicographically.

    Parameters and domain elements are never quantified.
    """
    out = f
    for name in sorted(free_vars(f), reverse=True):
        out = Forall(name, out)
    return out


# ---------------------------------------------------------------------------
# Canonical renaming and variable variants


def canonical(f: Formula, rename_free: bool = False) -> Formula:
    """Rename bound variables to a canonical sequence ``_b0, _b1, ...``.

    With ``rename_free`` every remaining individual variable is also
    renamed, by first occurrence, to ``_f0, _f1, ...``; two formulas are
    variable variants iff their fully renamed forms coincide.
    """
    bound_counter = [0]
    free_map: dict[str, str] = {}

    def map_name(name: str, env: dict[str, str]) -> str:
        if name in env:
            return env[name]
        if rename_free:
            return free_map.setdefault(name, f"_f{len(free_map)}")
        return name

    def map_atom(a: Atom, env: dict[str, str]) -> Atom:
        if a.kind == VAR:
            return Atom(VAR, map_name(a.name, env))
        return a

    def walk_term(t: Term, env: dict[str, str]) -> Term:
        if isinstance(t, (TermVar, TermConst)):
            return t
        if isinstance(t, Sum):
            return Sum(walk_term(t.left, env), walk_term(t.right, env))
        if isinstance(t, App):
            return App(walk_term(t.left, env), walk_term(t.right, env))
        if isinstance(t, Bang):
            return Bang(walk_term(t.inner, env))
        if isinstance(t, Gen):
            return Gen(map_name(t.bound, env), walk_term(t.inner, env))
        raise TypeError(f"not a term: {t!r}")

    def walk(g: Formula, env: dict[str, str]) -> Formula:
        if isinstance(g, Pred):
            return Pred(g.name, tuple(map_atom(a, env) for a in g.args))
        if isinstance(g, Neg):
            return Neg(walk(g.body, env))
        if isinstance(g, Impl):
            return Impl(walk(g.left, env), walk(g.right, env))
        if isinstance(g, (Forall, Exists)):
            fresh = f"_b{bound_counter[0]}"
            bound_counter[0] += 1
            return type(g)(fresh, walk(g.body, {**env, g.bound: fresh}))
        if isinstance(g, Assert):
            wnames = {w.name for w in g.window if w.kind == VAR}
            # Only window variables are visible through an assertion;
            # other bindings do not reach into the body.
            inner_env = {k: v for k, v in env.items() if k in wnames}
            return Assert(
                walk_term(g.term, env),
                tuple(map_atom(a, env) for a in g.window),
                walk(g.body, inner_env),
            )
        raise TypeError(f"not a formula: {g!r}")

    return walk(f, {})


def alpha_eq(f: Formula, g: Formula) -> bool:
    """Structural equality up to renaming of bound variables."""
    return f == g or canonical(f) == canonical(g)


def variable_variant(f: Formula, g: Formula) -> bool:
    """True iff the formulas differ only by a bijective renaming of free
    and bound individual variables."""
    return canonical(f, rename_free=True) == canonical(g, rename_free=True)
