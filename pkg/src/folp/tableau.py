"""The 15-rule tableau calculus: rule application and branch closure.

A branch is an ordered list of ``(node id, formula)`` pairs from the
roots to a leaf; every label is a closed Par-formula.  Rule application
returns the extensions (one list of new formulas per created child
branch) and never mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .axioms import ConstantSpecification, cs_contains
from .syntax import (
    App,
    Assert,
    Atom,
    Bang,
    CaptureError,
    Exists,
    Forall,
    Formula,
    Gen,
    Impl,
    Neg,
    PARAM,
    Sum,
    TermConst,
    elem_set,
    mkwindow,
    par_set,
    substitute,
    substitute_param,
    universal_closure,
    var,
)

RULE_NAMES = (
    "FNeg",
    "TImp",
    "FImp",
    "TForall",
    "FExists",
    "TExists",
    "FForall",
    "TColon",
    "FPlus",
    "FDot",
    "FBang",
    "Ctr",
    "Exp",
    "Ins",
    "GenX",
)

BRANCHING_RULES = ("TImp", "FDot")
FRESH_PARAM_RULES = ("TExists", "FForall")


class RuleError(Exception):
    """A rule instance does not apply; ``condition`` names the violated
    premise shape or side condition."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"{condition}: {message}")
        self.condition = condition
        self.message = message


@dataclass(frozen=True)
class RuleApp:
    name: str
    premises: tuple[int, ...]
    param: Optional[Atom] = None
    cut: Optional[Formula] = None
    var: Optional[str] = None

    def __post_init__(self) -> None:
        if self.name not in RULE_NAMES:
            raise ValueError(f"unknown rule {self.name!r}")


@dataclass(frozen=True)
class Contradiction:
    """Closure by ``A`` and ``~A`` both on the branch."""

    node_id: int
    with_id: int


@dataclass(frozen=True)
class CsClosure:
    """Closure by ``~c:A`` on the branch with ``c:A`` in the CS."""

    node_id: int
    constant: str


Closure = Union[Contradiction, CsClosure]

Branch = list[tuple[int, Formula]]


def _premise(branch: Branch, rule: RuleApp, count: int = 1) -> list[Formula]:
    if len(rule.premises) != count:
        raise RuleError(
            "premise-count",
            f"{rule.name} takes {count} premise(s), got {len(rule.premises)}",
        )
    by_id = dict(branch)
    out = []
    for pid in rule.premises:
        if pid not in by_id:
            raise RuleError("premise-missing", f"node {pid} is not on the branch")
        out.append(by_id[pid])
    return out


def _dest_neg_assert(f: Formula, rule: str) -> Assert:
    if not (isinstance(f, Neg) and isinstance(f.body, Assert)):
        raise RuleError(
            "premise-shape", f"{rule} premise must be a negated assertion, got {f}"
        )
    return f.body


def _require_par_window(a: Assert, rule: str) -> None:
    bad = [w for w in a.window if w.kind != PARAM]
    if bad:
        raise RuleError(
            "window-not-par",
            f"{rule} requires the window to contain parameters only; "
            f"found {', '.join(map(str, bad))}",
        )


def _require_param(rule: RuleApp) -> Atom:
    if rule.param is None or rule.param.kind != PARAM:
        raise RuleError("param-missing", f"{rule.name} requires a parameter")
    return rule.param


def branch_params(branch: Branch) -> set[str]:
    out: set[str] = set()
    for _, f in branch:
        out |= par_set(f)
    return out


def apply_rule(branch: Branch, rule: RuleApp) -> list[list[Formula]]:
    """Compute the child-branch extensions of a rule instance.

    Returns one list per created child branch (two lists for the
    branching rules TImp and FDot, one otherwise).  Raises
    :class:`RuleError` on premise-shape or side-condition violations.
    """
    name = rule.name

    if name == "FNeg":
        (p,) = _premise(branch, rule)
        if not (isinstance(p, Neg) and isinstance(p.body, Neg)):
            raise RuleError("premise-shape", f"FNeg premise must be ~~A, got {p}")
        return [[p.body.body]]

    if name == "TImp":
        (p,) = _premise(branch, rule)
        if not isinstance(p, Impl):
            raise RuleError("premise-shape", f"TImp premise must be A -> B, got {p}")
        return [[Neg(p.left)], [p.right]]

    if name == "FImp":
        (p,) = _premise(branch, rule)
        if not (isinstance(p, Neg) and isinstance(p.body, Impl)):
            raise RuleError("premise-shape", f"FImp premise must be ~(A -> B), got {p}")
        return [[p.body.left, Neg(p.body.right)]]

    if name in ("TForall", "FExists"):
        (p,) = _premise(branch, rule)
        u = _require_param(rule)
        if name == "TForall":
            if not isinstance(p, Forall):
                raise RuleError("premise-shape", f"TForall premise must be forall, got {p}")
            return [[substitute(p.body, p.bound, u)]]
        if not (isinstance(p, Neg) and isinstance(p.body, Exists)):
            raise RuleError("premise-shape", f"FExists premise must be ~exists, got {p}")
        return [[Neg(substitute(p.body.body, p.body.bound, u))]]

    if name in ("TExists", "FForall"):
        (p,) = _premise(branch, rule)
        u = _require_param(rule)
        if u.name in branch_params(branch):
            raise RuleError(
                "freshness", f"parameter {u} already occurs on the branch"
            )
        if name == "TExists":
            if not isinstance(p, Exists):
                raise RuleError("premise-shape", f"TExists premise must be exists, got {p}")
            return [[substitute(p.body, p.bound, u)]]
        if not (isinstance(p, Neg) and isinstance(p.body, Forall)):
            raise RuleError("premise-shape", f"FForall premise must be ~forall, got {p}")
        return [[Neg(substitute(p.body.body, p.body.bound, u))]]

    if name == "TColon":
        (p,) = _premise(branch, rule)
        if not isinstance(p, Assert):
            raise RuleError("premise-shape", f"TColon premise must be t : A, got {p}")
        _require_par_window(p, "TColon")
        return [[universal_closure(p.body)]]

    if name == "FPlus":
        (p,) = _premise(branch, rule)
        a = _dest_neg_assert(p, "FPlus")
        if not isinstance(a.term, Sum):
            raise RuleError("premise-shape", f"FPlus premise term must be a sum, got {p}")
        _require_par_window(a, "FPlus")
        return [[
            Neg(Assert(a.term.left, a.window, a.body)),
            Neg(Assert(a.term.right, a.window, a.body)),
        ]]

    if name == "FDot":
        (p,) = _premise(branch, rule)
        a = _dest_neg_assert(p, "FDot")
        if not isinstance(a.term, App):
            raise RuleError(
                "premise-shape", f"FDot premise term must be an application, got {p}"
            )
        _require_par_window(a, "FDot")
        if rule.cut is None:
            raise RuleError("cut-missing", "FDot requires a cut formula")
        window_pars = {w.name for w in a.window}
        if not par_set(rule.cut) <= window_pars:
            raise RuleError(
                "par-subset",
                f"cut formula parameters {sorted(par_set(rule.cut) - window_pars)} "
                f"not contained in the window",
            )
        if elem_set(rule.cut):
            raise RuleError("cut-elems", "cut formula contains domain elements")
        s, t = a.term.left, a.term.right
        return [
            [Neg(Assert(s, a.window, Impl(rule.cut, a.body)))],
            [Neg(Assert(t, a.window, rule.cut))],
        ]

    if name == "FBang":
        (p,) = _premise(branch, rule)
        a = _dest_neg_assert(p, "FBang")
        if not isinstance(a.term, Bang):
            raise RuleError("premise-shape", f"FBang premise term must be !t, got {p}")
        inner = a.body
        if not isinstance(inner, Assert):
            raise RuleError(
                "premise-shape", f"FBang premise body must itself be an assertion, got {p}"
            )
        if inner.term != a.term.inner:
            raise RuleError(
                "premise-shape", "FBang inner term differs from the checked term"
            )
        if inner.window != a.window:
            raise RuleError(
                "premise-shape", "FBang inner and outer windows differ"
            )
        _require_par_window(a, "FBang")
        return [[Neg(inner)]]

    if name == "Ctr":
        (p,) = _premise(branch, rule)
        a = _dest_neg_assert(p, "Ctr")
        _require_par_window(a, "Ctr")
        u = _require_param(rule)
        if u in a.window:
            raise RuleError("ctr-param-in-window", f"{u} already in the window")
        return [[Neg(Assert(a.term, mkwindow(a.window + (u,)), a.body))]]

    if name == "Exp":
        (p,) = _premise(branch, rule)
        a = _dest_neg_assert(p, "Exp")
        _require_par_window(a, "Exp")
        u = _require_param(rule)
        if u not in a.window:
            raise RuleError("exp-param-not-in-window", f"{u} is not in the window")
        if u.name in par_set(a.body):
            raise RuleError(
                "exp-side-condition", f"{u} occurs in the asserted formula"
            )
        return [[Neg(Assert(a.term, tuple(w for w in a.window if w != u), a.body))]]

    if name == "Ins":
        (p,) = _premise(branch, rule)
        a = _dest_neg_assert(p, "Ins")
        _require_par_window(a, "Ins")
        u = _require_param(rule)
        if rule.var is None:
            raise RuleError("var-missing", "Ins requires an individual variable")
        if u.name not in par_set(a.body):
            raise RuleError(
                "ins-no-param", f"{u} does not occur in the asserted formula"
            )
        try:
            new_body = substitute_param(a.body, u.name, var(rule.var))
        except CaptureError as exc:
            raise RuleError("ins-capture", str(exc)) from None
        return [[Neg(Assert(a.term, a.window, new_body))]]

    if name == "GenX":
        (p,) = _premise(branch, rule)
        a = _dest_neg_assert(p, "GenX")
        if not isinstance(a.term, Gen):
            raise RuleError("premise-shape", f"GenX premise term must be gen<x>(t), got {p}")
        if not isinstance(a.body, Forall):
            raise RuleError(
                "premise-shape", f"GenX premise body must be universally quantified, got {p}"
            )
        if a.body.bound != a.term.bound:
            raise RuleError(
                "premise-shape",
                f"GenX generalization variable {a.term.bound} differs from the "
                f"quantified variable {a.body.bound}",
            )
        _require_par_window(a, "GenX")
        return [[Neg(Assert(a.term.inner, a.window, a.body.body))]]

    raise RuleError("unknown-rule", name)


def closure_against(
    new_id: int,
    f: Formula,
    seen: dict[Formula, int],
    cs: ConstantSpecification,
) -> Optional[Closure]:
    """Closure mark produced by adding ``f``, if any.

    ``seen`` maps earlier branch formulas to their node ids.
    """
    if isinstance(f, Neg):
        if f.body in seen:
            return Contradiction(new_id, seen[f.body])
        a = f.body
        if (
            isinstance(a, Assert)
            and isinstance(a.term, TermConst)
            and not a.window
            and cs_contains(cs, a.term.name, a.body)
        ):
            return CsClosure(new_id, a.term.name)
    if Neg(f) in seen:
        return Contradiction(new_id, seen[Neg(f)])
    return None


def branch_closed(
    branch: Branch, cs: ConstantSpecification
) -> Optional[Closure]:
    """First closure mark on the branch, scanning in branch order."""
    seen: dict[Formula, int] = {}
    for nid, f in branch:
        mark = closure_against(nid, f, seen, cs)
        if mark is not None:
            return mark
        seen.setdefault(f, nid)
    return None


# ---------------------------------------------------------------------------
# Proof trees


@dataclass
class ProofNode:
    id: int
    formula: Formula
    rule: Optional[RuleApp]
    children: list["ProofNode"] = field(default_factory=list)
    closure: Optional[Closure] = None


@dataclass
class ProofTree:
    roots: list[Formula]
    root: ProofNode

    def nodes(self) -> list[ProofNode]:
        out: list[ProofNode] = []
        stack = [self.root]
        while stack:
            n = stack.pop()
            out.append(n)
            stack.extend(reversed(n.children))
        return out

    def branches(self) -> list[list[ProofNode]]:
        """All root-to-leaf paths, leftmost first."""
        out: list[list[ProofNode]] = []

        def walk(node: ProofNode, path: list[ProofNode]) -> None:
            path = path + [node]
            if not node.children:
                out.append(path)
            for child in node.children:
                walk(child, path)

        walk(self.root, [])
        return out


def tableau_closed(tree: ProofTree, cs: ConstantSpecification) -> bool:
    """True iff every leaf-to-root branch carries a valid closure."""
    for path in tree.branches():
        leaf = path[-1]
        branch: Branch = [(n.id, n.formula) for n in path]
        mark = leaf.closure
        if mark is None:
            return False
        by_id = dict(branch)
        if isinstance(mark, Contradiction):
            f = by_id.get(mark.node_id)
            g = by_id.get(mark.with_id)
            if f is None or g is None:
                return False
            if f != Neg(g) and Neg(f) != g:
                return False
        elif isinstance(mark, CsClosure):
            f = by_id.get(mark.node_id)
            if f is None or not isinstance(f, Neg):
                return False
            a = f.body
            if not (
                isinstance(a, Assert)
                and isinstance(a.term, TermConst)
                and a.term.name == mark.constant
                and not a.window
                and cs_contains(cs, mark.constant, a.body)
            ):
                return False
        else:
            return False
    return True
