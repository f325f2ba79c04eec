"""Tableau proof search under resource budgets.

The strategy is deterministic and monotone: rules only ever add
formulas to a branch, so no backtracking is needed.  Cheap
non-branching rules fire first, then one-shot fresh-parameter rules,
then the branching implication rule, and finally the generative rules
(parameter instantiation, window contraction, application cuts), which
are rationed round-robin per premise.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .axioms import ConstantSpecification
from .syntax import (
    App,
    Assert,
    Atom,
    Bang,
    Exists,
    Forall,
    Formula,
    Gen,
    Impl,
    Neg,
    PARAM,
    Sum,
    atoms_of,
    elem_set,
    free_vars,
    par_set,
    subformulas,
    param as mk_param,
)
from .tableau import (
    Branch,
    Closure,
    ProofNode,
    ProofTree,
    RuleApp,
    RuleError,
    apply_rule,
    closure_against,
)


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10_000
    max_depth: int = 200
    max_params: int = 8
    max_cut_candidates: int = 32
    time_limit: float = 30.0

    def __post_init__(self) -> None:
        for name in ("max_nodes", "max_depth", "max_params", "max_cut_candidates"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


@dataclass(frozen=True)
class Proved:
    tree: ProofTree


@dataclass(frozen=True)
class Open:
    branch: tuple[str, ...]
    diagnostics: str


@dataclass(frozen=True)
class Exhausted:
    dimension: str


SearchOutcome = Union[Proved, Open, Exhausted]

_DETERMINISTIC = ("FNeg", "FImp", "FPlus", "FBang", "GenX", "Exp", "TColon", "Ins")


class _ExhaustedError(Exception):
    def __init__(self, dimension: str):
        super().__init__(dimension)
        self.dimension = dimension


class _OpenBranch(Exception):
    def __init__(self, branch: Branch, diagnostics: str):
        super().__init__(diagnostics)
        self.branch = branch
        self.diagnostics = diagnostics


@dataclass
class _BranchState:
    """Per-branch bookkeeping; copied at branch points."""

    formulas: dict[Formula, int]
    branch: Branch
    applied: set
    gamma_used: dict[int, set[str]]
    gamma_fresh_used: set[int]
    gamma_uses: dict[int, int]
    fdot_done: dict[int, set[Formula]]
    param_order: list[str]
    fresh_params: int = 0
    limits_hit: list[str] = field(default_factory=list)

    def fork(self) -> "_BranchState":
        return _BranchState(
            formulas=dict(self.formulas),
            branch=list(self.branch),
            applied=set(self.applied),
            gamma_used={k: set(v) for k, v in self.gamma_used.items()},
            gamma_fresh_used=set(self.gamma_fresh_used),
            gamma_uses=dict(self.gamma_uses),
            fdot_done={k: set(v) for k, v in self.fdot_done.items()},
            param_order=list(self.param_order),
            fresh_params=self.fresh_params,
            limits_hit=list(self.limits_hit),
        )

    def note(self, f: Formula, nid: int) -> None:
        self.formulas.setdefault(f, nid)
        self.branch.append((nid, f))
        for u in sorted(par_set(f)):
            if u not in self.param_order:
                self.param_order.append(u)


class _Search:
    def __init__(
        self,
        goal: Formula,
        cs: ConstantSpecification,
        budget: SearchBudget,
        hints: Sequence[Formula],
    ):
        self.goal = goal
        self.cs = cs
        self.budget = budget
        self.hints = list(hints)
        self.next_id = 1
        self.nodes_created = 0
        self.fresh_param_counter = 0
        self.fresh_var_counter = 0
        self.deadline = time.monotonic() + budget.time_limit
        reserved: set[str] = set()
        for f in [goal, *hints, *(a for _, a in cs.concrete)]:
            reserved |= {a.name for a in atoms_of(f)}
            reserved |= free_vars(f)
        self.reserved_names = reserved

    # -- fresh symbols -----------------------------------------------------

    def fresh_param(self) -> Atom:
        while True:
            name = f"u{self.fresh_param_counter}"
            self.fresh_param_counter += 1
            if name not in self.reserved_names:
                self.reserved_names.add(name)
                return mk_param(name)

    def fresh_var(self) -> str:
        while True:
            name = f"v{self.fresh_var_counter}"
            self.fresh_var_counter += 1
            if name not in self.reserved_names:
                self.reserved_names.add(name)
                return name

    # -- node plumbing -----------------------------------------------------

    def make_node(self, f: Formula, rule: Optional[RuleApp]) -> ProofNode:
        self.nodes_created += 1
        if self.nodes_created > self.budget.max_nodes:
            raise _ExhaustedError("max_nodes")
        node = ProofNode(id=self.next_id, formula=f, rule=rule)
        self.next_id += 1
        return node

    def check_budget(self, state: _BranchState) -> None:
        if time.monotonic() > self.deadline:
            raise _ExhaustedError("time_limit")
        if len(state.branch) > self.budget.max_depth:
            raise _ExhaustedError("max_depth")

    # -- rule selection ----------------------------------------------------

    def _try_rule(
        self, state: _BranchState, rule: RuleApp
    ) -> Optional[list[list[Formula]]]:
        """Conclusions of the instance, or None if inapplicable or
        redundant (all conclusions already on the branch)."""
        try:
            extensions = apply_rule(state.branch, rule)
        except RuleError:
            return None
        if all(f in state.formulas for ext in extensions for f in ext):
            return None
        return extensions

    def _deterministic_instance(self, state: _BranchState) -> Optional[RuleApp]:
        for name in _DETERMINISTIC:
            for nid, f in state.branch:
                key = (name, nid)
                if key in state.applied:
                    continue
                rule = self._shape_rule(name, nid, f, state)
                if rule is None:
                    continue
                if self._try_rule(state, rule) is None:
                    continue
                return rule
        return None

    def _shape_rule(
        self, name: str, nid: int, f: Formula, state: _BranchState
    ) -> Optional[RuleApp]:
        body = f.body if isinstance(f, Neg) else None
        if name == "FNeg":
            if isinstance(body, Neg):
                return RuleApp("FNeg", (nid,))
            return None
        if name == "FImp":
            if isinstance(body, Impl):
                return RuleApp("FImp", (nid,))
            return None
        if name == "FPlus":
            if isinstance(body, Assert) and isinstance(body.term, Sum):
                return RuleApp("FPlus", (nid,))
            return None
        if name == "FBang":
            if isinstance(body, Assert) and isinstance(body.term, Bang):
                return RuleApp("FBang", (nid,))
            return None
        if name == "GenX":
            if isinstance(body, Assert) and isinstance(body.term, Gen):
                return RuleApp("GenX", (nid,))
            return None
        if name == "Exp":
            if isinstance(body, Assert):
                pars = par_set(body.body)
                for w in body.window:
                    if w.kind == PARAM and w.name not in pars:
                        return RuleApp("Exp", (nid,), param=w)
            return None
        if name == "TColon":
            if isinstance(f, Assert):
                return RuleApp("TColon", (nid,))
            return None
        if name == "Ins":
            if isinstance(body, Assert) and par_set(body.body):
                u = sorted(par_set(body.body))[0]
                return RuleApp(
                    "Ins", (nid,), param=mk_param(u), var=self.fresh_var()
                )
            return None
        return None

    def _delta_instance(self, state: _BranchState) -> Optional[RuleApp]:
        for nid, f in state.branch:
            key = ("delta", nid)
            if key in state.applied:
                continue
            name = None
            if isinstance(f, Exists):
                name = "TExists"
            elif isinstance(f, Neg) and isinstance(f.body, Forall):
                name = "FForall"
            if name is None:
                continue
            if state.fresh_params >= self.budget.max_params:
                state.limits_hit.append("max_params")
                continue
            return RuleApp(name, (nid,), param=self.fresh_param())
        return None

    def _timp_instance(self, state: _BranchState) -> Optional[RuleApp]:
        for nid, f in state.branch:
            if not isinstance(f, Impl):
                continue
            if ("TImp", nid) in state.applied:
                continue
            if Neg(f.left) in state.formulas or f.right in state.formulas:
                continue
            return RuleApp("TImp", (nid,))
        return None

    def _gamma_instances(self, state: _BranchState) -> list[tuple[int, int, RuleApp]]:
        """Enabled generative instances as (uses, branch position, rule)."""
        out: list[tuple[int, int, RuleApp]] = []
        for pos, (nid, f) in enumerate(state.branch):
            body = f.body if isinstance(f, Neg) else None
            uses = state.gamma_uses.get(nid, 0)
            if isinstance(f, Forall) or (
                isinstance(body, Exists)
            ):
                name = "TForall" if isinstance(f, Forall) else "FExists"
                rule = self._gamma_param_rule(name, nid, state)
                if rule is not None:
                    out.append((uses, pos, rule))
            elif isinstance(body, Assert):
                if isinstance(body.term, App):
                    rule = self._fdot_rule(nid, body, state)
                    if rule is not None:
                        out.append((uses, pos, rule))
                if all(w.kind == PARAM for w in body.window):
                    rule = self._ctr_rule(nid, body, state)
                    if rule is not None:
                        out.append((uses, pos, rule))
        return out

    def _gamma_param_rule(
        self, name: str, nid: int, state: _BranchState
    ) -> Optional[RuleApp]:
        used = state.gamma_used.setdefault(nid, set())
        if len(used) >= self.budget.max_params:
            state.limits_hit.append("max_params")
            return None
        for p in state.param_order:
            if p in used:
                continue
            rule = RuleApp(name, (nid,), param=mk_param(p))
            if self._try_rule(state, rule) is None:
                used.add(p)
                continue
            return rule
        if nid not in state.gamma_fresh_used:
            if state.fresh_params >= self.budget.max_params:
                state.limits_hit.append("max_params")
                return None
            return RuleApp(name, (nid,), param=self.fresh_param())
        return None

    def _ctr_rule(self, nid: int, a: Assert, state: _BranchState) -> Optional[RuleApp]:
        used = state.gamma_used.setdefault(nid, set())
        if len(used) >= self.budget.max_params:
            state.limits_hit.append("max_params")
            return None
        window = {w.name for w in a.window}
        for p in state.param_order:
            if p in used or p in window:
                continue
            rule = RuleApp("Ctr", (nid,), param=mk_param(p))
            if self._try_rule(state, rule) is None:
                used.add(p)
                continue
            return rule
        return None

    def _fdot_rule(self, nid: int, a: Assert, state: _BranchState) -> Optional[RuleApp]:
        done = state.fdot_done.setdefault(nid, set())
        if len(done) >= self.budget.max_cut_candidates:
            state.limits_hit.append("max_cut_candidates")
            return None
        for cut in self._cut_candidates(a, state):
            if cut in done:
                continue
            rule = RuleApp("FDot", (nid,), cut=cut)
            left = Neg(Assert(a.term.left, a.window, Impl(cut, a.body)))  # type: ignore[union-attr]
            right = Neg(Assert(a.term.right, a.window, cut))  # type: ignore[union-attr]
            if left in state.formulas or right in state.formulas:
                done.add(cut)
                continue
            if self._try_rule(state, rule) is None:
                done.add(cut)
                continue
            return rule
        return None

    def _cut_candidates(self, a: Assert, state: _BranchState) -> list[Formula]:
        window_pars = {w.name for w in a.window}

        def admissible(f: Formula) -> bool:
            return par_set(f) <= window_pars and not elem_set(f)

        out: list[Formula] = []
        seen: set[Formula] = set()

        def push(f: Formula) -> None:
            if f not in seen and admissible(f):
                seen.add(f)
                out.append(f)

        for h in self.hints:
            push(h)
        # Antecedents of implications asserted on the branch whose
        # consequent is the premise's body.
        for _, f in state.branch:
            for sub in subformulas(f):
                if (
                    isinstance(sub, Assert)
                    and isinstance(sub.body, Impl)
                    and sub.body.right == a.body
                ):
                    push(sub.body.left)
        # Antecedents of concrete CS axiom instances.
        for _, entry in self.cs.concrete:
            if isinstance(entry, Impl):
                push(entry.left)
        # Subformulas of branch formulas.
        for _, f in state.branch:
            for sub in subformulas(f):
                push(sub)
        return out[: self.budget.max_cut_candidates]

    def select(self, state: _BranchState) -> Optional[RuleApp]:
        rule = self._deterministic_instance(state)
        if rule is not None:
            return rule
        rule = self._delta_instance(state)
        if rule is not None:
            return rule
        rule = self._timp_instance(state)
        if rule is not None:
            return rule
        gammas = self._gamma_instances(state)
        if gammas:
            gammas.sort(key=lambda g: (g[0], g[1], g[2].name))
            return gammas[0][2]
        return None

    # -- main loop ---------------------------------------------------------

    def close_branch(self, leaf: ProofNode, state: _BranchState) -> None:
        """Extend the branch below ``leaf`` until it closes.

        Raises _OpenBranch on saturation and _ExhaustedError on budget
        exhaustion.
        """
        while True:
            self.check_budget(state)
            rule = self.select(state)
            if rule is None:
                if state.limits_hit:
                    raise _ExhaustedError(state.limits_hit[0])
                raise _OpenBranch(
                    state.branch,
                    "branch saturated without closing; the goal may not be "
                    "provable with the current strategy",
                )
            extensions = apply_rule(state.branch, rule)
            self._mark_applied(state, rule)
            if len(extensions) == 1:
                closed = False
                for f in extensions[0]:
                    node = self.make_node(f, rule)
                    leaf.children.append(node)
                    leaf = node
                    mark = self._note_and_close(state, node)
                    if mark is not None:
                        node.closure = mark
                        closed = True
                        break
                if closed:
                    return
            else:
                children = [self.make_node(ext[0], rule) for ext in extensions]
                leaf.children.extend(children)
                states = [state.fork() for _ in children]
                for child, child_state in zip(children, states):
                    mark = self._note_and_close(child_state, child)
                    if mark is not None:
                        child.closure = mark
                    else:
                        self.close_branch(child, child_state)
                return

    def _mark_applied(self, state: _BranchState, rule: RuleApp) -> None:
        nid = rule.premises[0]
        if rule.name in _DETERMINISTIC:
            state.applied.add((rule.name, nid))
        elif rule.name in ("TExists", "FForall"):
            state.applied.add(("delta", nid))
            state.fresh_params += 1
        elif rule.name == "TImp":
            state.applied.add(("TImp", nid))
        elif rule.name in ("TForall", "FExists", "Ctr"):
            assert rule.param is not None
            used = state.gamma_used.setdefault(nid, set())
            if rule.param.name not in state.param_order:
                state.fresh_params += 1
                state.gamma_fresh_used.add(nid)
            used.add(rule.param.name)
            state.gamma_uses[nid] = state.gamma_uses.get(nid, 0) + 1
        elif rule.name == "FDot":
            assert rule.cut is not None
            state.fdot_done.setdefault(nid, set()).add(rule.cut)
            state.gamma_uses[nid] = state.gamma_uses.get(nid, 0) + 1

    def _note_and_close(
        self, state: _BranchState, node: ProofNode
    ) -> Optional[Closure]:
        mark = closure_against(node.id, node.formula, state.formulas, self.cs)
        state.note(node.formula, node.id)
        return mark

    def run(self) -> SearchOutcome:
        root_formula = Neg(self.goal)
        root = self.make_node(root_formula, None)
        state = _BranchState(
            formulas={},
            branch=[],
            applied=set(),
            gamma_used={},
            gamma_fresh_used=set(),
            gamma_uses={},
            fdot_done={},
            param_order=[],
        )
        mark = self._note_and_close(state, root)
        tree = ProofTree(roots=[root_formula], root=root)
        if mark is not None:
            root.closure = mark
            return Proved(tree)
        try:
            self.close_branch(root, state)
        except _OpenBranch as ob:
            return Open(
                tuple(str(f) for _, f in ob.branch), ob.diagnostics
            )
        except _ExhaustedError as ex:
            return Exhausted(ex.dimension)
        return Proved(tree)


def prove(
    goal: Formula,
    cs: ConstantSpecification,
    budget: Optional[SearchBudget] = None,
    hints: Sequence[Formula] = (),
) -> SearchOutcome:
    """Search for a closed tableau beginning with the negated goal.

    ``proved`` outcomes carry a tree whose root is the negated goal and
    in which every branch closes; ``open`` and ``exhausted`` are
    non-verdicts.
    """
    if free_vars(goal) or par_set(goal) or elem_set(goal):
        raise ValueError(f"goal must be a sentence: {goal}")
    return _Search(goal, cs, budget or SearchBudget(), hints).run()
