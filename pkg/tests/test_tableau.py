"""Rule application and branch closure."""

import pytest

from folp import (
    ConstantSpecification,
    RuleApp,
    RuleError,
    apply_rule,
    branch_closed,
    Contradiction,
    CsClosure,
    parse_formula,
    param,
)


def f(text: str):
    return parse_formula(text, {"c"})


def branch(*texts: str):
    return [(i + 1, f(t)) for i, t in enumerate(texts)]


class TestPropositionalRules:
    def test_fneg(self):
        assert apply_rule(branch("~~Q0"), RuleApp("FNeg", (1,))) == [[f("Q0")]]

    def test_timp_branches(self):
        assert apply_rule(branch("Q0 -> Q1"), RuleApp("TImp", (1,))) == [
            [f("~Q0")],
            [f("Q1")],
        ]

    def test_fimp(self):
        assert apply_rule(branch("~(Q0 -> Q1)"), RuleApp("FImp", (1,))) == [
            [f("Q0"), f("~Q1")]
        ]

    def test_shape_errors(self):
        with pytest.raises(RuleError) as exc:
            apply_rule(branch("Q0"), RuleApp("FNeg", (1,)))
        assert exc.value.condition == "premise-shape"
        with pytest.raises(RuleError) as exc:
            apply_rule(branch("Q0"), RuleApp("FNeg", (2,)))
        assert exc.value.condition == "premise-missing"


class TestQuantifierRules:
    def test_tforall_any_param(self):
        out = apply_rule(branch("forall x. Q(x)"), RuleApp("TForall", (1,), param=param("u")))
        assert out == [[f("Q(@u)")]]

    def test_fexists(self):
        out = apply_rule(branch("~exists x. Q(x)"), RuleApp("FExists", (1,), param=param("u")))
        assert out == [[f("~Q(@u)")]]

    def test_texists_requires_freshness(self):
        b = branch("exists x. Q(x)", "R(@u, @u)")
        with pytest.raises(RuleError) as exc:
            apply_rule(b, RuleApp("TExists", (1,), param=param("u")))
        assert exc.value.condition == "freshness"
        assert apply_rule(b, RuleApp("TExists", (1,), param=param("w"))) == [[f("Q(@w)")]]

    def test_fforall_requires_freshness(self):
        b = branch("~forall x. Q(x)", "Q(@u)")
        with pytest.raises(RuleError) as exc:
            apply_rule(b, RuleApp("FForall", (1,), param=param("u")))
        assert exc.value.condition == "freshness"

    def test_param_required(self):
        with pytest.raises(RuleError) as exc:
            apply_rule(branch("forall x. Q(x)"), RuleApp("TForall", (1,)))
        assert exc.value.condition == "param-missing"


class TestJustificationRules:
    def test_tcolon_universal_closure(self):
        out = apply_rule(branch("p :[@u] R(@u, x)"), RuleApp("TColon", (1,)))
        assert out == [[f("forall x. R(@u, x)")]]

    def test_tcolon_window_must_be_params(self):
        with pytest.raises(RuleError) as exc:
            apply_rule(branch("p :[x] Q(x)"), RuleApp("TColon", (1,)))
        assert exc.value.condition == "window-not-par"

    def test_fplus(self):
        out = apply_rule(branch("~(p + q) : Q0"), RuleApp("FPlus", (1,)))
        assert out == [[f("~p : Q0"), f("~q : Q0")]]

    def test_fdot(self):
        out = apply_rule(
            branch("~(p * q) :[@u] R(@u, @u)"),
            RuleApp("FDot", (1,), cut=f("Q(@u)")),
        )
        assert out == [
            [f("~p :[@u] (Q(@u) -> R(@u, @u))")],
            [f("~q :[@u] Q(@u)")],
        ]

    def test_fdot_cut_conditions(self):
        b = branch("~(p * q) : Q0")
        with pytest.raises(RuleError) as exc:
            apply_rule(b, RuleApp("FDot", (1,)))
        assert exc.value.condition == "cut-missing"
        with pytest.raises(RuleError) as exc:
            apply_rule(b, RuleApp("FDot", (1,), cut=f("Q(@u)")))
        assert exc.value.condition == "par-subset"
        with pytest.raises(RuleError) as exc:
            apply_rule(b, RuleApp("FDot", (1,), cut=f("Q($a)")))
        assert exc.value.condition == "cut-elems"

    def test_fbang(self):
        out = apply_rule(branch("~!p : p : Q0"), RuleApp("FBang", (1,)))
        assert out == [[f("~p : Q0")]]
        with pytest.raises(RuleError) as exc:
            apply_rule(branch("~!p : q : Q0"), RuleApp("FBang", (1,)))
        assert exc.value.condition == "premise-shape"

    def test_ctr(self):
        out = apply_rule(branch("~p : Q0"), RuleApp("Ctr", (1,), param=param("u")))
        assert out == [[f("~p :[@u] Q0")]]
        with pytest.raises(RuleError) as exc:
            apply_rule(
                branch("~p :[@u] Q0"), RuleApp("Ctr", (1,), param=param("u"))
            )
        assert exc.value.condition == "ctr-param-in-window"

    def test_exp(self):
        out = apply_rule(branch("~p :[@u] Q0"), RuleApp("Exp", (1,), param=param("u")))
        assert out == [[f("~p : Q0")]]
        with pytest.raises(RuleError) as exc:
            apply_rule(branch("~p : Q0"), RuleApp("Exp", (1,), param=param("u")))
        assert exc.value.condition == "exp-param-not-in-window"
        with pytest.raises(RuleError) as exc:
            apply_rule(
                branch("~p :[@u] Q(@u)"), RuleApp("Exp", (1,), param=param("u"))
            )
        assert exc.value.condition == "exp-side-condition"

    def test_ins_replaces_all_body_occurrences(self):
        out = apply_rule(
            branch("~p :[@u] R(@u, @u)"),
            RuleApp("Ins", (1,), param=param("u"), var="v"),
        )
        # The window keeps the parameter; only the body is instantiated.
        assert out == [[f("~p :[@u] R(v, v)")]]

    def test_ins_conditions(self):
        with pytest.raises(RuleError) as exc:
            apply_rule(
                branch("~p :[@u] Q0"), RuleApp("Ins", (1,), param=param("u"), var="v")
            )
        assert exc.value.condition == "ins-no-param"
        with pytest.raises(RuleError) as exc:
            apply_rule(
                branch("~p : forall y. R(y, @u)"),
                RuleApp("Ins", (1,), param=param("u"), var="y"),
            )
        assert exc.value.condition == "ins-capture"

    def test_genx(self):
        out = apply_rule(branch("~gen<x>(p) : forall x. Q(x)"), RuleApp("GenX", (1,)))
        assert out == [[f("~p : Q(x)")]]
        with pytest.raises(RuleError) as exc:
            apply_rule(branch("~gen<y>(p) : forall x. Q(x)"), RuleApp("GenX", (1,)))
        assert exc.value.condition == "premise-shape"


class TestClosure:
    def test_contradiction(self):
        mark = branch_closed(branch("Q0", "~Q0"), ConstantSpecification())
        assert mark == Contradiction(node_id=2, with_id=1)
        assert branch_closed(branch("Q0", "~Q1"), ConstantSpecification()) is None

    def test_cs_closure(self):
        cs = ConstantSpecification(constants=frozenset({"c"}), total=True)
        mark = branch_closed(branch("~c : (Q0 -> Q1 -> Q0)"), cs)
        assert mark == CsClosure(node_id=1, constant="c")
        # Not an axiom instance: no closure.
        assert branch_closed(branch("~c : (Q0 -> Q1)"), cs) is None
        # Non-empty windows never close against the CS.
        assert branch_closed(branch("~c :[@u] (Q0 -> Q1 -> Q0)"), cs) is None
