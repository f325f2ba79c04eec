"""Text format: precedence, error reporting, and print/parse round trips."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from folp import (
    Assert,
    Forall,
    Impl,
    Neg,
    ParseError,
    parse_formula,
    parse_term,
    print_formula,
    print_term,
)
from conftest import random_formula


def f(text: str):
    return parse_formula(text, {"c"})


class TestPrecedence:
    def test_implication_right_assoc(self):
        assert f("Q0 -> Q1 -> Q2") == f("Q0 -> (Q1 -> Q2)")

    def test_colon_binds_unary(self):
        g = f("p :[x] Q(x) -> Q0")
        assert isinstance(g, Impl)
        assert isinstance(g.left, Assert)

    def test_neg_binds_assertion(self):
        g = f("~p : Q0")
        assert isinstance(g, Neg)
        assert isinstance(g.body, Assert)

    def test_quantifier_body_is_unary(self):
        g = f("forall x. Q(x) -> Q0")
        assert isinstance(g, Impl)
        assert isinstance(g.left, Forall)

    def test_quantified_assertion_body(self):
        g = f("p : forall x. A(x)")
        assert isinstance(g, Assert)
        assert isinstance(g.body, Forall)

    def test_term_operators(self):
        assert parse_term("p + q * r") != parse_term("(p + q) * r")
        assert parse_term("!p + q") == parse_term("(!p) + q")
        assert print_term(parse_term("p * q * r")) == "p*q*r"

    def test_constants_vs_variables(self):
        t = parse_term("c * p", {"c"})
        s = parse_term("c * p")
        assert t != s  # declared c is a constant, undeclared c a variable


class TestErrors:
    @pytest.mark.parametrize(
        "text",
        [
            "",
            "Q0 ->",
            "forall @u. Q0",
            "forall $a. Q0",
            "forall forall. Q0",
            "p :",
            "p :[x Q0",
            "Q0)",
            "Q(x) -> Q(x, y)",  # inconsistent arity
            "(p : Q0",
        ],
    )
    def test_rejected(self, text):
        with pytest.raises(ParseError):
            parse_formula(text)

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as exc:
            parse_formula("Q0 -> ->")
        assert exc.value.line == 1
        assert exc.value.col > 1


class TestRoundTrip:
    def test_seeded_corpus(self):
        rng = random.Random(20260823)
        for _ in range(300):
            g = random_formula(rng)
            text = print_formula(g)
            assert parse_formula(text, {"c"}) == g, text

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_property(self, seed):
        g = random_formula(random.Random(seed))
        assert parse_formula(print_formula(g), {"c"}) == g

    def test_windows_round_trip(self):
        for text in ["p :[x, y] Q0", "p :[@u] Q(@u)", "p :[$a, x] Q(x)"]:
            g = f(text)
            assert parse_formula(print_formula(g), {"c"}) == g
