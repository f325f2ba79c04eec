"""Shared fixtures: the proved-goal corpus, data paths, and a seeded
random formula generator used for round-trip testing."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from folp import (
    Assert,
    Exists,
    Forall,
    Formula,
    Impl,
    Neg,
    Pred,
    TermConst,
    TermVar,
    App,
    Bang,
    Gen,
    Sum,
    Term,
    elem,
    param,
    var,
)
from folp.fileio import read_cs_file

DATA = Path(__file__).parent / "data"

# Predicate names at fixed arities, shared by the generator and corpus.
_PREDS = {"Q0": 0, "Q1": 0, "Q2": 0, "Q": 1, "R": 1, "S": 2}
_VARS = ("x", "y", "z")
_PARAMS = ("u", "w")
_ELEMS = ("a", "b")
_CONSTS = ("c",)
_PROOF_VARS = ("p", "q", "r")


@pytest.fixture(scope="session")
def corpus_cs():
    return read_cs_file(DATA / "corpus.cs")


@pytest.fixture(scope="session")
def example1_cs():
    return read_cs_file(DATA / "example1.cs")


def model_paths() -> list[Path]:
    return sorted((DATA / "models").glob("*.json"))


# Goals provable under the corpus CS: three instances per axiom scheme
# (windowed schemes as universal closures, which is what makes them
# sentences), the golden goal, and assorted small theorems.
CORPUS_GOALS: tuple[str, ...] = (
    # P1
    "Q0 -> Q1 -> Q0",
    "(Q0 -> Q1) -> Q2 -> Q0 -> Q1",
    "p : Q0 -> Q1 -> p : Q0",
    # P2
    "(Q0 -> Q1 -> Q2) -> (Q0 -> Q1) -> Q0 -> Q2",
    "(Q0 -> Q0 -> Q1) -> (Q0 -> Q0) -> Q0 -> Q1",
    "((Q0 -> Q1) -> Q2 -> Q0) -> ((Q0 -> Q1) -> Q2) -> (Q0 -> Q1) -> Q0",
    # P3
    "(~Q0 -> ~Q1) -> Q1 -> Q0",
    "(~~Q0 -> ~Q1) -> Q1 -> ~Q0",
    "(~(Q0 -> Q1) -> ~Q2) -> Q2 -> Q0 -> Q1",
    # Q1
    "forall x. Q0 -> Q0",
    "forall y. (forall x. Q(x) -> Q(y))",
    "forall y. (forall x. (Q(x) -> Q0) -> Q(y) -> Q0)",
    # Q2
    "forall x. (Q(x) -> R(x)) -> forall x. Q(x) -> forall x. R(x)",
    "forall x. (Q(x) -> Q(x)) -> forall x. Q(x) -> forall x. Q(x)",
    "forall z. (Q(z) -> Q0) -> forall z. Q(z) -> forall z. Q0",
    # Q3
    "Q0 -> forall x. Q0",
    "p : Q1 -> forall y. p : Q1",
    "(Q0 -> Q1) -> forall z. (Q0 -> Q1)",
    # Q4
    "Q0 -> exists x. Q0",
    "forall y. (Q(y) -> exists x. Q(x))",
    "forall x. (Q(x) -> Q0) -> exists x. Q(x) -> Q0",
    # CTR
    "forall y. (p :[y] Q0 -> p : Q0)",
    "forall x. forall y. (p :[x, y] Q(x) -> p :[x] Q(x))",
    "forall y. (q :[y] Q1 -> q : Q1)",
    # EXP
    "forall y. (p : Q0 -> p :[y] Q0)",
    "forall x. forall y. (p :[x] Q(x) -> p :[x, y] Q(x))",
    "forall y. (q : Q1 -> q :[y] Q1)",
    # SUM1
    "p : Q0 -> (p + q) : Q0",
    "forall y. (p :[y] Q(y) -> (p + q) :[y] Q(y))",
    "p : (Q0 -> Q1) -> (p + q) : (Q0 -> Q1)",
    # SUM2
    "q : Q0 -> (p + q) : Q0",
    "forall y. (q :[y] Q(y) -> (p + q) :[y] Q(y))",
    "q : (Q0 -> Q1) -> (p + q) : (Q0 -> Q1)",
    # JK
    "p : (Q0 -> Q1) -> q : Q0 -> (p * q) : Q1",
    "forall x. (p :[x] (Q(x) -> R(x)) -> q :[x] Q(x) -> (p * q) :[x] R(x))",
    "p : (Q0 -> Q0) -> q : Q0 -> (p * q) : Q0",
    # JT
    "p : Q0 -> Q0",
    "forall x. (p :[x] Q(x) -> Q(x))",
    "q : (Q0 -> Q1) -> Q0 -> Q1",
    # J4
    "p : Q0 -> !p : p : Q0",
    "forall x. (p :[x] Q(x) -> !p :[x] p :[x] Q(x))",
    "q : Q1 -> !q : q : Q1",
    # GEN
    "p : Q0 -> gen<x>(p) : forall x. Q0",
    "forall y. (p :[y] Q(y) -> gen<x>(p) :[y] forall x. Q(y))",
    "q : Q1 -> gen<z>(q) : forall z. Q1",
    # golden goal
    "p : forall x. A(x) -> forall x. (c * p) :[x] A(x)",
    # assorted small theorems
    "Q0 -> Q0",
    "~~Q0 -> Q0",
    "Q0 -> ~~Q0",
    "forall x. Q(x) -> forall y. Q(y)",
    "exists x. Q0 -> Q0",
    "p : Q0 -> (q + p) : Q0",
    "(p + q) : Q0 -> Q0",
    "!p : p : Q0 -> p : Q0",
    "c : (forall x. A(x) -> A(x))",
)

# One representative per scheme, in matcher order, used by scheme-level
# provability tests.
SCHEME_GOALS: dict[str, tuple[str, str, str]] = {
    "P1": CORPUS_GOALS[0:3],
    "P2": CORPUS_GOALS[3:6],
    "P3": CORPUS_GOALS[6:9],
    "Q1": CORPUS_GOALS[9:12],
    "Q2": CORPUS_GOALS[12:15],
    "Q3": CORPUS_GOALS[15:18],
    "Q4": CORPUS_GOALS[18:21],
    "CTR": CORPUS_GOALS[21:24],
    "EXP": CORPUS_GOALS[24:27],
    "SUM1": CORPUS_GOALS[27:30],
    "SUM2": CORPUS_GOALS[30:33],
    "JK": CORPUS_GOALS[33:36],
    "JT": CORPUS_GOALS[36:39],
    "J4": CORPUS_GOALS[39:42],
    "GEN": CORPUS_GOALS[42:45],
}


def random_term(rng: random.Random, depth: int) -> Term:
    if depth <= 0 or rng.random() < 0.4:
        if rng.random() < 0.2:
            return TermConst(rng.choice(_CONSTS))
        return TermVar(rng.choice(_PROOF_VARS))
    kind = rng.randrange(4)
    if kind == 0:
        return Sum(random_term(rng, depth - 1), random_term(rng, depth - 1))
    if kind == 1:
        return App(random_term(rng, depth - 1), random_term(rng, depth - 1))
    if kind == 2:
        return Bang(random_term(rng, depth - 1))
    return Gen(rng.choice(_VARS), random_term(rng, depth - 1))


def random_formula(rng: random.Random, depth: int = 4) -> Formula:
    if depth <= 0 or rng.random() < 0.25:
        name = rng.choice(list(_PREDS))
        args = tuple(
            rng.choice(
                [var(rng.choice(_VARS)), param(rng.choice(_PARAMS)),
                 elem(rng.choice(_ELEMS))]
            )
            for _ in range(_PREDS[name])
        )
        return Pred(name, args)
    kind = rng.randrange(5)
    if kind == 0:
        return Neg(random_formula(rng, depth - 1))
    if kind == 1:
        return Impl(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 2:
        cls = Forall if rng.random() < 0.5 else Exists
        return cls(rng.choice(_VARS), random_formula(rng, depth - 1))
    if kind == 3:
        window = []
        for _ in range(rng.randrange(3)):
            window.append(
                rng.choice(
                    [var(rng.choice(_VARS)), param(rng.choice(_PARAMS)),
                     elem(rng.choice(_ELEMS))]
                )
            )
        return Assert(
            random_term(rng, depth - 1), tuple(window), random_formula(rng, depth - 1)
        )
    return Impl(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
