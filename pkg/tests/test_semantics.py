"""Finite-model evaluation and countermodel search."""

from __future__ import annotations

import random

import pytest

from nadeum.semantics import (
    BudgetExceeded,
    Countermodel,
    Interpretation,
    MissingDenotation,
    UnboundVariable,
    enumerate_interpretations,
    eval_formula,
    find_countermodel,
    interpretation_count,
    universal_closure,
)
from nadeum.syntax import (
    FALSITY,
    Dis,
    Fun,
    Imp,
    Pre,
    Uni,
    Var,
    parse_formula,
    put_unis,
    signature,
)

from test_syntax import random_formula


def test_eval_trivial_implication():
    interp = Interpretation(1)
    assert eval_formula(Imp(FALSITY, FALSITY), interp) is True


def test_eval_false_disjunction():
    interp = Interpretation(
        1, preds={("A", 0): {(): False}, ("B", 0): {(): False}}
    )
    assert eval_formula(Dis(Pre("A"), Pre("B")), interp) is False


def test_eval_drinker_valid_up_to_size_3():
    drinker = parse_formula("exi x. (A(x) -> uni x. A(x))")
    sig = signature([drinker])
    for size in (1, 2, 3):
        for interp in enumerate_interpretations(sig, size):
            assert eval_formula(drinker, interp) is True


def test_eval_missing_denotation():
    with pytest.raises(MissingDenotation):
        eval_formula(Pre("A"), Interpretation(1))
    with pytest.raises(MissingDenotation):
        eval_formula(
            Pre("A", (Fun("c"),)), Interpretation(1, preds={("A", 1): {(0,): True}})
        )


def test_eval_unbound_variable():
    with pytest.raises(UnboundVariable):
        eval_formula(Pre("A", (Var(0),)), Interpretation(2, preds={("A", 1): {(0,): True, (1,): False}}))


def test_enumeration_counts():
    assert len(list(enumerate_interpretations({("A", 0, "pred")}, 1))) == 2
    both = {("r", 1, "pred"), ("f", 1, "fun")}
    assert len(list(enumerate_interpretations(both, 2))) == 16
    assert len(list(enumerate_interpretations(set(), 3))) == 1


def test_enumeration_deterministic():
    sig = {("r", 1, "pred"), ("c", 0, "fun")}
    first = [
        (interp.funs[("c", 0)][()], tuple(sorted(interp.preds[("r", 1)].items())))
        for interp in enumerate_interpretations(sig, 2)
    ]
    second = [
        (interp.funs[("c", 0)][()], tuple(sorted(interp.preds[("r", 1)].items())))
        for interp in enumerate_interpretations(sig, 2)
    ]
    assert first == second
    assert len(first) == len(set(first)) == 8


def test_enumeration_budget():
    sig = {("q", 2, "pred"), ("p", 2, "pred"), ("f", 2, "fun")}
    assert interpretation_count(sorted(sig), 3) > 2_000_000
    with pytest.raises(BudgetExceeded):
        list(enumerate_interpretations(sig, 3))


def test_countermodel_disjunction():
    result = find_countermodel(parse_formula("A \\/ B"), 3)
    assert isinstance(result, Countermodel)
    assert result.interpretation.universe_size == 1
    assert result.interpretation.preds[("A", 0)][()] is False
    assert result.interpretation.preds[("B", 0)][()] is False


def test_countermodel_none_for_valid_assignments():
    assert find_countermodel(parse_formula("A \\/ (A -> False)"), 3) is None
    assert find_countermodel(parse_formula("(A -> B) \\/ (B -> C)"), 3) is None


def test_countermodel_closes_open_formulas():
    # A(x) with a free variable: closed universally, refuted at size 1
    open_formula = Pre("A", (Var(0),))
    assert universal_closure(open_formula) == Uni(Pre("A", (Var(0),)))
    result = find_countermodel(open_formula, 2)
    assert result is not None
    assert result.falsified == Uni(Pre("A", (Var(0),)))


def test_countermodel_json_report():
    result = find_countermodel(parse_formula("r(c)"), 2)
    assert result is not None
    report = result.to_json()
    assert report["universe_size"] == 1
    assert report["predicates"]["r/1"] == {"0": False}
    assert report["functions"]["c/0"] == {"": 0}
    assert report["falsified"] == "r(c)"


def test_double_negation_matches_plain_eval():
    rng = random.Random(13)
    for _ in range(60):
        p = random_formula(rng, rng.randint(0, 4))
        sig = signature([p])
        for interp in enumerate_interpretations(sig, 2, budget=100_000):
            wrapped = Imp(Imp(p, FALSITY), FALSITY)
            assert eval_formula(wrapped, interp) == eval_formula(p, interp)


def test_put_unis_semantically_invariant_on_sentences():
    rng = random.Random(17)
    for _ in range(40):
        sentence = random_formula(rng, rng.randint(0, 3))
        sig = signature([sentence])
        for k in (1, 2, 3):
            wrapped = put_unis(k, sentence)
            for size in (1, 2):
                for interp in enumerate_interpretations(sig, size, budget=100_000):
                    assert eval_formula(wrapped, interp) == eval_formula(sentence, interp)
