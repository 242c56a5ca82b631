"""Bounded backward search: feedback kinds, honesty, determinism."""

from __future__ import annotations

import pytest

from nadeum.exercises import load_corpus
from nadeum.kernel import Complete, Goal, apply_rule, initial_state, replay, RuleApplication
from nadeum.prover import (
    Provable,
    Refuted,
    SearchConfig,
    Unknown,
    goal_as_formula,
    hint,
    prove,
)
from nadeum.syntax import FALSITY, Imp, Pre, parse_formula

A = Pre("A")

TESTS_1_TO_8 = [
    "False -> False",
    "(A -> B) -> A -> B",
    "A /\\ (A -> B) -> B",
    "uni x. A(x) -> A(c)",
    "A -> B -> A",
    "A -> (A -> False) -> False",
    "(A /\\ B) -> C -> (A /\\ C)",
    "uni x. uni y. A(x, y) -> uni x. A(x, x)",
]

HINTS_1_TO_8 = [
    "False -> A",
    "A -> (A -> B) -> B",
    "A(c) /\\ (A(c) -> uni x. A(x)) -> uni x. A(x)",
    "A(c) -> exi x. A(x)",
    "(A -> B -> C) -> (A -> B) -> A -> C",
    "((A -> False) -> False) -> A",
    "((A -> False) \\/ (B -> False)) -> (A /\\ B) -> False",
    "uni x. A(x) -> exi x. A(x)",
]


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(max_depth=0)
    with pytest.raises(ValueError):
        SearchConfig(countermodel_max_universe=0)


@pytest.mark.parametrize("surface", TESTS_1_TO_8 + HINTS_1_TO_8)
def test_corpus_formulas_provable_within_defaults(surface):
    feedback = prove(Goal((), parse_formula(surface)))
    assert isinstance(feedback, Provable)
    assert isinstance(replay(feedback.script), Complete)


def test_drinker_provable_within_defaults():
    feedback = prove(Goal((), parse_formula("exi x. (A(x) -> uni x. A(x))")))
    assert isinstance(feedback, Provable)


def test_excluded_middle_classical_only():
    goal = Goal((), parse_formula("A \\/ (A -> False)"))
    classical = prove(goal, SearchConfig(time_budget_ms=30_000))
    assert isinstance(classical, Provable)
    constructive = prove(goal, SearchConfig(classical=False, time_budget_ms=30_000))
    assert isinstance(constructive, Unknown)


def test_atomic_goal_refuted():
    feedback = prove(Goal((), A))
    assert isinstance(feedback, Refuted)
    assert feedback.countermodel.interpretation.universe_size == 1


def test_goal_with_assumptions_proved_via_chain():
    goal = Goal((Imp(A, FALSITY), A), FALSITY)
    assert goal_as_formula(goal) == Imp(A, Imp(Imp(A, FALSITY), FALSITY))
    feedback = prove(goal)
    assert isinstance(feedback, Provable)
    verdict = replay(feedback.script)
    assert isinstance(verdict, Complete)


def test_refutation_accounts_for_assumptions():
    # A alone is refutable, but A under assumption A is provable
    feedback = prove(Goal((A,), A))
    assert isinstance(feedback, Provable)


def test_hint_per_goal():
    state = initial_state(parse_formula("A -> A"))
    state = apply_rule(state, RuleApplication("Imp_I"))
    feedback = hint(state)
    assert len(feedback) == 1
    assert isinstance(feedback[0], Provable)

    state = apply_rule(state, RuleApplication("Assume"))
    assert hint(state) == []

    falsity_state = initial_state(FALSITY)
    fb = hint(falsity_state)
    assert isinstance(fb[0], Refuted)


def test_provable_script_matches_queried_goal():
    goal = Goal((A,), A)
    feedback = prove(goal)
    assert isinstance(feedback, Provable)
    # replaying the Imp_I prefix reconstructs exactly the queried goal
    state = initial_state(feedback.script.root)
    for step in feedback.script.steps[: len(goal.assumptions)]:
        state = apply_rule(state, step)
    assert state.open_goals[0] == goal


def test_no_contradiction_across_configs():
    for surface in ("A \\/ B", "A -> A", "exi x. A(x)", "A \\/ (A -> False)"):
        goal = Goal((), parse_formula(surface))
        kinds = set()
        for cfg in (
            SearchConfig(),
            SearchConfig(max_depth=4),
            SearchConfig(classical=False),
        ):
            kinds.add(type(prove(goal, cfg)).__name__)
        assert not ({"Provable", "Refuted"} <= kinds), surface


def test_determinism_with_depth_only_limits():
    goal = Goal((), parse_formula("((A -> False) \\/ (B -> False)) -> (A /\\ B) -> False"))
    cfg = SearchConfig(time_budget_ms=600_000)
    first = prove(goal, cfg)
    second = prove(goal, cfg)
    assert isinstance(first, Provable) and isinstance(second, Provable)
    assert first.script == second.script


def test_unknown_on_tiny_depth():
    goal = Goal((), parse_formula("(A -> B -> C) -> (A -> B) -> A -> C"))
    feedback = prove(goal, SearchConfig(max_depth=2))
    assert isinstance(feedback, Unknown)


def test_corpus_bundled_solutions_match_prover_claims():
    # the prover must never refute a formula whose bundled script replays
    for exercise in load_corpus():
        if exercise.solution is None:
            continue
        feedback = prove(Goal((), exercise.formula), SearchConfig(max_depth=4, time_budget_ms=2000))
        assert not isinstance(feedback, Refuted), exercise.id
