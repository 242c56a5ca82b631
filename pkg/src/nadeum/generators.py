"""Random generation of theorems, proof scripts, and session histories.

The theorem generator composes rule instances bottom-up: every composition
step checks its own side conditions, so the emitted (conclusion, script)
pairs replay against the kernel by construction.  Witness constants picked
for Exi_E/Uni_E/Uni_I detours come from a dedicated ``g<n>`` namespace that
never occurs in pool formulas or conclusions, which keeps freshness checks
immune to the assumption weakening used by the wrapper constructions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .kernel import (
    Apply,
    ProofScript,
    RuleApplication,
    RuleError,
    SessionHistory,
    apply_rule,
    history_undo,
    project,
)
from .prover import SearchConfig, _candidates, _closed_subformulas, _count_occurrences, abstract_term
from .syntax import (
    Con,
    Dis,
    Exi,
    Formula,
    Fun,
    Imp,
    Pre,
    Term,
    Uni,
    lift_formula,
    parse_formula,
)

_POOL_TERMS: tuple[Term, ...] = (
    Fun("c"),
    Fun("d"),
    Fun("f", (Fun("c"),)),
)


def _pool_atoms() -> list[Formula]:
    atoms: list[Formula] = [Pre("A"), Pre("B")]
    atoms.extend(Pre("r", (t,)) for t in _POOL_TERMS)
    return atoms


def random_pool_formula(rng: random.Random, depth: int = 2) -> Formula:
    """Small closed formula over a fixed signature (no g-constants)."""
    if depth <= 0 or rng.random() < 0.4:
        return rng.choice(_pool_atoms())
    kind = rng.randrange(4)
    a = random_pool_formula(rng, depth - 1)
    b = random_pool_formula(rng, depth - 1)
    if kind == 0:
        return Imp(a, b)
    if kind == 1:
        return Con(a, b)
    if kind == 2:
        return Dis(a, b)
    return Imp(a, Imp(b, a))


@dataclass
class _Gen:
    rng: random.Random
    counter: int = 0

    def gensym(self) -> str:
        self.counter += 1
        return f"g{self.counter}"


def _derive(
    gen: _Gen, z: tuple[Formula, ...], depth: int
) -> tuple[Formula, list[RuleApplication]]:
    """A conclusion provable from z together with its backward script.

    The script solves the goal (z |- conclusion) in the front-first goal
    discipline; conclusions never contain g-constants, so enclosing wrapper
    steps may extend z without breaking any recorded freshness choice.
    """
    rng = gen.rng
    if depth <= 0:
        if z and rng.random() < 0.6:
            pick = rng.choice(z)
            return pick, [RuleApplication("Assume")]
        p = random_pool_formula(rng, 1)
        return Imp(p, p), [RuleApplication("Imp_I"), RuleApplication("Assume")]

    kind = rng.choice(
        (
            "imp_i",
            "con_i",
            "dis_i1",
            "dis_i2",
            "exi_i",
            "uni_i",
            "uni_e",
            "exi_e",
            "imp_e",
            "dis_e",
            "con_e1",
            "con_e2",
            "boole",
            "leaf",
        )
    )
    if kind == "leaf":
        return _derive(gen, z, 0)
    if kind == "imp_i":
        p = random_pool_formula(rng)
        q, steps = _derive(gen, (p,) + z, depth - 1)
        return Imp(p, q), [RuleApplication("Imp_I")] + steps
    if kind == "con_i":
        p, s1 = _derive(gen, z, depth - 1)
        q, s2 = _derive(gen, z, depth - 1)
        return Con(p, q), [RuleApplication("Con_I")] + s1 + s2
    if kind == "dis_i1":
        p, steps = _derive(gen, z, depth - 1)
        return Dis(p, random_pool_formula(rng)), [RuleApplication("Dis_I1")] + steps
    if kind == "dis_i2":
        q, steps = _derive(gen, z, depth - 1)
        return Dis(random_pool_formula(rng), q), [RuleApplication("Dis_I2")] + steps
    if kind == "exi_i":
        psi, steps = _derive(gen, z, depth - 1)
        witness = gen.rng.choice(_POOL_TERMS)
        occurrences = _count_occurrences(psi, witness)
        if occurrences and rng.random() < 0.7:
            mask = rng.randrange(1, 1 << min(occurrences, 8))
        else:
            mask = 0  # vacuous body: the quantifier binds nothing
        body = abstract_term(psi, witness, mask)
        return Exi(body), [RuleApplication("Exi_I", witness=witness)] + steps
    if kind == "uni_i":
        psi, steps = _derive(gen, z, depth - 1)
        body = lift_formula(psi)
        return Uni(body), [RuleApplication("Uni_I", fresh=gen.gensym())] + steps
    if kind == "uni_e":
        # detour: prove psi as the instance of a vacuous universal
        psi, steps = _derive(gen, z, depth - 1)
        body = lift_formula(psi)
        witness = rng.choice(_POOL_TERMS)
        return psi, [
            RuleApplication("Uni_E", body=body, witness=witness),
            RuleApplication("Uni_I", fresh=gen.gensym()),
        ] + steps
    if kind == "exi_e":
        # detour: conclude psi from an existential whose instance is psi
        psi, steps = _derive(gen, z, depth - 1)
        body = lift_formula(psi)
        witness = rng.choice(_POOL_TERMS)
        return psi, (
            [RuleApplication("Exi_E", body=body, fresh=gen.gensym())]
            + [RuleApplication("Exi_I", witness=witness)]
            + steps
            + [RuleApplication("Assume")]
        )
    if kind == "imp_e":
        cut, s_minor = _derive(gen, z, depth - 1)
        q, s_body = _derive(gen, (cut,) + z, depth - 1)
        return q, (
            [RuleApplication("Imp_E", cut=cut), RuleApplication("Imp_I")]
            + s_body
            + s_minor
        )
    if kind == "dis_e":
        psi, s_goal = _derive(gen, z, depth - 1)
        left, s_left = _derive(gen, z, depth - 1)
        right = random_pool_formula(rng)
        return psi, (
            [RuleApplication("Dis_E", left=left, right=right)]
            + [RuleApplication("Dis_I1")]
            + s_left
            + s_goal
            + s_goal
        )
    if kind == "con_e1":
        psi, s1 = _derive(gen, z, depth - 1)
        mate, s2 = _derive(gen, z, depth - 1)
        return psi, (
            [RuleApplication("Con_E1", other=mate), RuleApplication("Con_I")] + s1 + s2
        )
    if kind == "con_e2":
        psi, s1 = _derive(gen, z, depth - 1)
        mate, s2 = _derive(gen, z, depth - 1)
        return psi, (
            [RuleApplication("Con_E2", other=mate), RuleApplication("Con_I")] + s2 + s1
        )
    if kind == "boole":
        psi, steps = _derive(gen, z, depth - 1)
        return psi, (
            [
                RuleApplication("Boole"),
                RuleApplication("Imp_E", cut=psi),
                RuleApplication("Assume"),
            ]
            + steps
        )
    raise AssertionError(kind)


def random_theorem(rng: random.Random, depth: int = 5) -> ProofScript:
    """A random theorem with its script; replays Complete by construction."""
    conclusion, steps = _derive(_Gen(rng), (), rng.randint(1, depth))
    return ProofScript(conclusion, tuple(steps))


# ---------------------------------------------------------------------------
# Random session histories

_HISTORY_ROOTS = (
    "False -> False",
    "A -> B -> A",
    "A /\\ (A -> B) -> B",
    "uni x. A(x) -> A(c)",
    "A(c) -> exi x. A(x)",
    "(A -> B) -> A -> B",
    "A \\/ (A -> False)",
    "exi x. (A(x) -> uni x. A(x))",
    "((A -> False) \\/ (B -> False)) -> (A /\\ B) -> False",
)


def random_history(rng: random.Random, max_events: int = 30) -> SessionHistory:
    """A well-formed apply/undo event log over a random root formula."""
    root = parse_formula(rng.choice(_HISTORY_ROOTS))
    history = SessionHistory(root)
    state = project(history)
    cfg = SearchConfig(max_depth=2, time_budget_ms=60_000)
    net = 0
    for _ in range(rng.randint(0, max_events)):
        do_apply = state.open_goals and (net == 0 or rng.random() < 0.65)
        if do_apply:
            goal = state.open_goals[0]
            options = _candidates(goal, cfg, _closed_subformulas(goal))
            rng.shuffle(options)
            for app in options:
                try:
                    state = apply_rule(state, app)
                except RuleError:
                    continue
                history = SessionHistory(root, history.events + (Apply(app),))
                net += 1
                break
        elif net > 0:
            history = history_undo(history)
            state = project(history)
            net -= 1
    return history
