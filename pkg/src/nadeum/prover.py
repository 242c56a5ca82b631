"""Bounded backward proof search with an interleaved countermodel check.

The search applies kernel rules to one goal at a time, synthesising the
parameters of non-analytic rules: cut formulas come from the closed
subformulas of the sequent, witness terms from its ground subterms (plus a
fresh constant and shallow function applications), and universal bodies
from abstracting witness occurrences out of the conclusion.  Found scripts
are re-checked by kernel replay before being reported, so the search itself
is untrusted.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator

from .kernel import (
    Goal,
    ProofScript,
    ProofState,
    Complete,
    RuleApplication,
    RuleError,
    replay,
    rule_premises,
)
from .semantics import BudgetExceeded, Countermodel, find_countermodel
from .syntax import (
    FALSITY,
    Con,
    Dis,
    Exi,
    Formula,
    Fun,
    Imp,
    Pre,
    Term,
    Uni,
    Var,
    free_var_bound,
    fresh_constant,
    is_ground,
    sub,
    subformulas,
    subterms,
    term_depth,
)


@dataclass(frozen=True)
class SearchConfig:
    max_depth: int = 12
    max_term_depth: int = 2
    classical: bool = True
    time_budget_ms: int = 5000
    countermodel_max_universe: int = 3

    def __post_init__(self) -> None:
        if min(self.max_depth, self.max_term_depth, self.time_budget_ms,
               self.countermodel_max_universe) < 1:
            raise ValueError("all search bounds must be at least 1")


@dataclass(frozen=True)
class Provable:
    script: ProofScript


@dataclass(frozen=True)
class Refuted:
    countermodel: Countermodel


@dataclass(frozen=True)
class Unknown:
    reason: str


Feedback = Provable | Refuted | Unknown


class _OutOfTime(Exception):
    pass


def goal_as_formula(goal: Goal) -> Formula:
    """The sequent folded into one implication chain.

    Proving the chain from nothing is the same as proving the goal: peeling
    the implications with Imp_I restores the assumption list exactly.
    """
    phi = goal.conclusion
    for assumption in goal.assumptions:
        phi = Imp(assumption, phi)
    return phi


def _closed_subformulas(goal: Goal) -> list[Formula]:
    seen: list[Formula] = []
    for p in goal.assumptions + (goal.conclusion,):
        for q in subformulas(p):
            if q not in seen and free_var_bound(q) is None:
                seen.append(q)
    return seen


def _witness_terms(goal: Goal, cfg: SearchConfig) -> list[Term]:
    """Ground witness candidates: sequent subterms, a fresh constant, and
    shallow applications of the sequent's function symbols."""
    formulas = goal.assumptions + (goal.conclusion,)
    terms: list[Term] = []
    functions: list[tuple[str, int]] = []
    for p in formulas:
        for t in subterms(p):
            if isinstance(t, Fun):
                if (t.name, len(t.args)) not in functions:
                    functions.append((t.name, len(t.args)))
                if is_ground(t) and t not in terms:
                    terms.append(t)
    if not terms:
        terms.append(Fun(fresh_constant(formulas)))
    frontier = list(terms)
    for _ in range(1, cfg.max_term_depth):
        new: list[Term] = []
        for name, arity in functions:
            if arity == 0:
                continue
            for combo in _tuples(frontier, arity):
                t = Fun(name, combo)
                if term_depth(t) <= cfg.max_term_depth and t not in terms and t not in new:
                    new.append(t)
        if not new:
            break
        terms.extend(new)
        frontier = new
    return terms


def _tuples(pool: list[Term], arity: int) -> Iterator[tuple[Term, ...]]:
    if arity == 1:
        for t in pool:
            yield (t,)
        return
    if arity == 2:
        for a in pool:
            for b in pool:
                yield (a, b)
        return
    # arities above 2 are rare; keep the diagonal to bound the blow-up
    for t in pool:
        yield (t,) * arity


def _abstract(p: Formula, target: Term, mask: int, counter: list[int], depth: int) -> Formula:
    """Replace the mask-selected occurrences of target in p by the binder
    variable at the current depth, lifting other free indices past it."""

    def walk_term(t: Term, depth: int) -> Term:
        if t == target:
            i = counter[0]
            counter[0] += 1
            if mask >> i & 1:
                return Var(depth)
        match t:
            case Var(j):
                return Var(j + 1) if j >= depth else t
            case Fun(name, args):
                return Fun(name, tuple(walk_term(a, depth) for a in args))
        raise TypeError(f"not a term: {t!r}")

    match p:
        case Pre(name, args):
            return Pre(name, tuple(walk_term(a, depth) for a in args))
        case Imp(a, b):
            return Imp(
                _abstract(a, target, mask, counter, depth),
                _abstract(b, target, mask, counter, depth),
            )
        case Dis(a, b):
            return Dis(
                _abstract(a, target, mask, counter, depth),
                _abstract(b, target, mask, counter, depth),
            )
        case Con(a, b):
            return Con(
                _abstract(a, target, mask, counter, depth),
                _abstract(b, target, mask, counter, depth),
            )
        case Exi(body):
            return Exi(_abstract(body, target, mask, counter, depth + 1))
        case Uni(body):
            return Uni(_abstract(body, target, mask, counter, depth + 1))
    return p


def abstract_term(p: Formula, target: Term, mask: int) -> Formula:
    """Body q with sub(0, target, q) == p, binding the masked occurrences."""
    return _abstract(p, target, mask, [0], 0)


def _count_occurrences(p: Formula, target: Term) -> int:
    count = 0

    def walk(t: Term) -> None:
        nonlocal count
        if t == target:
            count += 1
        if isinstance(t, Fun):
            for a in t.args:
                walk(a)

    for q in subformulas(p):
        if isinstance(q, Pre):
            for a in q.args:
                walk(a)
    return count


_MAX_MASK_OCCURRENCES = 6


def _abstraction_masks(n: int) -> Iterator[int]:
    """Non-empty occurrence subsets: all bound first, then singletons, then
    the rest (capped for very repetitive formulas)."""
    if n == 0:
        return
    full = (1 << n) - 1
    yield full
    if n == 1:
        return
    for i in range(n):
        yield 1 << i
    if n > _MAX_MASK_OCCURRENCES:
        return
    for mask in range(1, full):
        if mask != full and mask.bit_count() not in (0, 1):
            yield mask


def _spine_cuts(z: tuple[Formula, ...], phi: Formula) -> list[Formula]:
    """Last antecedents of assumption implication spines ending at phi.

    For an assumption a1 -> a2 -> ... -> phi the cut a_k makes the major
    premise Imp(a_k, phi) one unwinding step closer to the assumption, so
    chains of these cuts replay the assumption by modus ponens.
    """
    cuts: list[Formula] = []
    for a in z:
        antecedents: list[Formula] = []
        q = a
        while isinstance(q, Imp):
            antecedents.append(q.left)
            q = q.right
            if q == phi:
                cut = antecedents[-1]
                if cut != phi and cut not in cuts:
                    cuts.append(cut)
    return cuts


def _constants(z: tuple[Formula, ...]) -> list[str]:
    names: list[str] = []
    for p in z:
        for t in subterms(p):
            if isinstance(t, Fun) and not t.args and t.name not in names:
                names.append(t.name)
    return names


def _candidates(goal: Goal, cfg: SearchConfig, closure: list[Formula]) -> list[RuleApplication]:
    """Deterministic candidate order: Assume, analytic introductions, then
    eliminations, Boole last.

    Generic cuts (Imp_E with an arbitrary closure formula) are offered only
    at Falsity goals; elsewhere only spine cuts unwind assumptions.  Boole
    rewrites any stuck goal into a Falsity goal, so the full cut supply is
    one step away; this keeps the explored sequent space near-analytic.
    """
    z = goal.assumptions
    phi = goal.conclusion
    if phi in z:
        return [RuleApplication("Assume")]
    witnesses = _witness_terms(goal, cfg)
    out: list[RuleApplication] = []

    match phi:
        case Imp(_, _):
            out.append(RuleApplication("Imp_I"))
        case Con(_, _):
            out.append(RuleApplication("Con_I"))
        case Dis(_, _):
            out.append(RuleApplication("Dis_I1"))
            out.append(RuleApplication("Dis_I2"))
        case Uni(body):
            out.append(RuleApplication("Uni_I", fresh=fresh_constant((body,) + z)))
        case Exi(_):
            for t in witnesses:
                out.append(RuleApplication("Exi_I", witness=t))

    for q in closure:
        if isinstance(q, Con):
            if q.left == phi:
                out.append(RuleApplication("Con_E1", other=q.right))
            if q.right == phi:
                out.append(RuleApplication("Con_E2", other=q.left))
    spine = _spine_cuts(z, phi)
    for q in spine:
        out.append(RuleApplication("Imp_E", cut=q))
    for q in closure:
        if isinstance(q, Dis):
            out.append(RuleApplication("Dis_E", left=q.left, right=q.right))
    constants = _constants(z)
    for q in closure:
        if isinstance(q, Exi):
            # skip when some assumption already instantiates the body: a
            # second witness constant cannot help
            if any(sub(0, Fun(k), q.body) in z for k in constants):
                continue
            out.append(
                RuleApplication("Exi_E", body=q.body, fresh=fresh_constant((q.body, phi) + z))
            )
    if phi == FALSITY:
        for q in closure:
            if q != phi and q not in spine:
                out.append(RuleApplication("Imp_E", cut=q))
    for t in witnesses:
        n = _count_occurrences(phi, t)
        for mask in _abstraction_masks(n):
            out.append(RuleApplication("Uni_E", body=abstract_term(phi, t, mask), witness=t))
    if cfg.classical and phi != FALSITY and Imp(phi, FALSITY) not in z:
        out.append(RuleApplication("Boole"))
    return out


def _goal_key(goal: Goal) -> tuple:
    return (frozenset(goal.assumptions), goal.conclusion)


class _Searcher:
    def __init__(self, cfg: SearchConfig, deadline: float | None):
        self.cfg = cfg
        self.deadline = deadline
        self.failed_at: dict[tuple, int] = {}
        self.moves: dict[tuple, list[tuple[RuleApplication, tuple[Goal, ...]]]] = {}
        self.closures: dict[Formula, list[Formula]] = {}
        self.ticks = 0

    def _tick(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks % 64 == 0:
            if time.monotonic() > self.deadline:
                raise _OutOfTime()

    def _closure(self, goal: Goal) -> list[Formula]:
        seen: list[Formula] = []
        for p in goal.assumptions + (goal.conclusion,):
            cached = self.closures.get(p)
            if cached is None:
                cached = [
                    q for q in dict.fromkeys(subformulas(p)) if free_var_bound(q) is None
                ]
                self.closures[p] = cached
            for q in cached:
                if q not in seen:
                    seen.append(q)
        return seen

    def _moves(self, goal: Goal, key: tuple) -> list[tuple[RuleApplication, tuple[Goal, ...]]]:
        cached = self.moves.get(key)
        if cached is None:
            cached = []
            for app in _candidates(goal, self.cfg, self._closure(goal)):
                try:
                    cached.append((app, rule_premises(goal, app)))
                except RuleError:
                    continue
            self.moves[key] = cached
        return cached

    def search(self, goal: Goal, depth: int, path: set) -> list[RuleApplication] | None:
        if depth <= 0:
            return None
        key = _goal_key(goal)
        if depth <= self.failed_at.get(key, 0):
            return None
        if key in path:
            return None  # identical ancestor sequent: prune
        self._tick()
        path.add(key)
        try:
            for app, premises in self._moves(goal, key):
                if premises and depth < 2:
                    continue  # each premise needs at least one step of its own
                steps = [app]
                solved = True
                for premise in premises:
                    rest = self.search(premise, depth - 1, path)
                    if rest is None:
                        solved = False
                        break
                    steps.extend(rest)
                if solved:
                    return steps
        finally:
            path.discard(key)
        prior = self.failed_at.get(key, 0)
        if depth > prior:
            self.failed_at[key] = depth
        return None


def prove(goal: Goal, cfg: SearchConfig = SearchConfig()) -> Feedback:
    """Provability feedback: a replay-verified script, a countermodel for
    the goal's implication closure, or Unknown when both budgets run out."""
    started = time.monotonic()
    deadline = started + cfg.time_budget_ms / 1000.0
    chained = goal_as_formula(goal)

    budget_note = ""
    try:
        counter = find_countermodel(chained, cfg.countermodel_max_universe)
    except BudgetExceeded as exc:
        counter = None
        budget_note = f"; countermodel enumeration skipped ({exc})"
    if counter is not None:
        return Refuted(counter)

    searcher = _Searcher(cfg, deadline)
    prefix = [RuleApplication("Imp_I")] * len(goal.assumptions)
    for limit in range(1, cfg.max_depth + 1):
        try:
            steps = searcher.search(goal, limit, set())
        except _OutOfTime:
            return Unknown(
                f"no answer within {cfg.time_budget_ms} ms "
                f"(reached depth {limit} of {cfg.max_depth}){budget_note}"
            )
        if steps is not None:
            script = ProofScript(chained, tuple(prefix + steps))
            verdict = replay(script)
            if not isinstance(verdict, Complete):
                raise AssertionError(
                    f"search produced a script the kernel rejects: {verdict!r}"
                )
            return Provable(script)
    return Unknown(
        f"no proof within depth {cfg.max_depth} and no countermodel up to "
        f"universe size {cfg.countermodel_max_universe}{budget_note}"
    )


def hint(state: ProofState, cfg: SearchConfig = SearchConfig()) -> list[Feedback]:
    """Independent provability feedback for every open goal."""
    return [prove(goal, cfg) for goal in state.open_goals]
