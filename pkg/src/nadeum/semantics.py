"""Tarskian evaluation over explicit finite interpretations.

The universe of an interpretation is {0, ..., n-1}.  Function and predicate
denotations are total lookup tables keyed by (name, arity); the variable
denotation is a stack indexed by de Bruijn index.  Exhaustive enumeration of
all interpretations of a signature gives a (one-sided) validity oracle:
finding a countermodel refutes validity, exhausting a finite prefix of
universe sizes proves nothing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .syntax import (
    Con,
    Dis,
    Exi,
    Falsity,
    Formula,
    Fun,
    Imp,
    Pre,
    Term,
    Uni,
    Var,
    formula_to_json,
    free_var_bound,
    print_formula,
    put_unis,
    signature,
)

DEFAULT_BUDGET = 2_000_000

Table = Mapping[tuple[int, ...], int]
BoolTable = Mapping[tuple[int, ...], bool]


class SemanticsError(Exception):
    pass


class MissingDenotation(SemanticsError):
    def __init__(self, name: str, arity: int, kind: str):
        self.name = name
        self.arity = arity
        self.kind = kind
        super().__init__(f"no {kind} denotation for {name}/{arity}")


class UnboundVariable(SemanticsError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"variable index {index} outside the environment")


class BudgetExceeded(SemanticsError):
    def __init__(self, estimated: int, budget: int):
        self.estimated = estimated
        self.budget = budget
        super().__init__(
            f"interpretation space of {estimated} exceeds the budget of {budget}"
        )


@dataclass
class Interpretation:
    """A finite model: universe {0..n-1} plus e/f/g denotations."""

    universe_size: int
    env: tuple[int, ...] = ()
    funs: dict[tuple[str, int], Table] = field(default_factory=dict)
    preds: dict[tuple[str, int], BoolTable] = field(default_factory=dict)


def _eval_term(t: Term, interp: Interpretation, env: tuple[int, ...]) -> int:
    match t:
        case Var(i):
            if i >= len(env):
                raise UnboundVariable(i)
            return env[i]
        case Fun(name, args):
            table = interp.funs.get((name, len(args)))
            if table is None:
                raise MissingDenotation(name, len(args), "function")
            return table[tuple(_eval_term(a, interp, env) for a in args)]
    raise TypeError(f"not a term: {t!r}")


def _eval(p: Formula, interp: Interpretation, env: tuple[int, ...]) -> bool:
    match p:
        case Falsity():
            return False
        case Pre(name, args):
            table = interp.preds.get((name, len(args)))
            if table is None:
                raise MissingDenotation(name, len(args), "predicate")
            return table[tuple(_eval_term(a, interp, env) for a in args)]
        case Imp(a, b):
            return _eval(b, interp, env) if _eval(a, interp, env) else True
        case Dis(a, b):
            return True if _eval(a, interp, env) else _eval(b, interp, env)
        case Con(a, b):
            return _eval(b, interp, env) if _eval(a, interp, env) else False
        case Exi(body):
            return any(
                _eval(body, interp, (d,) + env) for d in range(interp.universe_size)
            )
        case Uni(body):
            return all(
                _eval(body, interp, (d,) + env) for d in range(interp.universe_size)
            )
    raise TypeError(f"not a formula: {p!r}")


def eval_formula(p: Formula, interp: Interpretation) -> bool:
    """Truth value of p under interp; raises on missing tables or indices."""
    return _eval(p, interp, interp.env)


def interpretation_count(
    sig: Sequence[tuple[str, int, str]], universe_size: int
) -> int:
    total = 1
    for _, arity, kind in sig:
        points = universe_size**arity
        total *= (universe_size if kind == "fun" else 2) ** points
    return total


def enumerate_interpretations(
    sig: Sequence[tuple[str, int, str]] | set[tuple[str, int, str]],
    universe_size: int,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[Interpretation]:
    """All interpretations of sig over {0..n-1}, lexicographically.

    The order is fixed by sorting the signature by (kind, name, arity) and
    enumerating each table's outputs over argument tuples in lexicographic
    order, so a search over this stream is reproducible.
    """
    if universe_size < 1:
        raise ValueError("universe_size must be at least 1")
    entries = sorted(sig)
    estimated = interpretation_count(entries, universe_size)
    if estimated > budget:
        raise BudgetExceeded(estimated, budget)

    def tables(name: str, arity: int, kind: str) -> Iterator[tuple]:
        points = list(itertools.product(range(universe_size), repeat=arity))
        values: Sequence = range(universe_size) if kind == "fun" else (False, True)
        for outputs in itertools.product(values, repeat=len(points)):
            yield (name, arity, kind), dict(zip(points, outputs))

    for assignment in itertools.product(
        *(tables(name, arity, kind) for name, arity, kind in entries)
    ):
        interp = Interpretation(universe_size)
        for (name, arity, kind), table in assignment:
            if kind == "fun":
                interp.funs[(name, arity)] = table
            else:
                interp.preds[(name, arity)] = table
        yield interp


@dataclass
class Countermodel:
    """A falsifying interpretation together with the sentence it falsifies."""

    interpretation: Interpretation
    falsified: Formula

    def to_json(self) -> dict:
        def render_table(table: Mapping) -> dict[str, object]:
            return {
                ",".join(map(str, args)): value for args, value in sorted(table.items())
            }

        return {
            "universe_size": self.interpretation.universe_size,
            "functions": {
                f"{name}/{arity}": render_table(t)
                for (name, arity), t in sorted(self.interpretation.funs.items())
            },
            "predicates": {
                f"{name}/{arity}": render_table(t)
                for (name, arity), t in sorted(self.interpretation.preds.items())
            },
            "falsified": print_formula(self.falsified),
            "falsified_ast": formula_to_json(self.falsified),
        }


def universal_closure(p: Formula) -> Formula:
    """p with every free variable bound by an outer universal quantifier."""
    bound = free_var_bound(p)
    return p if bound is None else put_unis(bound + 1, p)


def find_countermodel(
    p: Formula, max_universe: int, budget: int = DEFAULT_BUDGET
) -> Countermodel | None:
    """First interpretation falsifying the universal closure of p, if any.

    Searches universe sizes 1..max_universe in order.  None means only that
    no countermodel exists up to the bound; it is not a validity claim.
    """
    if max_universe < 1:
        raise ValueError("max_universe must be at least 1")
    closed = universal_closure(p)
    sig = signature([closed])
    for size in range(1, max_universe + 1):
        for interp in enumerate_interpretations(sig, size, budget):
            if not eval_formula(closed, interp):
                return Countermodel(interp, closed)
    return None
