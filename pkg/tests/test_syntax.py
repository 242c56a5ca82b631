"""Core syntax: parsing, printing, substitution, freshness, closures."""

from __future__ import annotations

import random

import pytest

from nadeum.syntax import (
    FALSITY,
    ArityError,
    Con,
    Dis,
    Exi,
    Formula,
    Fun,
    Imp,
    ParseError,
    Pre,
    Term,
    Uni,
    Var,
    formula_from_json,
    formula_to_json,
    free_var_bound,
    fresh_constant,
    lift_formula,
    lift_term,
    news,
    parse_formula,
    parse_term,
    print_formula,
    put_unis,
    strip_unis,
    sub,
    subformulas,
    term_from_json,
    term_to_json,
)

A = Pre("A")
B = Pre("B")


def a(t: Term) -> Formula:
    return Pre("A", (t,))


# ---------------------------------------------------------------------------
# Independent substitution oracle: convert to a named tree, replace, convert
# back.  Shares no code with nadeum.syntax.sub.


def _named(p: Formula, env: list[str], counter: list[int]):
    match p:
        case Pre(name, args):
            return ("pre", name, tuple(_named_term(t, env) for t in args))
        case Imp(x, y) | Dis(x, y) | Con(x, y):
            tag = type(p).__name__.lower()
            return (tag, _named(x, env, counter), _named(y, env, counter))
        case Exi(body) | Uni(body):
            tag = type(p).__name__.lower()
            counter[0] += 1
            name = f"b{counter[0]}"
            return (tag, name, _named(body, [name] + env, counter))
        case _:
            return ("falsity",)


def _named_term(t: Term, env: list[str]):
    match t:
        case Var(i):
            return ("var", env[i])
        case Fun(name, args):
            return ("fun", name, tuple(_named_term(x, env) for x in args))


def _named_replace_term(t, target: str, replacement):
    if t[0] == "var":
        return replacement if t[1] == target else t
    return ("fun", t[1], tuple(_named_replace_term(x, target, replacement) for x in t[2]))


def _named_replace(p, target: str, replacement):
    tag = p[0]
    if tag == "falsity":
        return p
    if tag == "pre":
        return ("pre", p[1], tuple(_named_replace_term(t, target, replacement) for t in p[2]))
    if tag in ("imp", "dis", "con"):
        return (tag, _named_replace(p[1], target, replacement), _named_replace(p[2], target, replacement))
    return (tag, p[1], _named_replace(p[2], target, replacement))


def _unnamed(p, env: list[str]) -> Formula:
    tag = p[0]
    if tag == "falsity":
        return FALSITY
    if tag == "pre":
        return Pre(p[1], tuple(_unnamed_term(t, env) for t in p[2]))
    if tag in ("imp", "dis", "con"):
        ctor = {"imp": Imp, "dis": Dis, "con": Con}[tag]
        return ctor(_unnamed(p[1], env), _unnamed(p[2], env))
    ctor = Exi if tag == "exi" else Uni
    return ctor(_unnamed(p[2], [p[1]] + env))


def _unnamed_term(t, env: list[str]) -> Term:
    if t[0] == "var":
        return Var(env.index(t[1]))
    return Fun(t[1], tuple(_unnamed_term(x, env) for x in t[2]))


def oracle_sub(n: int, t: Term, p: Formula) -> Formula:
    """sub via unique names: Var(n) becomes TARGET, outer context is wN."""
    depth = free_depth = 40  # generous free-context naming
    context = [f"w{j}" for j in range(free_depth)]
    p_env = context[:n] + ["TARGET"] + context[n:]
    named_p = _named(p, p_env, [0])
    named_t = _named_term(t, context)
    result = _named_replace(named_p, "TARGET", named_t)
    return _unnamed(result, context)


def random_formula(rng: random.Random, depth: int, binders: int = 0) -> Formula:
    """Structural generator; every variable is bound (printable surface space)."""
    if depth <= 0:
        choices = ["false", "atom0", "atom1"]
        if binders:
            choices.append("atomv")
        kind = rng.choice(choices)
        if kind == "false":
            return FALSITY
        if kind == "atom0":
            return Pre(rng.choice("AB"))
        if kind == "atom1":
            return Pre("r", (Fun(rng.choice("cd")),))
        return Pre("r", (Var(rng.randrange(binders)),))
    kind = rng.randrange(6)
    if kind == 0:
        return Imp(random_formula(rng, depth - 1, binders), random_formula(rng, depth - 1, binders))
    if kind == 1:
        return Dis(random_formula(rng, depth - 1, binders), random_formula(rng, depth - 1, binders))
    if kind == 2:
        return Con(random_formula(rng, depth - 1, binders), random_formula(rng, depth - 1, binders))
    if kind == 3:
        return Exi(random_formula(rng, depth - 1, binders + 1))
    if kind == 4:
        return Uni(random_formula(rng, depth - 1, binders + 1))
    return Pre("q", (Fun("f", (Fun("c"),)),))


def random_term(rng: random.Random, depth: int = 2) -> Term:
    if depth <= 0 or rng.random() < 0.5:
        return Fun(rng.choice("cd"))
    return Fun("f", (random_term(rng, depth - 1),))


# ---------------------------------------------------------------------------
# parse_formula


def test_parse_atom_implication():
    assert parse_formula("A -> A") == Imp(A, A)


def test_parse_drinker():
    assert parse_formula("exi x. (A(x) -> uni x. A(x))") == Exi(
        Imp(a(Var(0)), Uni(a(Var(0))))
    )


def test_parse_hint9_surface():
    rx = Pre("r", (Var(0),))
    rfx = Pre("r", (Fun("f", (Var(0),)),))
    rffx = Pre("r", (Fun("f", (Fun("f", (Var(0),)),)),))
    expected = Imp(Uni(Imp(Imp(rx, FALSITY), rfx)), Exi(Con(rx, rffx)))
    got = parse_formula("uni x. (~r(x) -> r(f(x))) -> exi x. (r(x) /\\ r(f(f(x))))")
    assert got == expected


def test_parse_precedence_and_associativity():
    assert parse_formula("A -> B -> A") == Imp(A, Imp(B, A))
    assert parse_formula("A /\\ B -> B") == Imp(Con(A, B), B)
    assert parse_formula("~A \\/ B") == Dis(Imp(A, FALSITY), B)
    assert parse_formula("A /\\ B \\/ B") == Dis(Con(A, B), B)


def test_parse_shadowing_inner_binder_wins():
    got = parse_formula("uni x. (A(x) /\\ exi x. A(x))")
    assert got == Uni(Con(a(Var(0)), Exi(a(Var(0)))))


def test_parse_unbound_nullary_name_is_constant():
    assert parse_formula("A(c)") == Pre("A", (Fun("c"),))


def test_parse_error_offset_and_expected():
    with pytest.raises(ParseError) as exc:
        parse_formula("A -> ")
    assert exc.value.offset == 5
    assert exc.value.expected


def test_parse_error_unbalanced():
    with pytest.raises(ParseError):
        parse_formula("(A -> B")
    with pytest.raises(ParseError):
        parse_formula("A B")


def test_arity_error():
    with pytest.raises(ArityError) as exc:
        parse_formula("A(c) /\\ A(c, c)")
    assert exc.value.name == "A"
    assert exc.value.arities == (1, 2)


def test_arity_error_term_namespace():
    with pytest.raises(ArityError):
        parse_formula("B(f(c), f(c, c))")


def test_separate_namespaces_allow_same_name():
    # predicate A and constant A do not clash
    got = parse_formula("A(A)")
    assert got == Pre("A", (Fun("A"),))


def test_parse_term():
    assert parse_term("f(c, d)") == Fun("f", (Fun("c"), Fun("d")))
    with pytest.raises(ParseError):
        parse_term("f(c")


# ---------------------------------------------------------------------------
# print_formula


def test_print_examples():
    assert print_formula(Imp(FALSITY, FALSITY)) == "False -> False"
    assert print_formula(Uni(Uni(Pre("A", (Var(1), Var(0)))))) == "uni x. uni y. A(x, y)"


def test_print_avoids_captured_names():
    # constant x in scope forces the binder to pick another name
    p = Uni(Con(a(Var(0)), Pre("A", (Fun("x"),))))
    rendered = print_formula(p)
    assert parse_formula(rendered) == p


def test_roundtrip_corpus_surfaces():
    surfaces = [
        "False -> False",
        "False -> A",
        "(A -> B) -> A -> B",
        "A -> (A -> B) -> B",
        "A /\\ (A -> B) -> B",
        "A(c) /\\ (A(c) -> uni x. A(x)) -> uni x. A(x)",
        "uni x. A(x) -> A(c)",
        "A(c) -> exi x. A(x)",
        "A -> B -> A",
        "(A -> B -> C) -> (A -> B) -> A -> C",
        "A -> (A -> False) -> False",
        "((A -> False) -> False) -> A",
        "(A /\\ B) -> C -> (A /\\ C)",
        "((A -> False) \\/ (B -> False)) -> (A /\\ B) -> False",
        "uni x. uni y. A(x, y) -> uni x. A(x, x)",
        "uni x. A(x) -> exi x. A(x)",
        "exi x. (A(x) -> uni x. A(x))",
        "uni x. (~r(x) -> r(f(x))) -> exi x. (r(x) /\\ r(f(f(x))))",
    ]
    for text in surfaces:
        parsed = parse_formula(text)
        assert parse_formula(print_formula(parsed)) == parsed


def test_roundtrip_random_formulas():
    rng = random.Random(2024)
    for _ in range(400):
        p = random_formula(rng, rng.randint(0, 6))
        assert parse_formula(print_formula(p)) == p


# ---------------------------------------------------------------------------
# lift / sub


def test_lift_term_examples():
    assert lift_term(Var(0), 0) == Var(1)
    assert lift_term(Var(0), 1) == Var(0)
    assert lift_term(Fun("f", (Var(2),)), 1) == Fun("f", (Var(3),))


def test_sub_examples():
    assert sub(0, Fun("c"), a(Var(0))) == a(Fun("c"))
    assert sub(0, Fun("c"), Uni(Pre("A", (Var(0), Var(1))))) == Uni(
        Pre("A", (Var(0), Fun("c")))
    )
    assert sub(0, Var(0), Exi(Pre("A", (Var(0), Var(1))))) == Exi(
        Pre("A", (Var(0), Var(1)))
    )


def test_sub_agrees_with_named_oracle():
    for n, t, p in [
        (0, Fun("c"), a(Var(0))),
        (0, Fun("c"), Uni(Pre("A", (Var(0), Var(1))))),
        (0, Var(0), Exi(Pre("A", (Var(0), Var(1))))),
        (0, Var(3), Uni(Exi(Pre("A", (Var(0), Var(1), Var(2), Var(5)))))),
        (2, Fun("f", (Var(0),)), Imp(a(Var(2)), Uni(a(Var(3))))),
    ]:
        assert sub(n, t, p) == oracle_sub(n, t, p)


def test_sub_agrees_with_named_oracle_randomized():
    rng = random.Random(7)
    for _ in range(300):
        # open formulas: reuse the closed generator under extra phantom binders
        p = random_formula(rng, rng.randint(0, 4), binders=3)
        t = random_term(rng)
        n = rng.randrange(3)
        assert sub(n, t, p) == oracle_sub(n, t, p)


def test_sub_of_lift_is_identity():
    rng = random.Random(11)
    for _ in range(200):
        p = random_formula(rng, rng.randint(0, 5))
        t = random_term(rng)
        assert sub(0, t, lift_formula(p, 0)) == p


# ---------------------------------------------------------------------------
# news / fresh_constant


def test_news_examples():
    assert news("c", [a(Var(0))]) is True
    assert news("c", [a(Fun("c"))]) is False
    hint9 = parse_formula("uni x. (~r(x) -> r(f(x))) -> exi x. (r(x) /\\ r(f(f(x))))")
    assert news("f", [hint9]) is False


def test_news_ignores_predicate_namespace():
    assert news("A", [Pre("A", ())]) is True


def test_news_concatenation():
    rng = random.Random(3)
    for _ in range(100):
        xs = [random_formula(rng, 2) for _ in range(rng.randint(0, 3))]
        ys = [random_formula(rng, 2) for _ in range(rng.randint(0, 3))]
        for c in ("c", "d", "f", "nope"):
            assert news(c, xs + ys) == (news(c, xs) and news(c, ys))


def test_fresh_constant_sequence():
    assert fresh_constant([]) == "c"
    assert fresh_constant([parse_formula("A(c)")]) == "c1"
    assert fresh_constant([parse_formula("A(c)"), parse_formula("B(c1)")]) == "c2"


# ---------------------------------------------------------------------------
# free_var_bound / put_unis / strip_unis


def test_free_var_bound_examples():
    assert free_var_bound(parse_formula("exi x. (A(x) -> uni x. A(x))")) is None
    assert free_var_bound(a(Var(0))) == 0
    assert free_var_bound(Uni(a(Var(1)))) == 0
    assert free_var_bound(FALSITY) is None


def test_put_unis_examples():
    p = Pre("A", (Var(0), Var(1)))
    assert put_unis(0, p) == p
    assert put_unis(2, p) == Uni(Uni(p))


def test_put_unis_collapse():
    rng = random.Random(5)
    for _ in range(200):
        p = random_formula(rng, rng.randint(0, 4))
        k, m = rng.randint(0, 5), rng.randint(0, 5)
        assert put_unis(m, put_unis(k, p)) == put_unis(m + k, p)


def test_strip_unis_examples():
    p = Pre("P")
    assert strip_unis(Uni(Uni(p))) == (2, p)
    assert strip_unis(FALSITY) == (0, FALSITY)


def test_strip_unis_inverts_put_unis():
    rng = random.Random(6)
    for _ in range(200):
        p = random_formula(rng, rng.randint(0, 4))
        k0, body = strip_unis(p)
        k = rng.randint(0, 5)
        assert strip_unis(put_unis(k, p)) == (k + k0, body)


# ---------------------------------------------------------------------------
# JSON encoding


def test_json_shapes():
    p = parse_formula("uni x. (~r(x) -> r(f(x)))")
    data = formula_to_json(p)
    assert "uni" in data
    assert formula_from_json(data) == p
    t = Fun("f", (Var(0), Fun("c")))
    assert term_from_json(term_to_json(t)) == t


def test_json_roundtrip_random():
    rng = random.Random(8)
    for _ in range(200):
        p = random_formula(rng, rng.randint(0, 5))
        assert formula_from_json(formula_to_json(p)) == p


def test_json_rejects_malformed():
    with pytest.raises(ValueError):
        formula_from_json({"nope": 1})
    with pytest.raises(ValueError):
        formula_from_json({"imp": [{"falsity": None}]})
    with pytest.raises(ValueError):
        term_from_json({"var": -1})


def test_subformulas_preorder():
    p = Imp(A, Con(B, FALSITY))
    assert list(subformulas(p)) == [p, A, Con(B, FALSITY), B, FALSITY]
