"""Terms and formulas with de Bruijn binders, plus parsing and printing.

The internal representation is nameless: ``Var(0)`` refers to the nearest
enclosing quantifier.  Constants are nullary functions; negation is sugar
for implication into ``Falsity``.  The surface grammar uses named binders
and is round-trippable through :func:`parse_formula` / :func:`print_formula`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence


# ---------------------------------------------------------------------------
# Syntax trees


@dataclass(frozen=True)
class Var:
    """Bound variable; the index counts enclosing binders (innermost = 0)."""

    index: int


@dataclass(frozen=True)
class Fun:
    """Function application; a constant is a Fun with no arguments."""

    name: str
    args: tuple["Term", ...] = ()


Term = Var | Fun


@dataclass(frozen=True)
class Falsity:
    pass


@dataclass(frozen=True)
class Pre:
    name: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Dis:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Con:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exi:
    body: "Formula"


@dataclass(frozen=True)
class Uni:
    body: "Formula"


Formula = Falsity | Pre | Imp | Dis | Con | Exi | Uni

FALSITY = Falsity()

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
KEYWORDS = frozenset({"False", "uni", "exi"})


def neg(p: Formula) -> Formula:
    """~p as its internal form p -> False."""
    return Imp(p, FALSITY)


def is_name(s: str) -> bool:
    return bool(NAME_RE.fullmatch(s)) and s not in KEYWORDS


# ---------------------------------------------------------------------------
# Index arithmetic


def lift_term(t: Term, cutoff: int = 0) -> Term:
    """Shift every variable index >= cutoff up by one."""
    match t:
        case Var(i):
            return Var(i + 1) if i >= cutoff else t
        case Fun(name, args):
            return Fun(name, tuple(lift_term(a, cutoff) for a in args))
    raise TypeError(f"not a term: {t!r}")


def lift_formula(p: Formula, cutoff: int = 0) -> Formula:
    """Shift every free variable index >= cutoff up by one."""
    match p:
        case Falsity():
            return p
        case Pre(name, args):
            return Pre(name, tuple(lift_term(a, cutoff) for a in args))
        case Imp(a, b):
            return Imp(lift_formula(a, cutoff), lift_formula(b, cutoff))
        case Dis(a, b):
            return Dis(lift_formula(a, cutoff), lift_formula(b, cutoff))
        case Con(a, b):
            return Con(lift_formula(a, cutoff), lift_formula(b, cutoff))
        case Exi(body):
            return Exi(lift_formula(body, cutoff + 1))
        case Uni(body):
            return Uni(lift_formula(body, cutoff + 1))
    raise TypeError(f"not a formula: {p!r}")


def _sub_term(n: int, s: Term, t: Term) -> Term:
    match t:
        case Var(i):
            if i < n:
                return t
            if i == n:
                return s
            return Var(i - 1)  # a binder was consumed below this index
        case Fun(name, args):
            return Fun(name, tuple(_sub_term(n, s, a) for a in args))
    raise TypeError(f"not a term: {t!r}")


def sub(n: int, t: Term, p: Formula) -> Formula:
    """Substitute t for Var(n) in p, consuming the binder at level n.

    Under k nested quantifiers the occurrence Var(n+k) is replaced by t
    lifted k times, and every free index above n+k drops by one.
    """
    match p:
        case Falsity():
            return p
        case Pre(name, args):
            return Pre(name, tuple(_sub_term(n, t, a) for a in args))
        case Imp(a, b):
            return Imp(sub(n, t, a), sub(n, t, b))
        case Dis(a, b):
            return Dis(sub(n, t, a), sub(n, t, b))
        case Con(a, b):
            return Con(sub(n, t, a), sub(n, t, b))
        case Exi(body):
            return Exi(sub(n + 1, lift_term(t, 0), body))
        case Uni(body):
            return Uni(sub(n + 1, lift_term(t, 0), body))
    raise TypeError(f"not a formula: {p!r}")


# ---------------------------------------------------------------------------
# Freshness and free variables


def _term_funs(t: Term) -> Iterator[str]:
    match t:
        case Var(_):
            return
        case Fun(name, args):
            yield name
            for a in args:
                yield from _term_funs(a)


def _formula_funs(p: Formula) -> Iterator[str]:
    match p:
        case Falsity():
            return
        case Pre(_, args):
            for a in args:
                yield from _term_funs(a)
        case Imp(a, b) | Dis(a, b) | Con(a, b):
            yield from _formula_funs(a)
            yield from _formula_funs(b)
        case Exi(body) | Uni(body):
            yield from _formula_funs(body)


def news(c: str, ps: Sequence[Formula]) -> bool:
    """True iff the name c occurs as a function name nowhere in ps."""
    return all(c != name for p in ps for name in _formula_funs(p))


def fresh_constant(ps: Sequence[Formula]) -> str:
    """First name in the sequence c, c1, c2, ... that is new for ps."""
    used = {name for p in ps for name in _formula_funs(p)}
    if "c" not in used:
        return "c"
    k = 1
    while f"c{k}" in used:
        k += 1
    return f"c{k}"


def _max_free_term(t: Term, depth: int) -> int | None:
    match t:
        case Var(i):
            return i - depth if i >= depth else None
        case Fun(_, args):
            frees = [m for a in args if (m := _max_free_term(a, depth)) is not None]
            return max(frees) if frees else None
    raise TypeError(f"not a term: {t!r}")


def free_var_bound(p: Formula, _depth: int = 0) -> int | None:
    """Maximal free de Bruijn index of p, or None for a sentence."""
    match p:
        case Falsity():
            return None
        case Pre(_, args):
            frees = [m for a in args if (m := _max_free_term(a, _depth)) is not None]
            return max(frees) if frees else None
        case Imp(a, b) | Dis(a, b) | Con(a, b):
            frees = [m for q in (a, b) if (m := free_var_bound(q, _depth)) is not None]
            return max(frees) if frees else None
        case Exi(body) | Uni(body):
            return free_var_bound(body, _depth + 1)
    raise TypeError(f"not a formula: {p!r}")


def is_sentence(p: Formula) -> bool:
    return free_var_bound(p) is None


def put_unis(k: int, p: Formula) -> Formula:
    """Wrap p in k outer universal quantifiers."""
    for _ in range(k):
        p = Uni(p)
    return p


def strip_unis(p: Formula) -> tuple[int, Formula]:
    """Maximal k and body with p = put_unis(k, body) and body not a Uni."""
    k = 0
    while isinstance(p, Uni):
        p = p.body
        k += 1
    return k, p


# ---------------------------------------------------------------------------
# Structural traversals used by search and semantics


def subformulas(p: Formula) -> Iterator[Formula]:
    """All subformulas of p in pre-order, p itself included."""
    yield p
    match p:
        case Imp(a, b) | Dis(a, b) | Con(a, b):
            yield from subformulas(a)
            yield from subformulas(b)
        case Exi(body) | Uni(body):
            yield from subformulas(body)


def subterms(p: Formula) -> Iterator[Term]:
    """All terms occurring in p (each with its own subterms), pre-order."""

    def walk(t: Term) -> Iterator[Term]:
        yield t
        if isinstance(t, Fun):
            for a in t.args:
                yield from walk(a)

    for q in subformulas(p):
        if isinstance(q, Pre):
            for a in q.args:
                yield from walk(a)


def is_ground(t: Term) -> bool:
    match t:
        case Var(_):
            return False
        case Fun(_, args):
            return all(is_ground(a) for a in args)
    raise TypeError(f"not a term: {t!r}")


def term_depth(t: Term) -> int:
    match t:
        case Var(_):
            return 1
        case Fun(_, args):
            return 1 + max((term_depth(a) for a in args), default=0)
    raise TypeError(f"not a term: {t!r}")


def signature(ps: Sequence[Formula]) -> set[tuple[str, int, str]]:
    """All (name, arity, kind) triples occurring in ps; kind is fun or pred."""
    sig: set[tuple[str, int, str]] = set()

    def walk_term(t: Term) -> None:
        if isinstance(t, Fun):
            sig.add((t.name, len(t.args), "fun"))
            for a in t.args:
                walk_term(a)

    for p in ps:
        for q in subformulas(p):
            if isinstance(q, Pre):
                sig.add((q.name, len(q.args), "pred"))
                for a in q.args:
                    walk_term(a)
    return sig


# ---------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<and>/\\)
  | (?P<or>\\/)
  | (?P<tilde>~)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<comma>,)
  | (?P<dot>\.)
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    """Surface-syntax rejection with byte offset and expected-token set."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = expected
        detail = f"{message} at offset {offset}"
        if expected:
            detail += " (expected " + " or ".join(expected) + ")"
        super().__init__(detail)


class ArityError(ParseError):
    """One name used with two different arities in the same namespace."""

    def __init__(self, name: str, kind: str, seen: int, now: int, offset: int):
        self.name = name
        self.kind = kind
        self.arities = (seen, now)
        ValueError.__init__(
            self,
            f"{kind} {name!r} used with arity {now} but previously {seen}"
            f" at offset {offset}",
        )
        self.offset = offset
        self.expected = ()


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup or ""
        if kind != "ws":
            word = m.group()
            if kind == "name" and word in KEYWORDS:
                kind = word
            tokens.append(_Token(kind, word, pos))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent over the grammar

        formula  := disjunct ('->' formula)?
        disjunct := conjunct ('\\/' disjunct)?
        conjunct := unary ('/\\' conjunct)?
        unary    := '~' unary | ('uni'|'exi') NAME '.' unary | atom
        atom     := 'False' | NAME ('(' term (',' term)* ')')? | '(' formula ')'
        term     := NAME ('(' term (',' term)* ')')?

    Quantifiers bind like negation: their body is a single unary formula,
    so `uni x. A(x) -> B` is an implication with a quantified antecedent.
    """

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.bound: list[str] = []
        self.fun_arity: dict[str, int] = {}
        self.pred_arity: dict[str, int] = {}

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind: str, expected: tuple[str, ...]) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"unexpected {tok.text!r}" if tok.kind != "eof" else "unexpected end of input",
                tok.offset,
                expected,
            )
        self.pos += 1
        return tok

    def register(self, table: dict[str, int], kind: str, name: str, arity: int, offset: int) -> None:
        seen = table.get(name)
        if seen is None:
            table[name] = arity
        elif seen != arity:
            raise ArityError(name, kind, seen, arity, offset)

    def formula(self) -> Formula:
        left = self.disjunct()
        if self.peek().kind == "arrow":
            self.pos += 1
            return Imp(left, self.formula())
        return left

    def disjunct(self) -> Formula:
        left = self.conjunct()
        if self.peek().kind == "or":
            self.pos += 1
            return Dis(left, self.disjunct())
        return left

    def conjunct(self) -> Formula:
        left = self.unary()
        if self.peek().kind == "and":
            self.pos += 1
            return Con(left, self.conjunct())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "tilde":
            self.pos += 1
            return Imp(self.unary(), FALSITY)
        if tok.kind in ("uni", "exi"):
            self.pos += 1
            name = self.take("name", ("variable name",))
            self.take("dot", (".",))
            self.bound.append(name.text)
            try:
                body = self.unary()
            finally:
                self.bound.pop()
            return Uni(body) if tok.kind == "uni" else Exi(body)
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "False":
            self.pos += 1
            return FALSITY
        if tok.kind == "lpar":
            self.pos += 1
            inner = self.formula()
            self.take("rpar", (")",))
            return inner
        if tok.kind == "name":
            self.pos += 1
            if tok.text in self.bound:
                raise ParseError(
                    f"bound variable {tok.text!r} cannot head a formula", tok.offset
                )
            args = self.maybe_args()
            self.register(self.pred_arity, "predicate", tok.text, len(args), tok.offset)
            return Pre(tok.text, args)
        raise ParseError(
            f"unexpected {tok.text!r}" if tok.kind != "eof" else "unexpected end of input",
            tok.offset,
            ("False", "~", "uni", "exi", "(", "identifier"),
        )

    def maybe_args(self) -> tuple[Term, ...]:
        if self.peek().kind != "lpar":
            return ()
        self.pos += 1
        args = [self.term()]
        while self.peek().kind == "comma":
            self.pos += 1
            args.append(self.term())
        self.take("rpar", (")", ","))
        return tuple(args)

    def term(self) -> Term:
        tok = self.take("name", ("identifier",))
        if tok.text in self.bound:
            if self.peek().kind == "lpar":
                raise ParseError(
                    f"bound variable {tok.text!r} cannot take arguments", tok.offset
                )
            # innermost occurrence wins under shadowing; innermost has index 0
            for depth, name in enumerate(reversed(self.bound)):
                if name == tok.text:
                    return Var(depth)
        args = self.maybe_args()
        self.register(self.fun_arity, "function", tok.text, len(args), tok.offset)
        return Fun(tok.text, args)


def parse_formula(text: str) -> Formula:
    """Parse surface text; unbound nullary names in term position are constants."""
    parser = _Parser(text)
    result = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.text!r}", tok.offset, ("end of input",))
    return result


def parse_term(text: str) -> Term:
    """Parse a single closed term (witness input for quantifier rules)."""
    parser = _Parser(text)
    result = parser.term()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.text!r}", tok.offset, ("end of input",))
    return result


# ---------------------------------------------------------------------------
# Printing

_BINDER_NAMES = ("x", "y", "z")


def _binder_name_stream(used: set[str]) -> Iterator[str]:
    for n in _BINDER_NAMES:
        if n not in used:
            yield n
    k = 1
    while True:
        n = f"u{k}"
        if n not in used:
            yield n
        k += 1


def _used_names(p: Formula) -> set[str]:
    names = set(_formula_funs(p))
    for q in subformulas(p):
        if isinstance(q, Pre):
            names.add(q.name)
    return names


# precedence levels: -> is 1, \/ is 2, /\ is 3, unary (~, binders) is 4, atoms 5
def print_formula(p: Formula) -> str:
    """Minimal-parenthesis surface rendering; inverse of parse_formula."""
    fresh = _binder_name_stream(_used_names(p))

    def render_term(t: Term, env: list[str]) -> str:
        match t:
            case Var(i):
                # out-of-scope indices only arise in open formulas fed in
                # programmatically; name them recognisably
                return env[i] if i < len(env) else f"v{i - len(env)}"
            case Fun(name, args):
                if not args:
                    return name
                return f"{name}({', '.join(render_term(a, env) for a in args)})"
        raise TypeError(f"not a term: {t!r}")

    def render(q: Formula, level: int, env: list[str]) -> str:
        match q:
            case Falsity():
                return "False"
            case Pre(name, args):
                if not args:
                    return name
                return f"{name}({', '.join(render_term(a, env) for a in args)})"
            case Imp(a, b):
                body = f"{render(a, 2, env)} -> {render(b, 1, env)}"
                return f"({body})" if level > 1 else body
            case Dis(a, b):
                body = f"{render(a, 3, env)} \\/ {render(b, 2, env)}"
                return f"({body})" if level > 2 else body
            case Con(a, b):
                body = f"{render(a, 4, env)} /\\ {render(b, 3, env)}"
                return f"({body})" if level > 3 else body
            case Exi(inner) | Uni(inner):
                word = "exi" if isinstance(q, Exi) else "uni"
                name = next(fresh)
                body = f"{word} {name}. {render(inner, 4, [name] + env)}"
                return f"({body})" if level > 4 else body
        raise TypeError(f"not a formula: {q!r}")

    return render(p, 1, [])


def print_term(t: Term) -> str:
    match t:
        case Var(i):
            return f"v{i}"
        case Fun(name, args):
            if not args:
                return name
            return f"{name}({', '.join(print_term(a) for a in args)})"
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Canonical JSON encoding


def term_to_json(t: Term) -> dict:
    match t:
        case Var(i):
            return {"var": i}
        case Fun(name, args):
            return {"fun": [name, [term_to_json(a) for a in args]]}
    raise TypeError(f"not a term: {t!r}")


def term_from_json(data: object) -> Term:
    if not isinstance(data, dict) or len(data) != 1:
        raise ValueError(f"malformed term: {data!r}")
    if "var" in data:
        i = data["var"]
        if not isinstance(i, int) or i < 0:
            raise ValueError(f"malformed variable index: {i!r}")
        return Var(i)
    if "fun" in data:
        name, args = data["fun"]
        if not is_name(name):
            raise ValueError(f"malformed function name: {name!r}")
        return Fun(name, tuple(term_from_json(a) for a in args))
    raise ValueError(f"malformed term: {data!r}")


def formula_to_json(p: Formula) -> dict:
    match p:
        case Falsity():
            return {"falsity": None}
        case Pre(name, args):
            return {"pre": [name, [term_to_json(a) for a in args]]}
        case Imp(a, b):
            return {"imp": [formula_to_json(a), formula_to_json(b)]}
        case Dis(a, b):
            return {"dis": [formula_to_json(a), formula_to_json(b)]}
        case Con(a, b):
            return {"con": [formula_to_json(a), formula_to_json(b)]}
        case Exi(body):
            return {"exi": formula_to_json(body)}
        case Uni(body):
            return {"uni": formula_to_json(body)}
    raise TypeError(f"not a formula: {p!r}")


def formula_from_json(data: object) -> Formula:
    if not isinstance(data, dict) or len(data) != 1:
        raise ValueError(f"malformed formula: {data!r}")
    key, value = next(iter(data.items()))
    if key == "falsity":
        return FALSITY
    if key == "pre":
        name, args = value
        if not is_name(name):
            raise ValueError(f"malformed predicate name: {name!r}")
        return Pre(name, tuple(term_from_json(a) for a in args))
    if key in ("imp", "dis", "con"):
        a, b = value
        ctor = {"imp": Imp, "dis": Dis, "con": Con}[key]
        return ctor(formula_from_json(a), formula_from_json(b))
    if key == "exi":
        return Exi(formula_from_json(value))
    if key == "uni":
        return Uni(formula_from_json(value))
    raise ValueError(f"malformed formula: {data!r}")
