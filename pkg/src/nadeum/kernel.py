"""The trusted proof kernel: goals, backward rule application, histories.

A goal is an assumption list paired with a conclusion; a proof is complete
when no goals remain.  Rules are applied backward to the first open goal
and replace it by their premises.  Everything here is immutable; session
histories are event logs (apply/undo) projected to states on demand.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    FALSITY,
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
    formula_from_json,
    formula_to_json,
    is_name,
    news,
    print_formula,
    put_unis,
    strip_unis,
    sub,
    term_from_json,
    term_to_json,
)

RULES = (
    "Assume",
    "Boole",
    "Imp_E",
    "Imp_I",
    "Dis_E",
    "Dis_I1",
    "Dis_I2",
    "Con_E1",
    "Con_E2",
    "Con_I",
    "Exi_E",
    "Exi_I",
    "Uni_E",
    "Uni_I",
)

SCRIPT_FORMAT = 1


class RuleError(Exception):
    """Base for all rejections of a rule application."""


class NotApplicable(RuleError):
    def __init__(self, rule: str, reason: str):
        self.rule = rule
        self.reason = reason
        super().__init__(f"{rule}: {reason}")


class ShapeMismatch(RuleError):
    def __init__(self, rule: str, reason: str):
        self.rule = rule
        self.reason = reason
        super().__init__(f"{rule}: {reason}")


class FreshnessViolation(RuleError):
    def __init__(self, rule: str, name: str):
        self.rule = rule
        self.name = name
        super().__init__(f"{rule}: constant {name!r} already occurs in the goal")


class NoOpenGoals(RuleError):
    def __init__(self) -> None:
        super().__init__("the proof is already complete")


class NothingToUndo(RuleError):
    def __init__(self) -> None:
        super().__init__("already at the very first proof step")


class IncompleteProof(Exception):
    def __init__(self, detail: str):
        super().__init__(f"certificate requires a complete proof: {detail}")


@dataclass(frozen=True)
class Goal:
    assumptions: tuple[Formula, ...]
    conclusion: Formula

    def render(self) -> str:
        left = ", ".join(print_formula(a) for a in self.assumptions)
        return f"{left} |- {print_formula(self.conclusion)}" if left else f"|- {print_formula(self.conclusion)}"


@dataclass(frozen=True)
class RuleApplication:
    """One backward rule instance; parameter fields are rule-specific.

    cut:     Imp_E
    left/right: Dis_E
    other:   Con_E1 (right conjunct) and Con_E2 (left conjunct)
    witness: Exi_I and Uni_E
    body:    Exi_E and Uni_E (the quantified body)
    fresh:   Exi_E and Uni_I (the new constant name)
    """

    rule: str
    cut: Formula | None = None
    left: Formula | None = None
    right: Formula | None = None
    other: Formula | None = None
    witness: Term | None = None
    body: Formula | None = None
    fresh: str | None = None

    def params_json(self) -> dict:
        out: dict[str, object] = {}
        if self.cut is not None:
            out["cut"] = formula_to_json(self.cut)
        if self.left is not None:
            out["left"] = formula_to_json(self.left)
        if self.right is not None:
            out["right"] = formula_to_json(self.right)
        if self.other is not None:
            out["other"] = formula_to_json(self.other)
        if self.witness is not None:
            out["witness"] = term_to_json(self.witness)
        if self.body is not None:
            out["body"] = formula_to_json(self.body)
        if self.fresh is not None:
            out["fresh"] = self.fresh
        return out

    def to_json(self) -> dict:
        return {"rule": self.rule, "params": self.params_json()}


_PARAM_FIELDS = {
    "Assume": (),
    "Boole": (),
    "Imp_E": ("cut",),
    "Imp_I": (),
    "Dis_E": ("left", "right"),
    "Dis_I1": (),
    "Dis_I2": (),
    "Con_E1": ("other",),
    "Con_E2": ("other",),
    "Con_I": (),
    "Exi_E": ("body", "fresh"),
    "Exi_I": ("witness",),
    "Uni_E": ("body", "witness"),
    "Uni_I": ("fresh",),
}

_ALL_PARAM_FIELDS = ("cut", "left", "right", "other", "witness", "body", "fresh")


def application_from_json(data: object) -> RuleApplication:
    if not isinstance(data, dict) or "rule" not in data:
        raise ValueError(f"malformed rule application: {data!r}")
    rule = data["rule"]
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}")
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise ValueError(f"malformed params: {params!r}")
    wanted = _PARAM_FIELDS[rule]
    extra = set(params) - set(wanted)
    if extra:
        raise ValueError(f"{rule} does not take parameters {sorted(extra)}")
    kwargs: dict[str, object] = {}
    for name in wanted:
        if name not in params:
            raise ValueError(f"{rule} requires parameter {name!r}")
        value = params[name]
        if name == "fresh":
            if not isinstance(value, str) or not is_name(value):
                raise ValueError(f"malformed constant name {value!r}")
            kwargs[name] = value
        elif name == "witness":
            kwargs[name] = term_from_json(value)
        else:
            kwargs[name] = formula_from_json(value)
    return RuleApplication(rule, **kwargs)


def _check_params(app: RuleApplication) -> None:
    if app.rule not in RULES:
        raise NotApplicable(app.rule, "unknown rule")
    wanted = _PARAM_FIELDS[app.rule]
    for name in _ALL_PARAM_FIELDS:
        value = getattr(app, name)
        if name in wanted and value is None:
            raise NotApplicable(app.rule, f"missing parameter {name!r}")
        if name not in wanted and value is not None:
            raise NotApplicable(app.rule, f"unexpected parameter {name!r}")


@dataclass(frozen=True)
class ProofState:
    open_goals: tuple[Goal, ...]
    step_counter: int

    @property
    def completed(self) -> bool:
        return not self.open_goals


@dataclass(frozen=True)
class ProofScript:
    root: Formula
    steps: tuple[RuleApplication, ...]

    def to_json(self) -> dict:
        return {
            "format": SCRIPT_FORMAT,
            "root": formula_to_json(self.root),
            "steps": [s.to_json() for s in self.steps],
        }


def script_from_json(data: object) -> ProofScript:
    if not isinstance(data, dict):
        raise ValueError(f"malformed proof script: {data!r}")
    if data.get("format") != SCRIPT_FORMAT:
        raise ValueError(f"unsupported script format {data.get('format')!r}")
    root = formula_from_json(data["root"])
    steps = tuple(application_from_json(s) for s in data.get("steps", []))
    return ProofScript(root, steps)


def initial_state(p: Formula) -> ProofState:
    return ProofState((Goal((), p),), 1)


def rule_premises(goal: Goal, app: RuleApplication) -> tuple[Goal, ...]:
    """Premise goals of applying app backward to goal, or a RuleError."""
    _check_params(app)
    z = goal.assumptions
    phi = goal.conclusion
    match app.rule:
        case "Assume":
            if phi not in z:
                raise NotApplicable("Assume", "conclusion is not among the assumptions")
            return ()
        case "Boole":
            return (Goal((Imp(phi, FALSITY),) + z, FALSITY),)
        case "Imp_E":
            assert app.cut is not None
            return (Goal(z, Imp(app.cut, phi)), Goal(z, app.cut))
        case "Imp_I":
            if not isinstance(phi, Imp):
                raise NotApplicable("Imp_I", "conclusion is not an implication")
            return (Goal((phi.left,) + z, phi.right),)
        case "Dis_E":
            assert app.left is not None and app.right is not None
            return (
                Goal(z, Dis(app.left, app.right)),
                Goal((app.left,) + z, phi),
                Goal((app.right,) + z, phi),
            )
        case "Dis_I1":
            if not isinstance(phi, Dis):
                raise NotApplicable("Dis_I1", "conclusion is not a disjunction")
            return (Goal(z, phi.left),)
        case "Dis_I2":
            if not isinstance(phi, Dis):
                raise NotApplicable("Dis_I2", "conclusion is not a disjunction")
            return (Goal(z, phi.right),)
        case "Con_E1":
            assert app.other is not None
            return (Goal(z, Con(phi, app.other)),)
        case "Con_E2":
            assert app.other is not None
            return (Goal(z, Con(app.other, phi)),)
        case "Con_I":
            if not isinstance(phi, Con):
                raise NotApplicable("Con_I", "conclusion is not a conjunction")
            return (Goal(z, phi.left), Goal(z, phi.right))
        case "Exi_E":
            assert app.body is not None and app.fresh is not None
            if not news(app.fresh, (app.body, phi) + z):
                raise FreshnessViolation("Exi_E", app.fresh)
            instance = sub(0, Fun(app.fresh), app.body)
            return (Goal(z, Exi(app.body)), Goal((instance,) + z, phi))
        case "Exi_I":
            if not isinstance(phi, Exi):
                raise NotApplicable("Exi_I", "conclusion is not existential")
            assert app.witness is not None
            return (Goal(z, sub(0, app.witness, phi.body)),)
        case "Uni_E":
            assert app.body is not None and app.witness is not None
            if sub(0, app.witness, app.body) != phi:
                raise ShapeMismatch(
                    "Uni_E", "conclusion is not the body instantiated at the witness"
                )
            return (Goal(z, Uni(app.body)),)
        case "Uni_I":
            if not isinstance(phi, Uni):
                raise NotApplicable("Uni_I", "conclusion is not universal")
            assert app.fresh is not None
            if not news(app.fresh, (phi.body,) + z):
                raise FreshnessViolation("Uni_I", app.fresh)
            return (Goal(z, sub(0, Fun(app.fresh), phi.body)),)
    raise NotApplicable(app.rule, "unknown rule")


def apply_rule(state: ProofState, app: RuleApplication) -> ProofState:
    """Replace the first open goal by the premises of app; new goals go first."""
    if not state.open_goals:
        raise NoOpenGoals()
    premises = rule_premises(state.open_goals[0], app)
    return ProofState(premises + state.open_goals[1:], state.step_counter + 1)


def applicable_rules(goal: Goal) -> frozenset[str]:
    """Rules whose backward application to goal can succeed for some params.

    Parameterised eliminations and Boole always qualify: Boole, Imp_E,
    Dis_E, Con_E1/2 and Exi_E need only a parameter choice, and Uni_E
    succeeds with the vacuously lifted conclusion as body.
    """
    rules = {"Boole", "Imp_E", "Dis_E", "Con_E1", "Con_E2", "Exi_E", "Uni_E"}
    if goal.conclusion in goal.assumptions:
        rules.add("Assume")
    match goal.conclusion:
        case Imp(_, _):
            rules.add("Imp_I")
        case Dis(_, _):
            rules.update(("Dis_I1", "Dis_I2"))
        case Con(_, _):
            rules.add("Con_I")
        case Exi(_):
            rules.add("Exi_I")
        case Uni(_):
            rules.add("Uni_I")
    return frozenset(rules)


# ---------------------------------------------------------------------------
# Replay


@dataclass(frozen=True)
class Complete:
    state: ProofState


@dataclass(frozen=True)
class Incomplete:
    state: ProofState


@dataclass(frozen=True)
class Rejected:
    step_index: int
    error: RuleError


Verdict = Complete | Incomplete | Rejected


def replay(script: ProofScript) -> Verdict:
    """Fold the script's steps over the initial state; errors are returned."""
    state = initial_state(script.root)
    for i, app in enumerate(script.steps, start=1):
        try:
            state = apply_rule(state, app)
        except RuleError as err:
            return Rejected(i, err)
    return Complete(state) if state.completed else Incomplete(state)


# ---------------------------------------------------------------------------
# Histories: apply/undo event logs


@dataclass(frozen=True)
class Apply:
    application: RuleApplication


@dataclass(frozen=True)
class Undo:
    pass


Event = Apply | Undo


@dataclass(frozen=True)
class SessionHistory:
    root: Formula
    events: tuple[Event, ...] = ()

    def to_json(self) -> dict:
        return {
            "format": SCRIPT_FORMAT,
            "root": formula_to_json(self.root),
            "events": [
                e.application.to_json() if isinstance(e, Apply) else "undo"
                for e in self.events
            ],
        }


def history_from_json(data: object) -> SessionHistory:
    if not isinstance(data, dict):
        raise ValueError(f"malformed history: {data!r}")
    if data.get("format") != SCRIPT_FORMAT:
        raise ValueError(f"unsupported history format {data.get('format')!r}")
    root = formula_from_json(data["root"])
    events: list[Event] = []
    for entry in data.get("events", []):
        if entry == "undo":
            events.append(Undo())
        else:
            events.append(Apply(application_from_json(entry)))
    return SessionHistory(root, tuple(events))


def _state_stack(history: SessionHistory) -> list[ProofState]:
    stack = [initial_state(history.root)]
    for event in history.events:
        if isinstance(event, Apply):
            stack.append(apply_rule(stack[-1], event.application))
        else:
            if len(stack) == 1:
                raise NothingToUndo()
            stack.pop()
    return stack


def project(history: SessionHistory) -> ProofState:
    """The proof state after all events; undo pops to the prior state."""
    return _state_stack(history)[-1]


def history_apply(history: SessionHistory, app: RuleApplication) -> SessionHistory:
    """Append an apply event, validating it against the projected state."""
    apply_rule(project(history), app)
    return SessionHistory(history.root, history.events + (Apply(app),))


def history_undo(history: SessionHistory) -> SessionHistory:
    """Append an undo event; rejected at the very first proof step."""
    applies = sum(1 for e in history.events if isinstance(e, Apply))
    undos = len(history.events) - applies
    if applies - undos <= 0:
        raise NothingToUndo()
    return SessionHistory(history.root, history.events + (Undo(),))


def trim(history: SessionHistory) -> ProofScript:
    """Cancel undo events against their applies, leaving a linear script."""
    kept: list[RuleApplication] = []
    for event in history.events:
        if isinstance(event, Apply):
            kept.append(event.application)
        else:
            if not kept:
                raise NothingToUndo()
            kept.pop()
    return ProofScript(history.root, tuple(kept))


# ---------------------------------------------------------------------------
# Certificate export


def _isa_wrap(rendered: str) -> str:
    # constructor applications need parentheses as arguments; single tokens
    # and list literals do not
    if " " in rendered and not rendered.startswith("("):
        return f"({rendered})"
    return rendered


def _isa_term(t: Term) -> str:
    match t:
        case Var(i):
            return f"Var {i}"
        case Fun(name, args):
            rendered = ", ".join(_isa_term(a) for a in args)
            return f"Fun ''{name}'' [{rendered}]"
    raise TypeError(f"not a term: {t!r}")


def _isa_formula(p: Formula) -> str:
    match p:
        case Falsity():
            return "Falsity"
        case Pre(name, args):
            rendered = ", ".join(_isa_term(a) for a in args)
            return f"Pre ''{name}'' [{rendered}]"
        case Imp(a, b):
            return f"Imp {_isa_wrap(_isa_formula(a))} {_isa_wrap(_isa_formula(b))}"
        case Dis(a, b):
            return f"Dis {_isa_wrap(_isa_formula(a))} {_isa_wrap(_isa_formula(b))}"
        case Con(a, b):
            return f"Con {_isa_wrap(_isa_formula(a))} {_isa_wrap(_isa_formula(b))}"
        case Exi(body):
            return f"Exi {_isa_wrap(_isa_formula(body))}"
        case Uni(body):
            return f"Uni {_isa_wrap(_isa_formula(body))}"
    raise TypeError(f"not a formula: {p!r}")


def export_certificate(script: ProofScript) -> str:
    """Theory-file text asserting OK for the root and its outer-Uni variants.

    Emission only: the text states the root judgment plus every version of
    the root with some outer universal quantifiers removed, matching the
    interchangeability of leading universal quantifiers for provability.
    """
    verdict = replay(script)
    if isinstance(verdict, Rejected):
        raise IncompleteProof(f"step {verdict.step_index} was rejected ({verdict.error})")
    if isinstance(verdict, Incomplete):
        raise IncompleteProof(f"{len(verdict.state.open_goals)} goals still open")
    k, body = strip_unis(script.root)
    lines = [
        "theory Proof_Certificate",
        "  imports Natural_Deduction_Assistant",
        "begin",
        "",
        f"(* checked proof with {len(script.steps)} steps for: "
        f"{print_formula(script.root)} *)",
        "",
    ]
    for j in range(k, -1, -1):
        variant = put_unis(j, body)
        note = " (* as proved *)" if j == k else " (* outer quantifier removed *)"
        lines.append(f'proposition "OK ({_isa_formula(variant)}) []"{note}')
        lines.append("  oops")
        lines.append("")
    lines.append("end")
    return "\n".join(lines) + "\n"
