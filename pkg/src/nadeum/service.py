"""JSON-over-HTTP session service for interactive proof construction.

Sessions are event-sourced: the store keeps only the root formula and the
apply/undo event log, and every view is projected from it, so state can
never drift from history.  An optional append-only journal (one JSON-lines
file per session) recovers sessions across restarts.  Requests within one
session are serialised by a per-session lock.

Environment: NADEUM_ADDR (serve address), NADEUM_SESSION_TTL (idle seconds,
default 24h), NADEUM_JOURNAL_DIR (enables journaling when set).
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from . import exercises as exercises_mod
from .exercises import StepOutOfRange, Withheld, reveal
from .kernel import (
    NothingToUndo,
    IncompleteProof,
    ProofState,
    RuleError,
    SessionHistory,
    application_from_json,
    applicable_rules,
    export_certificate,
    formula_from_json,
    history_apply,
    history_undo,
    project,
    trim,
)
from .prover import Feedback, Provable, Refuted, SearchConfig, Unknown, hint
from .syntax import (
    ArityError,
    Exi,
    ParseError,
    Uni,
    formula_to_json,
    fresh_constant,
    parse_formula,
    parse_term,
    print_formula,
    term_to_json,
)

DEFAULT_TTL_SECONDS = 24 * 60 * 60


@dataclass
class Session:
    id: str
    history: SessionHistory
    created: float
    last_active: float
    exercise_id: str | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory sessions with optional journal recovery and idle expiry."""

    def __init__(self, journal_dir: Path | None, ttl_seconds: float, clock=time.time):
        self.journal_dir = journal_dir
        self.ttl = ttl_seconds
        self.clock = clock
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()
        if journal_dir is not None:
            journal_dir.mkdir(parents=True, exist_ok=True)
            self._recover()

    def _journal_path(self, session_id: str) -> Path | None:
        if self.journal_dir is None:
            return None
        return self.journal_dir / f"{session_id}.jsonl"

    def _recover(self) -> None:
        assert self.journal_dir is not None
        for path in sorted(self.journal_dir.glob("*.jsonl")):
            try:
                lines = [json.loads(line) for line in path.read_text().splitlines() if line]
                if not lines:
                    continue
                head = lines[0]
                history = SessionHistory(formula_from_json(head["root"]))
                for event in lines[1:]:
                    if event.get("type") == "apply":
                        history = history_apply(
                            history, application_from_json(event["application"])
                        )
                    elif event.get("type") == "undo":
                        history = history_undo(history)
                session = Session(
                    id=path.stem,
                    history=history,
                    created=head.get("created", self.clock()),
                    last_active=head.get("created", self.clock()),
                    exercise_id=head.get("exercise"),
                )
                self.sessions[session.id] = session
            except (ValueError, KeyError, RuleError):
                continue  # an unreadable journal must not block startup

    def _append_journal(self, session: Session, record: dict) -> None:
        path = self._journal_path(session.id)
        if path is None:
            return
        with path.open("a") as fh:
            fh.write(json.dumps(record) + "\n")

    def create(self, history: SessionHistory, exercise_id: str | None) -> Session:
        now = self.clock()
        session = Session(
            id=uuid.uuid4().hex,
            history=history,
            created=now,
            last_active=now,
            exercise_id=exercise_id,
        )
        with self.lock:
            self.sessions[session.id] = session
        self._append_journal(
            session,
            {
                "root": formula_to_json(history.root),
                "exercise": exercise_id,
                "created": now,
            },
        )
        return session

    def get(self, session_id: str) -> Session | None:
        with self.lock:
            session = self.sessions.get(session_id)
            if session is None:
                return None
            if self.clock() - session.last_active > self.ttl:
                del self.sessions[session_id]
                return None
            session.last_active = self.clock()
            return session

    def record_apply(self, session: Session, application) -> None:
        self._append_journal(
            session, {"type": "apply", "application": application.to_json()}
        )

    def record_undo(self, session: Session) -> None:
        self._append_journal(session, {"type": "undo"})


def state_view(session: Session, state: ProofState) -> dict:
    goals = []
    for goal in state.open_goals:
        goals.append(
            {
                "assumptions": [print_formula(a) for a in goal.assumptions],
                "conclusion": print_formula(goal.conclusion),
            }
        )
    view: dict[str, object] = {
        "session": session.id,
        "step": state.step_counter,
        "completed": state.completed,
        "goals": goals,
    }
    if state.open_goals:
        first = state.open_goals[0]
        view["applicable_rules"] = sorted(applicable_rules(first))
        view["fresh_suggestion"] = fresh_constant(
            first.assumptions + (first.conclusion,)
        )
    else:
        view["applicable_rules"] = []
    if session.exercise_id:
        view["exercise"] = session.exercise_id
    return view


def feedback_json(fb: Feedback) -> dict:
    match fb:
        case Provable(script):
            return {
                "status": "provable",
                "steps": len(script.steps),
                "script": script.to_json(),
            }
        case Refuted(countermodel):
            return {"status": "refuted", "countermodel": countermodel.to_json()}
        case Unknown(reason):
            return {"status": "unknown", "reason": reason}
    raise TypeError(f"not feedback: {fb!r}")


def _error(status: int, kind: str, detail: str, **extra) -> JSONResponse:
    return JSONResponse({"error": kind, "detail": detail, **extra}, status_code=status)


def normalize_params(payload: dict) -> dict:
    """Allow rule parameters as surface text next to the canonical JSON form.

    Formula-valued parameters parse as formulas; witnesses parse as terms; a
    body parameter is given as the quantified formula (uni x. ... or
    exi x. ...) whose body is taken, so the client never handles variable
    indices itself.
    """
    params = payload.get("params")
    if not isinstance(params, dict):
        return payload
    converted: dict[str, object] = {}
    for key, value in params.items():
        if not isinstance(value, str) or key == "fresh":
            converted[key] = value
            continue
        if key == "witness":
            converted[key] = term_to_json(parse_term(value))
        elif key == "body":
            quantified = parse_formula(value)
            if not isinstance(quantified, (Uni, Exi)):
                raise ParseError(
                    "a body parameter must be written as a quantified formula", 0
                )
            converted[key] = formula_to_json(quantified.body)
        else:
            converted[key] = formula_to_json(parse_formula(value))
    return {**payload, "params": converted}


def create_app(
    *,
    journal_dir: Path | None = None,
    session_ttl: float | None = None,
    clock=time.time,
) -> FastAPI:
    if journal_dir is None and os.environ.get("NADEUM_JOURNAL_DIR"):
        journal_dir = Path(os.environ["NADEUM_JOURNAL_DIR"])
    if session_ttl is None:
        session_ttl = float(os.environ.get("NADEUM_SESSION_TTL", DEFAULT_TTL_SECONDS))

    app = FastAPI(title="nadeum", version="0.1.0")
    # the browser UI may be served from a different origin; there is no
    # authentication to protect, so open CORS is fine here
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(journal_dir, session_ttl, clock)
    corpus = exercises_mod.corpus_by_id()
    app.state.store = store

    def _session_or_error(session_id: str) -> Session | JSONResponse:
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown_session", f"no session {session_id}")
        return session

    @app.exception_handler(ParseError)
    async def _parse_error(request: Request, exc: ParseError):
        payload = {"offset": exc.offset, "expected": list(exc.expected)}
        kind = "arity" if isinstance(exc, ArityError) else "parse"
        return _error(400, kind, str(exc), **payload)

    @app.post("/sessions")
    async def create_session(body: dict):
        exercise_id = body.get("exercise")
        if exercise_id is not None:
            exercise = corpus.get(exercise_id)
            if exercise is None:
                return _error(404, "unknown_exercise", f"no exercise {exercise_id}")
            root = exercise.formula
        elif "formula" in body:
            root = parse_formula(body["formula"])
        else:
            return _error(400, "bad_request", "provide a formula or an exercise id")
        session = store.create(SessionHistory(root), exercise_id)
        return {"id": session.id, "view": state_view(session, project(session.history))}

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        session = _session_or_error(session_id)
        if isinstance(session, JSONResponse):
            return session
        with session.lock:
            return state_view(session, project(session.history))

    @app.post("/sessions/{session_id}/apply")
    async def apply_step(session_id: str, body: dict):
        session = _session_or_error(session_id)
        if isinstance(session, JSONResponse):
            return session
        try:
            application = application_from_json(normalize_params(body))
        except ParseError:
            raise
        except ValueError as exc:
            return _error(400, "bad_application", str(exc))
        with session.lock:
            try:
                session.history = history_apply(session.history, application)
            except RuleError as exc:
                return _error(409, type(exc).__name__, str(exc))
            store.record_apply(session, application)
            return state_view(session, project(session.history))

    @app.post("/sessions/{session_id}/undo")
    async def undo_step(session_id: str):
        session = _session_or_error(session_id)
        if isinstance(session, JSONResponse):
            return session
        with session.lock:
            try:
                session.history = history_undo(session.history)
            except NothingToUndo as exc:
                return _error(409, "NothingToUndo", str(exc))
            store.record_undo(session)
            return state_view(session, project(session.history))

    @app.get("/sessions/{session_id}/hint")
    async def session_hint(
        session_id: str,
        depth: int = 12,
        budget: int = 5000,
        classical: bool = True,
        max_universe: int = 3,
    ):
        session = _session_or_error(session_id)
        if isinstance(session, JSONResponse):
            return session
        cfg = SearchConfig(
            max_depth=depth,
            time_budget_ms=budget,
            classical=classical,
            countermodel_max_universe=max_universe,
        )
        with session.lock:
            state = project(session.history)
        return {"feedback": [feedback_json(fb) for fb in hint(state, cfg)]}

    @app.post("/sessions/{session_id}/trim")
    async def trim_session(session_id: str):
        session = _session_or_error(session_id)
        if isinstance(session, JSONResponse):
            return session
        with session.lock:
            return trim(session.history).to_json()

    @app.get("/sessions/{session_id}/certificate")
    async def certificate(session_id: str):
        session = _session_or_error(session_id)
        if isinstance(session, JSONResponse):
            return session
        with session.lock:
            script = trim(session.history)
        try:
            return PlainTextResponse(export_certificate(script))
        except IncompleteProof as exc:
            return _error(409, "IncompleteProof", str(exc))

    @app.get("/exercises")
    async def list_exercises():
        return {"exercises": [ex.to_json() for ex in corpus.values()]}

    @app.get("/exercises/{exercise_id}")
    async def get_exercise(exercise_id: str):
        exercise = corpus.get(exercise_id)
        if exercise is None:
            return _error(404, "unknown_exercise", f"no exercise {exercise_id}")
        return exercise.to_json()

    @app.get("/exercises/{exercise_id}/reveal")
    async def reveal_exercise(exercise_id: str, steps: int = 0):
        exercise = corpus.get(exercise_id)
        if exercise is None:
            return _error(404, "unknown_exercise", f"no exercise {exercise_id}")
        try:
            prefix = reveal(exercise, steps)
        except Withheld as exc:
            return _error(403, "Withheld", str(exc))
        except StepOutOfRange as exc:
            return _error(400, "StepOutOfRange", str(exc))
        return prefix.to_json()

    return app


def serve(addr: str | None = None) -> None:
    """Run the service with uvicorn; addr is host:port."""
    import uvicorn

    addr = addr or os.environ.get("NADEUM_ADDR", "127.0.0.1:8000")
    host, _, port = addr.rpartition(":")
    uvicorn.run(create_app(), host=host or "127.0.0.1", port=int(port))
