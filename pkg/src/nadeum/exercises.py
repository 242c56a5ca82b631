"""The bundled exercise corpus: formulas, solution scripts, reveal policy.

Exercises live as a manifest plus one proof-script JSON file per solved
entry.  Loading replays every bundled script so a corrupted file can never
reach a session; assignment solutions are withheld by policy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .kernel import Complete, ProofScript, replay, script_from_json
from .syntax import Formula, parse_formula

POLICIES = ("full", "stepwise", "withheld")


class CorpusCorrupt(Exception):
    def __init__(self, exercise_id: str, detail: str):
        self.exercise_id = exercise_id
        super().__init__(f"exercise {exercise_id}: {detail}")


class Withheld(Exception):
    def __init__(self, exercise_id: str):
        self.exercise_id = exercise_id
        super().__init__(f"the solution to {exercise_id} is not provided")


class StepOutOfRange(Exception):
    def __init__(self, upto: int, available: int):
        self.upto = upto
        self.available = available
        super().__init__(f"step {upto} outside the solution's {available} steps")


@dataclass(frozen=True)
class Exercise:
    id: str
    title: str
    surface: str
    formula: Formula
    reveal_policy: str
    solution: ProofScript | None

    def to_json(self, with_solution: bool = False) -> dict:
        out: dict[str, object] = {
            "id": self.id,
            "title": self.title,
            "formula": self.surface,
            "policy": self.reveal_policy,
            "steps": len(self.solution.steps) if self.solution else None,
        }
        if with_solution and self.solution is not None:
            out["solution"] = self.solution.to_json()
        return out


def _default_dir() -> Path:
    return Path(str(resources.files("nadeum") / "data" / "exercises"))


def load_corpus(data_dir: Path | None = None) -> list[Exercise]:
    """All exercises from the manifest; bundled scripts are replay-checked."""
    base = Path(data_dir) if data_dir is not None else _default_dir()
    try:
        manifest = json.loads((base / "manifest.json").read_text())
    except (OSError, ValueError) as exc:
        raise CorpusCorrupt("manifest", str(exc)) from exc
    exercises: list[Exercise] = []
    for entry in manifest:
        exercise_id = entry.get("id", "?")
        policy = entry.get("policy")
        if policy not in POLICIES:
            raise CorpusCorrupt(exercise_id, f"unknown policy {policy!r}")
        try:
            formula = parse_formula(entry["formula"])
        except (KeyError, ValueError) as exc:
            raise CorpusCorrupt(exercise_id, f"bad formula: {exc}") from exc
        solution: ProofScript | None = None
        if entry.get("script"):
            try:
                data = json.loads((base / entry["script"]).read_text())
                solution = script_from_json(data)
            except (OSError, ValueError) as exc:
                raise CorpusCorrupt(exercise_id, f"bad script: {exc}") from exc
            if solution.root != formula:
                raise CorpusCorrupt(exercise_id, "script proves a different formula")
            verdict = replay(solution)
            if not isinstance(verdict, Complete):
                raise CorpusCorrupt(exercise_id, f"bundled solution fails replay: {verdict}")
        exercises.append(
            Exercise(
                id=exercise_id,
                title=entry.get("title", exercise_id),
                surface=entry["formula"],
                formula=formula,
                reveal_policy=policy,
                solution=solution,
            )
        )
    return exercises


def corpus_by_id(data_dir: Path | None = None) -> dict[str, Exercise]:
    return {ex.id: ex for ex in load_corpus(data_dir)}


def reveal(exercise: Exercise, upto_step: int) -> ProofScript:
    """The first upto_step steps of the bundled solution."""
    if exercise.reveal_policy == "withheld":
        raise Withheld(exercise.id)
    if exercise.solution is None:
        raise Withheld(exercise.id)
    if upto_step < 0 or upto_step > len(exercise.solution.steps):
        raise StepOutOfRange(upto_step, len(exercise.solution.steps))
    return ProofScript(exercise.solution.root, exercise.solution.steps[:upto_step])
