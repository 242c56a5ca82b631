"""Corpus loading, reveal policies, validation at load time."""

from __future__ import annotations

import json
import shutil
from pathlib import Path

import pytest

from nadeum.exercises import (
    CorpusCorrupt,
    StepOutOfRange,
    Withheld,
    corpus_by_id,
    load_corpus,
    reveal,
)
from nadeum.exercises import _default_dir
from nadeum.kernel import Complete, replay
from nadeum.semantics import find_countermodel
from nadeum.syntax import parse_formula, free_var_bound


def test_corpus_size_and_ids():
    corpus = load_corpus()
    assert len(corpus) == 25
    ids = [ex.id for ex in corpus]
    assert ids == (
        [f"test-{i}" if k == 0 else f"hint-{i}" for i in range(1, 10) for k in (0, 1)]
        + [f"assign-{i}" for i in range(1, 6)]
        + ["example-1", "example-2"]
    )


def test_key_formulas():
    corpus = corpus_by_id()
    assert corpus["test-9"].formula == parse_formula("exi x. (A(x) -> uni x. A(x))")
    assert corpus["hint-5"].formula == parse_formula(
        "(A -> B -> C) -> (A -> B) -> A -> C"
    )
    assert corpus["assign-5"].formula == parse_formula("(A -> B) \\/ (B -> C)")
    assert corpus["assign-5"].solution is None


def test_policies():
    corpus = corpus_by_id()
    for i in range(1, 10):
        assert corpus[f"test-{i}"].reveal_policy == "full"
    for i in range(1, 9):
        assert corpus[f"hint-{i}"].reveal_policy == "stepwise"
    assert corpus["hint-9"].reveal_policy == "withheld"
    assert corpus["hint-9"].solution is not None  # bundled but not revealed
    for i in range(1, 6):
        assert corpus[f"assign-{i}"].reveal_policy == "withheld"
        assert corpus[f"assign-{i}"].solution is None


def test_all_bundled_solutions_replay_complete():
    for exercise in load_corpus():
        if exercise.solution is not None:
            assert isinstance(replay(exercise.solution), Complete), exercise.id


def test_all_formulas_are_sentences_without_countermodels():
    for exercise in load_corpus():
        assert free_var_bound(exercise.formula) is None, exercise.id
        assert find_countermodel(exercise.formula, 3) is None, exercise.id


def test_reveal_prefixes():
    corpus = corpus_by_id()
    test1 = corpus["test-1"]
    assert reveal(test1, 0).steps == ()
    full = reveal(test1, len(test1.solution.steps))
    assert full == test1.solution
    with pytest.raises(StepOutOfRange):
        reveal(test1, len(test1.solution.steps) + 1)
    with pytest.raises(StepOutOfRange):
        reveal(test1, -1)


def test_reveal_withheld():
    corpus = corpus_by_id()
    with pytest.raises(Withheld):
        reveal(corpus["assign-4"], 1)
    with pytest.raises(Withheld):
        reveal(corpus["hint-9"], 1)


def test_corrupt_corpus_detected(tmp_path: Path):
    src = _default_dir()
    work = tmp_path / "exercises"
    shutil.copytree(src, work)
    # damage test-1's script: replace the rule list with a losing one
    script_path = work / "test-1.json"
    data = json.loads(script_path.read_text())
    data["steps"] = [{"rule": "Con_I", "params": {}}]
    script_path.write_text(json.dumps(data))
    with pytest.raises(CorpusCorrupt) as exc:
        load_corpus(work)
    assert exc.value.exercise_id == "test-1"


def test_wrong_root_detected(tmp_path: Path):
    src = _default_dir()
    work = tmp_path / "exercises"
    shutil.copytree(src, work)
    manifest = json.loads((work / "manifest.json").read_text())
    for entry in manifest:
        if entry["id"] == "test-1":
            entry["formula"] = "A -> A"  # script still proves False -> False
    (work / "manifest.json").write_text(json.dumps(manifest))
    with pytest.raises(CorpusCorrupt):
        load_corpus(work)


def test_hint9_length_reported_against_paper_target():
    # soft target from the source material: a 42-line reference solution;
    # the bundled script is validated by replay, its length only reported
    corpus = corpus_by_id()
    bundled = len(corpus["hint-9"].solution.steps)
    assert isinstance(replay(corpus["hint-9"].solution), Complete)
    print(f"hint-9 bundled script: {bundled} steps (reference solution: 42)")
