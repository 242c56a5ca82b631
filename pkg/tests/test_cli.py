"""Command-line subcommands and exit codes."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from nadeum.cli import main
from nadeum.exercises import corpus_by_id
from nadeum.hilbert import imp_refl_proof, proof_to_json, HilbertLine, HilbertProof, MPRef
from nadeum.kernel import Apply, ProofScript, RuleApplication, SessionHistory, Undo
from nadeum.syntax import FALSITY, Imp, parse_formula


@pytest.fixture()
def test1_script(tmp_path: Path) -> Path:
    script = corpus_by_id()["test-1"].solution
    path = tmp_path / "test1.json"
    path.write_text(json.dumps(script.to_json()))
    return path


def test_check_complete(test1_script, capsys):
    assert main(["check", str(test1_script)]) == 0
    assert "Complete" in capsys.readouterr().out


def test_check_incomplete(tmp_path, capsys):
    script = ProofScript(parse_formula("A -> A"), ())
    path = tmp_path / "s.json"
    path.write_text(json.dumps(script.to_json()))
    assert main(["check", str(path)]) == 1
    assert "Incomplete" in capsys.readouterr().out


def test_check_rejected(tmp_path, capsys):
    script = ProofScript(parse_formula("False -> False"), (RuleApplication("Con_I"),))
    path = tmp_path / "s.json"
    path.write_text(json.dumps(script.to_json()))
    assert main(["check", str(path)]) == 2
    assert "Rejected at step 1" in capsys.readouterr().out


def test_prove_provable(capsys):
    assert main(["prove", "A -> A"]) == 0
    out = capsys.readouterr().out
    data = json.loads(out)
    assert data["format"] == 1


def test_prove_refuted(capsys):
    assert main(["prove", "A"]) == 1
    assert "Refuted" in capsys.readouterr().out


def test_prove_unknown_without_classical(capsys):
    assert main(["prove", "A \\/ (A -> False)", "--no-classical", "--budget", "30000"]) == 2
    assert "Unknown" in capsys.readouterr().out


def test_countermodel_found(capsys):
    assert main(["countermodel", "A \\/ B"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["universe_size"] == 1


def test_countermodel_none(capsys):
    assert main(["countermodel", "A -> A", "--max-universe", "2"]) == 1
    assert "no countermodel" in capsys.readouterr().out


def test_trim_subcommand(tmp_path, capsys):
    history = SessionHistory(
        parse_formula("A -> A"),
        (
            Apply(RuleApplication("Boole")),
            Undo(),
            Apply(RuleApplication("Imp_I")),
            Apply(RuleApplication("Assume")),
        ),
    )
    path = tmp_path / "h.json"
    path.write_text(json.dumps(history.to_json()))
    assert main(["trim", str(path)]) == 0
    script = json.loads(capsys.readouterr().out)
    assert [s["rule"] for s in script["steps"]] == ["Imp_I", "Assume"]


def test_export_subcommand(test1_script, capsys):
    assert main(["export", str(test1_script)]) == 0
    assert "OK (Imp Falsity Falsity) []" in capsys.readouterr().out


def test_export_incomplete_fails(tmp_path, capsys):
    script = ProofScript(Imp(FALSITY, FALSITY), ())
    path = tmp_path / "s.json"
    path.write_text(json.dumps(script.to_json()))
    assert main(["export", str(path)]) == 1


def test_hilbert_check(tmp_path, capsys):
    path = tmp_path / "proof.json"
    path.write_text(json.dumps(proof_to_json(imp_refl_proof())))
    assert main(["hilbert", "check", str(path)]) == 0
    assert "Accepted" in capsys.readouterr().out

    broken = imp_refl_proof()
    lines = list(broken.lines)
    lines[2] = HilbertLine(3, lines[2].formula, MPRef(3, 4))
    path.write_text(json.dumps(proof_to_json(HilbertProof(tuple(lines), broken.claim))))
    assert main(["hilbert", "check", str(path)]) == 1
    assert "forward MP citation" in capsys.readouterr().out


def test_exercises_run(capsys):
    assert main(["exercises", "run"]) == 0
    out = capsys.readouterr().out
    assert "20/20 bundled solutions Complete" in out
    assert "test-9" in out and "assign-1" in out


def test_malformed_input_exit_3(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert main(["check", str(path)]) == 3
