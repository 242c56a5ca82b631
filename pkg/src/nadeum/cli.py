"""Batch command line: check, prove, countermodel, trim, export, hilbert,
exercises, serve.

Exit codes: `check` returns 0/1/2 for Complete/Incomplete/Rejected; `prove`
returns 0 for Provable, 1 for Refuted, 2 for Unknown; `countermodel`
returns 0 when a model is found and 1 for none-found; `exercises run` and
`hilbert check` return 0 on success and 1 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .exercises import load_corpus
from .hilbert import Accepted, check_hilbert, proof_from_json
from .kernel import (
    Complete,
    Goal,
    Incomplete,
    IncompleteProof,
    Rejected,
    export_certificate,
    history_from_json,
    replay,
    script_from_json,
    trim,
)
from .prover import Provable, Refuted, SearchConfig, Unknown, prove
from .semantics import find_countermodel
from .syntax import parse_formula


def _load_json(path: str) -> object:
    return json.loads(Path(path).read_text())


def cmd_check(args: argparse.Namespace) -> int:
    script = script_from_json(_load_json(args.script))
    verdict = replay(script)
    match verdict:
        case Complete(state):
            print(f"Complete: {len(script.steps)} steps, final step counter {state.step_counter}")
            return 0
        case Incomplete(state):
            print(f"Incomplete: {len(state.open_goals)} open goals")
            for goal in state.open_goals:
                print(f"  {goal.render()}")
            return 1
        case Rejected(index, error):
            print(f"Rejected at step {index}: {error}")
            return 2
    raise AssertionError(verdict)


def cmd_prove(args: argparse.Namespace) -> int:
    goal = Goal((), parse_formula(args.formula))
    cfg = SearchConfig(
        max_depth=args.depth,
        max_term_depth=args.term_depth,
        classical=not args.no_classical,
        time_budget_ms=args.budget,
        countermodel_max_universe=args.max_universe,
    )
    feedback = prove(goal, cfg)
    match feedback:
        case Provable(script):
            json.dump(script.to_json(), sys.stdout, indent=1)
            print()
            return 0
        case Refuted(countermodel):
            print("Refuted: countermodel found")
            json.dump(countermodel.to_json(), sys.stdout, indent=1)
            print()
            return 1
        case Unknown(reason):
            print(f"Unknown: {reason}")
            return 2
    raise AssertionError(feedback)


def cmd_countermodel(args: argparse.Namespace) -> int:
    formula = parse_formula(args.formula)
    result = find_countermodel(formula, args.max_universe, budget=args.budget)
    if result is None:
        print(
            f"no countermodel up to universe size {args.max_universe}"
            " (not a validity claim)"
        )
        return 1
    json.dump(result.to_json(), sys.stdout, indent=1)
    print()
    return 0


def cmd_trim(args: argparse.Namespace) -> int:
    history = history_from_json(_load_json(args.history))
    json.dump(trim(history).to_json(), sys.stdout, indent=1)
    print()
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    script = script_from_json(_load_json(args.script))
    try:
        sys.stdout.write(export_certificate(script))
    except IncompleteProof as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_hilbert_check(args: argparse.Namespace) -> int:
    proof = proof_from_json(_load_json(args.proof))
    verdict = check_hilbert(proof)
    if isinstance(verdict, Accepted):
        print(f"Accepted: {len(proof.lines)} lines")
        return 0
    print(f"Rejected at line {verdict.index}: {verdict.reason}")
    return 1


def cmd_exercises_run(args: argparse.Namespace) -> int:
    started = time.monotonic()
    corpus = load_corpus()
    rows = []
    solved = 0
    bundled = 0
    for exercise in corpus:
        if exercise.solution is None:
            rows.append((exercise.id, "withheld", "-"))
            continue
        bundled += 1
        verdict = replay(exercise.solution)
        if isinstance(verdict, Complete):
            solved += 1
            rows.append((exercise.id, "Complete", str(len(exercise.solution.steps))))
        else:
            rows.append((exercise.id, f"FAILED: {verdict}", "-"))
    width = max(len(r[0]) for r in rows)
    print(f"{'exercise':{width}}  {'steps':>5}  result")
    for exercise_id, result, steps in rows:
        print(f"{exercise_id:{width}}  {steps:>5}  {result}")
    elapsed = time.monotonic() - started
    print(f"{solved}/{bundled} bundled solutions Complete in {elapsed:.2f}s")
    return 0 if solved == bundled else 1


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve

    serve(args.addr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nadeum", description="natural deduction assistant toolbox"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="replay a proof script")
    p.add_argument("script", help="path to a proof-script JSON file")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("prove", help="search for a proof of a formula")
    p.add_argument("formula")
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--term-depth", type=int, default=2)
    p.add_argument("--no-classical", action="store_true", help="forbid the Boole rule")
    p.add_argument("--budget", type=int, default=5000, help="time budget in ms")
    p.add_argument("--max-universe", type=int, default=3)
    p.set_defaults(fn=cmd_prove)

    p = sub.add_parser("countermodel", help="search for a falsifying finite model")
    p.add_argument("formula")
    p.add_argument("--max-universe", type=int, default=3)
    p.add_argument("--budget", type=int, default=2_000_000,
                   help="interpretation budget per universe size")
    p.set_defaults(fn=cmd_countermodel)

    p = sub.add_parser("trim", help="cancel undo events out of a session history")
    p.add_argument("history", help="path to a session-history JSON file")
    p.set_defaults(fn=cmd_trim)

    p = sub.add_parser("export", help="emit the proof certificate for a script")
    p.add_argument("script")
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("hilbert", help="axiomatic subsystem")
    hsub = p.add_subparsers(dest="hilbert_command", required=True)
    hp = hsub.add_parser("check", help="check a Hilbert-style derivation")
    hp.add_argument("proof", help="path to a derivation JSON file")
    hp.set_defaults(fn=cmd_hilbert_check)

    p = sub.add_parser("exercises", help="exercise corpus")
    esub = p.add_subparsers(dest="exercises_command", required=True)
    ep = esub.add_parser("run", help="replay all bundled solutions")
    ep.set_defaults(fn=cmd_exercises_run)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--addr", default=None, help="host:port (default NADEUM_ADDR or 127.0.0.1:8000)")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
