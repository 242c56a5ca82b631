#!/usr/bin/env python3
"""Regenerate the bundled exercise corpus under src/nadeum/data/exercises/.

Every solution script is constructed explicitly, replayed against the
kernel, and only written out when the replay is Complete and reaches the
exercise's formula.  Run from the repository root:

    python scripts/gen_corpus.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from nadeum.kernel import Complete, ProofScript, RuleApplication, replay
from nadeum.syntax import (
    FALSITY,
    Con,
    Exi,
    Fun,
    Imp,
    Pre,
    Uni,
    Var,
    parse_formula,
)

OUT = Path(__file__).resolve().parent.parent / "src" / "nadeum" / "data" / "exercises"


def R(rule: str, **kwargs) -> RuleApplication:
    return RuleApplication(rule, **kwargs)


def imp_e(cut) -> RuleApplication:
    return R("Imp_E", cut=cut)


A = Pre("A")
B = Pre("B")
C = Pre("C")
c = Fun("c")


def f(t):
    return Fun("f", (t,))


def r(t):
    return Pre("r", (t,))


def neg(p):
    return Imp(p, FALSITY)


def drinker_script() -> list[RuleApplication]:
    a_c = Pre("A", (c,))
    a_c1 = Pre("A", (Fun("c1"),))
    uni_a = Uni(Pre("A", (Var(0),)))
    e = Exi(Imp(Pre("A", (Var(0),)), uni_a))
    return [
        R("Boole"),
        imp_e(e),
        R("Assume"),
        R("Exi_I", witness=c),
        R("Imp_I"),
        R("Uni_I", fresh="c1"),
        R("Boole"),
        imp_e(e),
        R("Assume"),
        R("Exi_I", witness=Fun("c1")),
        R("Imp_I"),
        R("Boole"),
        imp_e(a_c1),
        R("Assume"),
        R("Assume"),
    ]


def hint9_script() -> list[RuleApplication]:
    # terms t_i = f^i(c)
    t = [c]
    for _ in range(5):
        t.append(f(t[-1]))
    h_body = Imp(neg(r(Var(0))), r(f(Var(0))))
    big_c = Exi(Con(r(Var(0)), r(f(f(Var(0))))))

    def rich_pair(i: int) -> list[RuleApplication]:
        # close |- C by exhibiting the witness t_i with partner t_{i+2}
        return [imp_e(big_c), R("Assume"), R("Exi_I", witness=t[i]), R("Con_I")]

    def from_axiom(i: int) -> list[RuleApplication]:
        # |- r(t_{i+1}) from ~r(t_i) in the assumptions via the hypothesis
        return [
            imp_e(neg(r(t[i]))),
            R("Uni_E", body=h_body, witness=t[i]),
            R("Assume"),
            R("Assume"),
        ]

    def by_contradiction(i: int) -> list[RuleApplication]:
        # |- r(t_i) when ~r(t_{i+1}) is assumed: ~r(t_i) would force r(t_{i+1})
        return [
            R("Boole"),
            imp_e(r(t[i + 1])),
            R("Assume"),
        ] + from_axiom(i)

    return (
        [R("Imp_I"), R("Boole")]
        # case split on r(t2)
        + [imp_e(r(t[2])), R("Imp_I")]
        # knowing r(t2): case split on r(t4)
        + [imp_e(r(t[4])), R("Imp_I")]
        # knowing r(t2) and r(t4): the pair is t2
        + rich_pair(2)
        + [R("Assume"), R("Assume")]
        # knowing r(t2) and ~r(t4): the pair is t3
        + [R("Boole")]
        + rich_pair(3)
        + by_contradiction(3)
        + from_axiom(4)
        # knowing ~r(t2): the pair is t1
        + [R("Boole")]
        + rich_pair(1)
        + by_contradiction(1)
        + from_axiom(2)
    )


CORPUS: list[dict] = [
    {
        "id": "test-1",
        "title": "Test 1",
        "formula": "False -> False",
        "policy": "full",
        "steps": [R("Imp_I"), R("Assume")],
    },
    {
        "id": "hint-1",
        "title": "Hint 1",
        "formula": "False -> A",
        "policy": "stepwise",
        "steps": [R("Imp_I"), R("Boole"), R("Assume")],
    },
    {
        "id": "test-2",
        "title": "Test 2",
        "formula": "(A -> B) -> A -> B",
        "policy": "full",
        "steps": [R("Imp_I"), R("Assume")],
    },
    {
        "id": "hint-2",
        "title": "Hint 2",
        "formula": "A -> (A -> B) -> B",
        "policy": "stepwise",
        "steps": [R("Imp_I"), R("Imp_I"), imp_e(A), R("Assume"), R("Assume")],
    },
    {
        "id": "test-3",
        "title": "Test 3",
        "formula": "A /\\ (A -> B) -> B",
        "policy": "full",
        "steps": [
            R("Imp_I"),
            imp_e(A),
            R("Con_E2", other=A),
            R("Assume"),
            R("Con_E1", other=Imp(A, B)),
            R("Assume"),
        ],
    },
    {
        "id": "hint-3",
        "title": "Hint 3",
        "formula": "A(c) /\\ (A(c) -> uni x. A(x)) -> uni x. A(x)",
        "policy": "stepwise",
        "steps": [
            R("Imp_I"),
            imp_e(Pre("A", (c,))),
            R("Con_E2", other=Pre("A", (c,))),
            R("Assume"),
            R("Con_E1", other=Imp(Pre("A", (c,)), Uni(Pre("A", (Var(0),))))),
            R("Assume"),
        ],
    },
    {
        "id": "test-4",
        "title": "Test 4",
        "formula": "uni x. A(x) -> A(c)",
        "policy": "full",
        "steps": [
            R("Imp_I"),
            R("Uni_E", body=Pre("A", (Var(0),)), witness=c),
            R("Assume"),
        ],
    },
    {
        "id": "hint-4",
        "title": "Hint 4",
        "formula": "A(c) -> exi x. A(x)",
        "policy": "stepwise",
        "steps": [R("Imp_I"), R("Exi_I", witness=c), R("Assume")],
    },
    {
        "id": "test-5",
        "title": "Test 5",
        "formula": "A -> B -> A",
        "policy": "full",
        "steps": [R("Imp_I"), R("Imp_I"), R("Assume")],
    },
    {
        "id": "hint-5",
        "title": "Hint 5",
        "formula": "(A -> B -> C) -> (A -> B) -> A -> C",
        "policy": "stepwise",
        "steps": [
            R("Imp_I"),
            R("Imp_I"),
            R("Imp_I"),
            imp_e(B),
            imp_e(A),
            R("Assume"),
            R("Assume"),
            imp_e(A),
            R("Assume"),
            R("Assume"),
        ],
    },
    {
        "id": "test-6",
        "title": "Test 6",
        "formula": "A -> (A -> False) -> False",
        "policy": "full",
        "steps": [R("Imp_I"), R("Imp_I"), imp_e(A), R("Assume"), R("Assume")],
    },
    {
        "id": "hint-6",
        "title": "Hint 6",
        "formula": "((A -> False) -> False) -> A",
        "policy": "stepwise",
        "steps": [R("Imp_I"), R("Boole"), imp_e(neg(A)), R("Assume"), R("Assume")],
    },
    {
        "id": "test-7",
        "title": "Test 7",
        "formula": "(A /\\ B) -> C -> (A /\\ C)",
        "policy": "full",
        "steps": [
            R("Imp_I"),
            R("Imp_I"),
            R("Con_I"),
            R("Con_E1", other=B),
            R("Assume"),
            R("Assume"),
        ],
    },
    {
        "id": "hint-7",
        "title": "Hint 7",
        "formula": "((A -> False) \\/ (B -> False)) -> (A /\\ B) -> False",
        "policy": "stepwise",
        "steps": [
            R("Imp_I"),
            R("Imp_I"),
            R("Dis_E", left=neg(A), right=neg(B)),
            R("Assume"),
            imp_e(A),
            R("Assume"),
            R("Con_E1", other=B),
            R("Assume"),
            imp_e(B),
            R("Assume"),
            R("Con_E2", other=A),
            R("Assume"),
        ],
    },
    {
        "id": "test-8",
        "title": "Test 8",
        "formula": "uni x. uni y. A(x, y) -> uni x. A(x, x)",
        "policy": "full",
        "steps": [
            R("Imp_I"),
            R("Uni_I", fresh="c"),
            R("Uni_E", body=Pre("A", (c, Var(0))), witness=c),
            R("Uni_E", body=Uni(Pre("A", (Var(1), Var(0)))), witness=c),
            R("Assume"),
        ],
    },
    {
        "id": "hint-8",
        "title": "Hint 8",
        "formula": "uni x. A(x) -> exi x. A(x)",
        "policy": "stepwise",
        "steps": [
            R("Imp_I"),
            R("Exi_I", witness=c),
            R("Uni_E", body=Pre("A", (Var(0),)), witness=c),
            R("Assume"),
        ],
    },
    {
        "id": "test-9",
        "title": "Test 9 (drinker paradox)",
        "formula": "exi x. (A(x) -> uni x. A(x))",
        "policy": "full",
        "steps": drinker_script(),
    },
    {
        "id": "hint-9",
        "title": "Hint 9 (optional)",
        "formula": "uni x. (~r(x) -> r(f(x))) -> exi x. (r(x) /\\ r(f(f(x))))",
        "policy": "withheld",
        "steps": hint9_script(),
    },
    {
        "id": "assign-1",
        "title": "Assignment 1",
        "formula": "A /\\ B -> B",
        "policy": "withheld",
        "steps": None,
    },
    {
        "id": "assign-2",
        "title": "Assignment 2",
        "formula": "A(c, c) -> exi x. exi y. A(x, y)",
        "policy": "withheld",
        "steps": None,
    },
    {
        "id": "assign-3",
        "title": "Assignment 3",
        "formula": "(uni x. A(x) \\/ uni x. B(x)) -> uni x. (A(x) \\/ B(x))",
        "policy": "withheld",
        "steps": None,
    },
    {
        "id": "assign-4",
        "title": "Assignment 4",
        "formula": "A \\/ (A -> False)",
        "policy": "withheld",
        "steps": None,
    },
    {
        "id": "assign-5",
        "title": "Assignment 5",
        "formula": "(A -> B) \\/ (B -> C)",
        "policy": "withheld",
        "steps": None,
    },
    {
        "id": "example-1",
        "title": "Example 1",
        "formula": "(A -> B) \\/ (B -> A)",
        "policy": "full",
        "steps": None,  # filled in below, needs the parsed root
    },
    {
        "id": "example-2",
        "title": "Example 2",
        "formula": "A \\/ (A -> B)",
        "policy": "full",
        "steps": None,  # filled in below
    },
]


def _fill_examples() -> None:
    for entry in CORPUS:
        if entry["id"] == "example-1":
            root = parse_formula(entry["formula"])
            entry["steps"] = [
                R("Boole"),
                imp_e(root),
                R("Assume"),
                R("Dis_I1"),
                R("Imp_I"),
                R("Boole"),
                imp_e(root),
                R("Assume"),
                R("Dis_I2"),
                R("Imp_I"),
                R("Assume"),
            ]
        if entry["id"] == "example-2":
            root = parse_formula(entry["formula"])
            entry["steps"] = [
                R("Boole"),
                imp_e(root),
                R("Assume"),
                R("Dis_I2"),
                R("Imp_I"),
                R("Boole"),
                imp_e(root),
                R("Assume"),
                R("Dis_I1"),
                R("Assume"),
            ]


def main() -> int:
    _fill_examples()
    OUT.mkdir(parents=True, exist_ok=True)
    manifest = []
    for entry in CORPUS:
        root = parse_formula(entry["formula"])
        record = {
            "id": entry["id"],
            "title": entry["title"],
            "formula": entry["formula"],
            "policy": entry["policy"],
            "script": None,
        }
        if entry["steps"] is not None:
            script = ProofScript(root, tuple(entry["steps"]))
            verdict = replay(script)
            if not isinstance(verdict, Complete):
                print(f"FAIL {entry['id']}: {verdict}")
                return 1
            path = f"{entry['id']}.json"
            (OUT / path).write_text(json.dumps(script.to_json(), indent=1) + "\n")
            record["script"] = path
            print(f"ok   {entry['id']}: {len(script.steps)} steps")
        else:
            print(f"ok   {entry['id']}: withheld, no script")
        manifest.append(record)
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n")
    print(f"wrote {OUT / 'manifest.json'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
