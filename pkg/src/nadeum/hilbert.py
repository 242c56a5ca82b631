"""Propositional Hilbert-style axiomatics: 9 schemas plus modus ponens.

Proofs are numbered lines, each justified as an axiom-schema instance or by
modus ponens from two earlier lines.  A truth-table evaluator provides the
validity oracle used to sanity-check the schemas and any accepted claim.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping


@dataclass(frozen=True)
class PFalsity:
    pass


@dataclass(frozen=True)
class PAtom:
    name: str


@dataclass(frozen=True)
class PImp:
    left: "PropFormula"
    right: "PropFormula"


@dataclass(frozen=True)
class PDis:
    left: "PropFormula"
    right: "PropFormula"


@dataclass(frozen=True)
class PCon:
    left: "PropFormula"
    right: "PropFormula"


PropFormula = PFalsity | PAtom | PImp | PDis | PCon

P_FALSITY = PFalsity()

_A, _B, _C = PAtom("A"), PAtom("B"), PAtom("C")

# The classical P1 lineage set; schema 9 is the contraposition-style axiom
# whose validity defeats plain rewriting and needs the full truth table.
SCHEMAS: dict[int, PropFormula] = {
    1: PImp(_A, PImp(_B, _A)),
    2: PImp(PImp(_A, PImp(_B, _C)), PImp(PImp(_A, _B), PImp(_A, _C))),
    3: PImp(_A, PImp(_B, PCon(_A, _B))),
    4: PImp(PCon(_A, _B), _A),
    5: PImp(PCon(_A, _B), _B),
    6: PImp(_A, PDis(_A, _B)),
    7: PImp(_B, PDis(_A, _B)),
    8: PImp(PImp(_A, _C), PImp(PImp(_B, _C), PImp(PDis(_A, _B), _C))),
    9: PImp(PImp(_A, PImp(_B, P_FALSITY)), PImp(_B, PImp(_A, P_FALSITY))),
}


class HilbertError(Exception):
    pass


class UnknownSchema(HilbertError):
    def __init__(self, schema_id: object):
        self.schema_id = schema_id
        super().__init__(f"no axiom schema {schema_id!r}")


class MissingLetter(HilbertError):
    def __init__(self, letter: str, schema_id: int):
        self.letter = letter
        self.schema_id = schema_id
        super().__init__(f"instantiation for schema {schema_id} lacks letter {letter!r}")


def atoms(p: PropFormula) -> set[str]:
    match p:
        case PFalsity():
            return set()
        case PAtom(name):
            return {name}
        case PImp(a, b) | PDis(a, b) | PCon(a, b):
            return atoms(a) | atoms(b)
    raise TypeError(f"not a propositional formula: {p!r}")


def axiom_instance(schema_id: int, instantiation: Mapping[str, PropFormula]) -> PropFormula:
    """The schema with its letters uniformly replaced."""
    schema = SCHEMAS.get(schema_id)
    if schema is None:
        raise UnknownSchema(schema_id)

    def build(p: PropFormula) -> PropFormula:
        match p:
            case PFalsity():
                return p
            case PAtom(name):
                if name not in instantiation:
                    raise MissingLetter(name, schema_id)
                return instantiation[name]
            case PImp(a, b):
                return PImp(build(a), build(b))
            case PDis(a, b):
                return PDis(build(a), build(b))
            case PCon(a, b):
                return PCon(build(a), build(b))
        raise TypeError(f"not a propositional formula: {p!r}")

    return build(schema)


def _eval(p: PropFormula, row: Mapping[str, bool]) -> bool:
    match p:
        case PFalsity():
            return False
        case PAtom(name):
            return row[name]
        case PImp(a, b):
            return _eval(b, row) if _eval(a, row) else True
        case PDis(a, b):
            return True if _eval(a, row) else _eval(b, row)
        case PCon(a, b):
            return _eval(b, row) if _eval(a, row) else False
    raise TypeError(f"not a propositional formula: {p!r}")


def prop_valid(p: PropFormula) -> bool:
    """Truth-table validity over all assignments to the occurring atoms."""
    names = sorted(atoms(p))
    for bits in range(1 << len(names)):
        row = {name: bool(bits >> i & 1) for i, name in enumerate(names)}
        if not _eval(p, row):
            return False
    return True


# ---------------------------------------------------------------------------
# Line proofs


@dataclass(frozen=True)
class AxiomRef:
    schema_id: int
    instantiation: tuple[tuple[str, PropFormula], ...]

    def mapping(self) -> dict[str, PropFormula]:
        return dict(self.instantiation)


@dataclass(frozen=True)
class MPRef:
    major: int  # line stating minor -> this
    minor: int


Justification = AxiomRef | MPRef


@dataclass(frozen=True)
class HilbertLine:
    index: int
    formula: PropFormula
    justification: Justification


@dataclass(frozen=True)
class HilbertProof:
    lines: tuple[HilbertLine, ...]
    claim: PropFormula


@dataclass(frozen=True)
class Accepted:
    proof: HilbertProof


@dataclass(frozen=True)
class RejectedLine:
    index: int
    reason: str


HilbertVerdict = Accepted | RejectedLine


def check_hilbert(proof: HilbertProof) -> HilbertVerdict:
    """Accept iff every line is a schema instance or a correct MP citation
    of strictly earlier lines, and the claim is the last line's formula."""
    if not proof.lines:
        return RejectedLine(0, "empty derivation")
    by_index: dict[int, PropFormula] = {}
    for position, line in enumerate(proof.lines, start=1):
        if line.index != position:
            return RejectedLine(position, f"line numbered {line.index}, expected {position}")
        match line.justification:
            case AxiomRef(schema_id, _):
                try:
                    expected = axiom_instance(schema_id, line.justification.mapping())
                except HilbertError as err:
                    return RejectedLine(position, str(err))
                if expected != line.formula:
                    return RejectedLine(
                        position, f"not an instance of axiom schema {schema_id}"
                    )
            case MPRef(major, minor):
                if major >= position or minor >= position:
                    return RejectedLine(position, "forward MP citation")
                if major < 1 or minor < 1:
                    return RejectedLine(position, "MP citation out of range")
                if by_index[major] != PImp(by_index[minor], line.formula):
                    return RejectedLine(
                        position,
                        f"line {major} is not (line {minor} -> line {position})",
                    )
            case _:
                return RejectedLine(position, "unknown justification")
        by_index[position] = line.formula
    if proof.claim != proof.lines[-1].formula:
        return RejectedLine(len(proof.lines), "claim differs from the last line")
    return Accepted(proof)


# ---------------------------------------------------------------------------
# Surface text and JSON


def print_prop(p: PropFormula, level: int = 1) -> str:
    match p:
        case PFalsity():
            return "False"
        case PAtom(name):
            return name
        case PImp(a, b):
            body = f"{print_prop(a, 2)} -> {print_prop(b, 1)}"
            return f"({body})" if level > 1 else body
        case PDis(a, b):
            body = f"{print_prop(a, 3)} \\/ {print_prop(b, 2)}"
            return f"({body})" if level > 2 else body
        case PCon(a, b):
            body = f"{print_prop(a, 4)} /\\ {print_prop(b, 3)}"
            return f"({body})" if level > 3 else body
    raise TypeError(f"not a propositional formula: {p!r}")


def prop_to_json(p: PropFormula) -> dict:
    match p:
        case PFalsity():
            return {"falsity": None}
        case PAtom(name):
            return {"atom": name}
        case PImp(a, b):
            return {"imp": [prop_to_json(a), prop_to_json(b)]}
        case PDis(a, b):
            return {"dis": [prop_to_json(a), prop_to_json(b)]}
        case PCon(a, b):
            return {"con": [prop_to_json(a), prop_to_json(b)]}
    raise TypeError(f"not a propositional formula: {p!r}")


def prop_from_json(data: object) -> PropFormula:
    if not isinstance(data, dict) or len(data) != 1:
        raise ValueError(f"malformed propositional formula: {data!r}")
    key, value = next(iter(data.items()))
    if key == "falsity":
        return P_FALSITY
    if key == "atom":
        if not isinstance(value, str) or not value:
            raise ValueError(f"malformed atom name: {value!r}")
        return PAtom(value)
    if key in ("imp", "dis", "con"):
        a, b = value
        ctor = {"imp": PImp, "dis": PDis, "con": PCon}[key]
        return ctor(prop_from_json(a), prop_from_json(b))
    raise ValueError(f"malformed propositional formula: {data!r}")


def proof_to_json(proof: HilbertProof) -> dict:
    lines = []
    for line in proof.lines:
        match line.justification:
            case AxiomRef(schema_id, _):
                just: dict = {
                    "axiom": [
                        schema_id,
                        {
                            letter: prop_to_json(p)
                            for letter, p in line.justification.instantiation
                        },
                    ]
                }
            case MPRef(major, minor):
                just = {"mp": [major, minor]}
        lines.append(
            {"index": line.index, "formula": prop_to_json(line.formula), "just": just}
        )
    return {"lines": lines, "claim": prop_to_json(proof.claim)}


def proof_from_json(data: object) -> HilbertProof:
    if not isinstance(data, dict):
        raise ValueError(f"malformed derivation: {data!r}")
    lines: list[HilbertLine] = []
    for entry in data.get("lines", []):
        just = entry["just"]
        if "axiom" in just:
            schema_id, mapping = just["axiom"]
            justification: Justification = AxiomRef(
                int(schema_id),
                tuple(sorted((k, prop_from_json(v)) for k, v in mapping.items())),
            )
        elif "mp" in just:
            major, minor = just["mp"]
            justification = MPRef(int(major), int(minor))
        else:
            raise ValueError(f"malformed justification: {just!r}")
        lines.append(
            HilbertLine(int(entry["index"]), prop_from_json(entry["formula"]), justification)
        )
    claim = prop_from_json(data["claim"])
    return HilbertProof(tuple(lines), claim)


def imp_refl_proof(atom: PropFormula = PAtom("A")) -> HilbertProof:
    """The five-line derivation of A -> A from schemas 1 and 2."""
    a = atom
    aa = PImp(a, a)
    line1 = axiom_instance(2, {"A": a, "B": aa, "C": a})
    line2 = axiom_instance(1, {"A": a, "B": aa})
    line3 = PImp(PImp(a, PImp(a, a)), aa)
    line4 = axiom_instance(1, {"A": a, "B": a})
    lines = (
        HilbertLine(1, line1, AxiomRef(2, (("A", a), ("B", aa), ("C", a)))),
        HilbertLine(2, line2, AxiomRef(1, (("A", a), ("B", aa)))),
        HilbertLine(3, line3, MPRef(1, 2)),
        HilbertLine(4, line4, AxiomRef(1, (("A", a), ("B", a)))),
        HilbertLine(5, aa, MPRef(3, 4)),
    )
    return HilbertProof(lines, aa)
