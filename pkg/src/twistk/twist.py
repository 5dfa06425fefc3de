"""Twisted K-groups from a presentation of K_*(P_tau).

The twisted group is ``K_*(P_tau) (x)_{K_*(CP^inf)} K^``, i.e. the quotient
of K_*(P_tau) by ``b_1 - 1, b_2, b_3, ...``. On a presentation this amounts
to pushing every relation coefficient through the augmentation
``b_0, b_1 -> 1, b_{>=2} -> 0`` and then taking cokernels.

Gradings: every ``t^m b_i`` is even (t has degree 2), so a coefficient never
changes the parity of the generator it multiplies. Each relation therefore
lives in the parity of its generators, and ``t -> 1`` loses nothing once
only the Z/2-graded answer is reported.
"""

from __future__ import annotations

import json
from fractions import Fraction
from dataclasses import dataclass, field

from .cpring import BetaPoly, augment_hat, format_beta
from .groups import AbelianGroup, GradedGroup
from .parsing import ParseError


class MalformedPresentation(ValueError):
    pass


class ValidationError(MalformedPresentation):
    pass


class DocumentError(ValueError):
    """Syntax or schema problem in a presentation document."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


@dataclass(frozen=True)
class Generator:
    name: str
    parity: int


@dataclass
class Presentation:
    truncation: int
    generators: list[Generator]
    relations: list[dict[str, BetaPoly]] = field(default_factory=list)

    def generator_names(self) -> list[str]:
        return [g.name for g in self.generators]

    def parity_of(self, name: str) -> int:
        for g in self.generators:
            if g.name == name:
                return g.parity
        raise KeyError(name)

    def max_index(self) -> int:
        return max((c.max_index() for row in self.relations for c in row.values()), default=0)

    def validate(self) -> "Presentation":
        if not isinstance(self.truncation, int) or self.truncation < 1:
            raise ValidationError(f"truncation must be an integer >= 1, got {self.truncation!r}")
        names = self.generator_names()
        if len(set(names)) != len(names):
            raise ValidationError("generator names must be unique")
        for g in self.generators:
            if g.parity not in (0, 1):
                raise ValidationError(f"generator {g.name!r} has parity {g.parity!r}, expected 0 or 1")
        for n, row in enumerate(self.relations):
            parities = set()
            for name, c in row.items():
                if name not in names:
                    raise ValidationError(f"relation {n} mentions unknown generator {name!r}")
                if c.max_index() > self.truncation:
                    raise ValidationError(
                        f"relation {n}: b{c.max_index()} exceeds truncation {self.truncation}")
                if c:
                    parities.add(self.parity_of(name))
            if len(parities) > 1:
                raise ValidationError(f"relation {n} mixes parities (not homogeneous)")
        return self

    def relation_parity(self, row: dict[str, BetaPoly]) -> int | None:
        ps = {self.parity_of(n) for n, c in row.items() if c}
        return ps.pop() if ps else None


@dataclass(frozen=True)
class ParityBlock:
    """Integer relation matrix for one parity: rows are relations, columns generators."""

    columns: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def cokernel(self) -> AbelianGroup:
        return AbelianGroup.cokernel([list(r) for r in self.rows], len(self.columns))


def hat_value(c: BetaPoly) -> int:
    """Augmentation followed by t -> 1."""
    return int(sum(augment_hat(c).terms.values(), Fraction(0)))


def base_change(p: Presentation) -> tuple[ParityBlock, ParityBlock]:
    p.validate()
    blocks = []
    for parity in (0, 1):
        cols = tuple(g.name for g in p.generators if g.parity == parity)
        rows = []
        for row in p.relations:
            if p.relation_parity(row) != parity:
                continue
            rows.append(tuple(hat_value(row.get(name, BetaPoly())) for name in cols))
        blocks.append(ParityBlock(cols, tuple(rows)))
    return blocks[0], blocks[1]


def twisted_k(p: Presentation) -> GradedGroup:
    even, odd = base_change(p)
    return GradedGroup(even.cokernel(), odd.cokernel())


# -- documents -------------------------------------------------------------------

def parse_presentation(document: str) -> Presentation:
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None
    return presentation_from_json(data).validate()


def _require(cond: bool, message: str):
    if not cond:
        raise DocumentError(message)


def presentation_from_json(data) -> Presentation:
    _require(isinstance(data, dict), "document must be a JSON object")
    unknown = set(data) - {"truncation", "generators", "relations"}
    _require(not unknown, f"unknown keys {sorted(unknown)}")
    _require("truncation" in data and "generators" in data,
             "document needs 'truncation' and 'generators'")
    D = data["truncation"]
    _require(isinstance(D, int) and not isinstance(D, bool), "'truncation' must be an integer")
    gens = []
    _require(isinstance(data["generators"], list), "'generators' must be a list")
    for n, g in enumerate(data["generators"]):
        _require(isinstance(g, dict) and set(g) == {"name", "parity"},
                 f"generators[{n}] must have exactly 'name' and 'parity'")
        _require(isinstance(g["name"], str) and g["name"] != "", f"generators[{n}].name must be a string")
        _require(isinstance(g["parity"], int) and not isinstance(g["parity"], bool),
                 f"generators[{n}].parity must be an integer")
        gens.append(Generator(g["name"], g["parity"]))
    relations = []
    rels = data.get("relations", [])
    _require(isinstance(rels, list), "'relations' must be a list")
    for n, row in enumerate(rels):
        _require(isinstance(row, list), f"relations[{n}] must be a list")
        parsed: dict[str, BetaPoly] = {}
        for m, entry in enumerate(row):
            where = f"relations[{n}][{m}]"
            _require(isinstance(entry, dict) and set(entry) == {"gen", "coeff"},
                     f"{where} must have exactly 'gen' and 'coeff'")
            _require(isinstance(entry["gen"], str), f"{where}.gen must be a string")
            coeff = entry["coeff"]
            if isinstance(coeff, int) and not isinstance(coeff, bool):
                coeff = str(coeff)
            _require(isinstance(coeff, str), f"{where}.coeff must be a string")
            try:
                c = BetaPoly.parse(coeff)
            except ParseError as exc:
                raise DocumentError(f"{where}.coeff: {exc}") from None
            name = entry["gen"]
            parsed[name] = parsed[name] + c if name in parsed else c
        relations.append(parsed)
    return Presentation(D, gens, relations)


def presentation_to_json(p: Presentation) -> dict:
    return {
        "truncation": p.truncation,
        "generators": [{"name": g.name, "parity": g.parity} for g in p.generators],
        "relations": [[{"gen": name, "coeff": format_beta(row[name])}
                       for name in p.generator_names() if name in row]
                      for row in p.relations],
    }


def serialize_presentation(p: Presentation) -> str:
    return json.dumps(presentation_to_json(p), indent=2) + "\n"


def group_document(g: GradedGroup) -> str:
    return json.dumps(g.to_json(), indent=2) + "\n"


# -- catalog of worked inputs ----------------------------------------------------

def s3_presentation(n: int, D: int = 8) -> Presentation:
    """K_*(CP^inf)/(n b_1): K_*(P_n) for the degree-n twist over S^3."""
    return Presentation(D, [Generator("x", 0)], [{"x": BetaPoly.beta(1, coeff=n)}])


def kz3_presentation(D: int = 8) -> Presentation:
    """K_* with every b_i (i >= 1) acting by zero: the identity twist of K(Z, 3)."""
    return Presentation(D, [Generator("x", 0)], [{"x": BetaPoly.beta(i)} for i in range(1, D + 1)])


def free_presentation(parities, D: int = 8) -> Presentation:
    return Presentation(D, [Generator(f"x{k + 1}", p) for k, p in enumerate(parities)], [])
