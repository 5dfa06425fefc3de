import json
import random
from math import gcd
from pathlib import Path

import pytest

from twistk.cpring import BetaPoly
from twistk.groups import AbelianGroup, GradedGroup
from twistk.twist import (DocumentError, Generator, Presentation, ValidationError, base_change,
                          free_presentation, group_document, kz3_presentation, parse_presentation,
                          presentation_from_json, s3_presentation, serialize_presentation, twisted_k)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
Z = AbelianGroup


def one_gen(*coeffs, D=8):
    return Presentation(D, [Generator("x", 0)], [{"x": BetaPoly.parse(c)} for c in coeffs])


def test_base_change_examples():
    even, odd = base_change(one_gen("5 b1"))
    assert even.rows == ((5,),) and odd.rows == () and odd.columns == ()
    assert base_change(one_gen("b1 - 1"))[0].rows == ((0,),)
    assert base_change(one_gen("b2"))[0].rows == ((0,),)


@pytest.mark.parametrize("n", range(1, 13))
def test_sphere_twists(n):
    g = twisted_k(s3_presentation(n))
    assert g.parity0 == (Z() if n == 1 else Z(0, (n,)))
    assert g.parity1.is_zero()


def test_identity_twist_of_eilenberg_maclane():
    assert twisted_k(kz3_presentation()).is_zero()


def test_trivial_twist():
    for parities in ([0], [0, 0], [1, 0, 1], [1, 1, 1]):
        g = twisted_k(free_presentation(parities))
        assert g.parity0 == Z(parities.count(0))
        assert g.parity1 == Z(parities.count(1))


def test_empty_presentation():
    assert twisted_k(Presentation(3, [], [])).is_zero()


def test_coprime_relations_kill():
    for n, m in [(2, 3), (4, 9), (5, 7), (8, 15)]:
        assert gcd(n, m) == 1
        assert twisted_k(one_gen(f"{n} b1", f"{m} b1")).is_zero()


def test_t_powers_do_not_change_answer():
    assert twisted_k(one_gen("6 t^3 b1 + 4 t b2")) == twisted_k(one_gen("6 b1"))


def _apply_moves(p: Presentation, rng: random.Random) -> Presentation:
    gens = list(p.generators)
    rels = [dict(r) for r in p.relations]
    rng.shuffle(gens)
    rng.shuffle(rels)
    if len(rels) >= 2:
        i, j = rng.sample(range(len(rels)), 2)
        if p.relation_parity(rels[i]) == p.relation_parity(rels[j]) or not rels[j] or not rels[i]:
            c = BetaPoly.parse(rng.choice(["2", "b1", "t b2", "-3 b1 + b0"]))
            from twistk.cpring import multiply
            for name, coeff in rels[j].items():
                scaled = multiply(c, coeff)
                rels[i][name] = rels[i][name] + scaled if name in rels[i] else scaled
    new = Generator("fresh", rng.randint(0, 1))
    gens.append(new)
    rels.append({"fresh": BetaPoly.one()})
    return Presentation(p.truncation, gens, rels)


def _random_presentation(rng):
    gens = [Generator(f"g{k}", rng.randint(0, 1)) for k in range(rng.randint(1, 4))]
    rels = []
    for _ in range(rng.randint(0, 4)):
        parity = rng.randint(0, 1)
        names = [g.name for g in gens if g.parity == parity]
        if not names:
            continue
        row = {}
        for name in rng.sample(names, rng.randint(1, len(names))):
            row[name] = BetaPoly({(rng.randint(-2, 2), rng.randint(0, 3)): rng.randint(-6, 6)
                                  for _ in range(rng.randint(1, 3))})
        rels.append(row)
    return Presentation(4, gens, rels).validate()


def test_presentation_moves_preserve_answer():
    rng = random.Random(12)
    for _ in range(60):
        p = _random_presentation(rng)
        q = _apply_moves(p, rng).validate()
        assert twisted_k(q) == twisted_k(p)


# -- validation and documents -----------------------------------------------------------

def test_index_above_truncation():
    with pytest.raises(ValidationError):
        one_gen("b3", D=2).validate()


def test_mixed_parity_row():
    p = Presentation(4, [Generator("x", 0), Generator("y", 1)],
                     [{"x": BetaPoly.parse("b1"), "y": BetaPoly.parse("2")}])
    with pytest.raises(ValidationError):
        p.validate()


def test_duplicate_and_unknown_generators():
    with pytest.raises(ValidationError):
        Presentation(4, [Generator("x", 0), Generator("x", 1)], []).validate()
    with pytest.raises(ValidationError):
        Presentation(4, [Generator("x", 0)], [{"y": BetaPoly.one()}]).validate()


def test_parse_sphere_document():
    doc = (FIXTURES / "s3_n5.json").read_text()
    p = parse_presentation(doc)
    assert len(p.generators) == 1 and len(p.relations) == 1
    assert twisted_k(p) == GradedGroup(Z(0, (5,)), Z())


def test_spec_style_document():
    doc = '''{ "truncation": 8,
        "generators": [ { "name": "x", "parity": 0 } ],
        "relations": [ [ { "gen": "x", "coeff": "5 t^0 b1" } ] ] }'''
    assert twisted_k(parse_presentation(doc)).parity0 == Z(0, (5,))


def test_document_round_trip():
    rng = random.Random(6)
    for _ in range(30):
        p = _random_presentation(rng)
        text = serialize_presentation(p)
        again = parse_presentation(text)
        assert serialize_presentation(again) == text


def test_fixture_documents_are_canonical():
    for name in ("s3_n5.json", "kz3.json", "free_rank2.json"):
        text = (FIXTURES / name).read_text()
        assert serialize_presentation(parse_presentation(text)) == text


def test_document_syntax_error_location():
    with pytest.raises(DocumentError) as info:
        parse_presentation('{"truncation": 8,\n  "generators": [}')
    assert info.value.line == 2


@pytest.mark.parametrize("data", [
    [],
    {"generators": []},
    {"truncation": "8", "generators": []},
    {"truncation": 8, "generators": [{"name": "x"}]},
    {"truncation": 8, "generators": [{"name": "x", "parity": 0}], "relations": [[{"gen": "x"}]]},
    {"truncation": 8, "generators": [{"name": "x", "parity": 0}],
     "relations": [[{"gen": "x", "coeff": "1/2 b1"}]]},
    {"truncation": 8, "generators": [], "extra": 1},
])
def test_malformed_documents(data):
    with pytest.raises(DocumentError):
        presentation_from_json(data)


def test_group_document_shape():
    doc = json.loads(group_document(twisted_k(s3_presentation(5))))
    assert doc == {"parity0": {"free_rank": 0, "torsion": [5]},
                   "parity1": {"free_rank": 0, "torsion": []}}
