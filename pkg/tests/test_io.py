import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropline import fixtures as fx
from tropline import io
from tropline.bdivisors import MonomialIdeal, z_of_ideal
from tropline.divisors import PLFunction, ToricDivisor
from tropline.errors import SchemaError
from tropline.tropical import tropicalize

GOLDEN = Path(__file__).parent / "golden"
GOLDEN_FILES = sorted(GOLDEN.glob("*.json"))


def _doc(kind, payload):
    return json.dumps({"schema": "1", "kind": kind, "payload": payload})


@pytest.mark.parametrize("path", GOLDEN_FILES, ids=lambda p: p.stem)
def test_golden_round_trip_is_byte_identical(path):
    text = path.read_text()
    assert io.dumps(io.loads(text)) == text


def test_example0_fan_document():
    F = io.loads((GOLDEN / "ex0_fan.json").read_text(), "fan")
    assert len(F.rays) == 4 and len(F.maximal) == 6
    assert F == fx.example0_fan()


@pytest.mark.parametrize("ex", ["ex0", "ex1"])
def test_golden_weighted_fans_match_tropicalization(ex):
    support = io.loads((GOLDEN / f"{ex}_support.json").read_text(), "laurent_support")
    assert io.dumps(tropicalize(support)) == (GOLDEN / f"{ex}_weighted_fan.json").read_text()


def test_rationals_printed_in_lowest_terms():
    F = fx.p2()
    text = io.dumps(PLFunction(F, [Fraction(2, 4), 0, Fraction(-6, 4)]))
    assert '["1/2", 0, "-3/2"]' in text
    assert io.loads(text).values == (Fraction(1, 2), 0, Fraction(-3, 2))


def test_unsorted_input_rays_are_canonicalized():
    doc = _doc(
        "divisor",
        {"fan": {"rank": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "cones": [[0, 1], [1, 2], [0, 2]]}, "coefficients": [5, 6, 7]},
    )
    D = io.loads(doc)
    assert D.coefficient((1, 0)) == 5 and D.coefficient((0, 1)) == 6 and D.coefficient((-1, -1)) == 7
    assert D.fan.rays == ((-1, -1), (0, 1), (1, 0))


@pytest.mark.parametrize(
    "text,path",
    [
        (_doc("fan", {"rank": 2, "rays": [[1, 0], [1, 0]], "cones": [[0], [1]]}), "payload.rays"),
        (_doc("fan", {"rank": 2, "rays": [[1, 0], [2, 0]], "cones": [[0]]}), "payload.rays[1]"),
        (_doc("fan", {"rank": 2, "rays": [[1, 0]], "cones": [[3]]}), "payload.cones[0]"),
        (_doc("fan", {"rank": 2, "rays": [[1, 0, 0]], "cones": [[0]]}), "payload.rays[0]"),
        (_doc("fan", {"rank": 2, "cones": []}), "payload"),
        (_doc("divisor", {"fan": {"rank": 1, "rays": [[1]], "cones": [[0]]}, "coefficients": ["2/4"]}), "payload.coefficients[0]"),
        (_doc("divisor", {"fan": {"rank": 1, "rays": [[1]], "cones": [[0]]}, "coefficients": [1.5]}), "payload.coefficients[0]"),
        (_doc("teapot", {}), "kind"),
        (json.dumps({"schema": "9", "kind": "fan", "payload": {}}), "schema"),
        ('{"schema": "1",\n "kind": ', "line 2"),
    ],
)
def test_schema_errors_carry_a_path(text, path):
    with pytest.raises(SchemaError) as e:
        io.loads(text)
    assert e.value.path.startswith(path)


def test_expected_kind_enforced():
    with pytest.raises(SchemaError):
        io.loads((GOLDEN / "p2_fan.json").read_text(), "divisor")


def test_booleans_are_not_integers():
    with pytest.raises(SchemaError):
        io.loads(_doc("fan", {"rank": 1, "rays": [[True]], "cones": [[0]]}))


@given(st.sampled_from(sorted(fx.complete_surfaces())), st.integers(0, 10**6))
def test_random_documents_round_trip(name, seed):
    rng = random.Random(seed)
    F = fx.complete_surfaces()[name]
    D = ToricDivisor(F, tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in F.rays))
    assert io.loads(io.dumps(D)) == D
    text = io.dumps(D)
    assert io.dumps(io.loads(text)) == text
    f = PLFunction(F, [rng.randint(-5, 5) for _ in F.rays])
    assert io.loads(io.dumps(f)) == f


def test_bdivisor_and_ideal_round_trip():
    I = MonomialIdeal.of([(1, 0), (0, 1)])
    assert io.loads(io.dumps(I)) == I
    b = z_of_ideal(I, fx.orthant(2))
    back = io.loads(io.dumps(b))
    assert back.fan == b.fan and back.phi == b.phi and back.base == b.base


def test_report_documents_are_inputs():
    rep = io.Report(ok=True, value=Fraction(1, 3), rows=[[1, 2]])
    text = io.dumps(rep)
    assert io.kind_of(text) == "report"
    assert io.dumps(io.loads(text)) == text
