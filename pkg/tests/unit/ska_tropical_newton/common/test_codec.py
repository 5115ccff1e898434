import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from ska_tropical_newton.common.codec import parse_exact_int, parse_exact_rational
from ska_tropical_newton.domain.documents import (
    ConeDocument,
    FanDocument,
    MultidegreeDocument,
    OrbitDocument,
)


def test_parse_exact_int_accepts_numbers_and_decimal_strings():
    assert parse_exact_int(17) == 17
    assert parse_exact_int("-42") == -42
    assert parse_exact_int(" +7 ") == 7


def test_parse_exact_int_keeps_every_digit():
    digits = "123456789012345678901234567890"
    assert parse_exact_int(digits) == int(digits)


@pytest.mark.parametrize("value", [1.5, "1.0", "1e3", True, None, "12/5"])
def test_parse_exact_int_rejects_lossy_values(value):
    with pytest.raises(ValueError):
        parse_exact_int(value)


def test_parse_exact_rational():
    assert parse_exact_rational("3/4") == Fraction(3, 4)
    assert parse_exact_rational("-6/4") == Fraction(-3, 2)
    assert parse_exact_rational(5) == Fraction(5)
    assert parse_exact_rational(Fraction(1, 3)) == Fraction(1, 3)


def test_parse_exact_rational_rejects_floats():
    with pytest.raises(ValueError):
        parse_exact_rational(0.5)


def test_integers_are_written_as_decimal_strings():
    document = ConeDocument(rays=[[1, -2, 3]], multiplicity=2)

    dumped = json.loads(document.model_dump_json())

    assert dumped == {"rays": [["1", "-2", "3"]], "multiplicity": "2"}


def test_rationals_are_written_as_fractions():
    document = MultidegreeDocument(vertex=[1, 2], multidegree=[Fraction(3, 2), 3])

    dumped = json.loads(document.model_dump_json())

    assert dumped["multidegree"] == ["3/2", "3"]


def test_unset_optional_fields_are_dropped_but_empty_lists_kept():
    document = FanDocument(ambient_dim=2)

    dumped = json.loads(document.model_dump_json())

    assert dumped == {"ambient_dim": "2", "lineality": [], "cones": []}

    orbit = OrbitDocument(
        group="trivial",
        vertex=[0],
        orbit_size=1,
        canonical_rep=[0],
        stabilizer_order=1,
    )
    assert "parity_sums" not in json.loads(orbit.model_dump_json())


def test_unknown_fields_are_rejected():
    with pytest.raises(ValidationError):
        ConeDocument.model_validate({"rays": [], "weight": 1})


def test_negative_multiplicity_is_rejected():
    with pytest.raises(ValidationError):
        ConeDocument.model_validate({"rays": [[1]], "multiplicity": "-1"})
