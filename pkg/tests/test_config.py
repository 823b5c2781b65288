from dataclasses import replace
from fractions import Fraction

import pytest

from quatlab.config import LabConfig, Tolerances
from quatlab.errors import InputError
from quatlab.jsonable import (JsonParsingError, PropertyViolation, ViolationCollector, decode_scalar, encode_scalar,
                              getIntKey, getKey, getListKey, optKey)


def test_defaults():
    config = LabConfig()
    assert config.max_total == 8 and config.qt_max_dimension == 12
    assert config.tolerances == Tolerances()
    assert config.to_json()["tolerances"]["eps_pure"] == 1e-9


@pytest.mark.parametrize("kwargs", [
    {"max_total": 0},
    {"max_total": 11},
    {"msg_max": 12},
    {"entry_bound": 0},
    {"n_primes": 0},
    {"samples": -1},
    {"seed": -1},
])
def test_invalid_config(kwargs):
    with pytest.raises(InputError):
        LabConfig(**kwargs)


def test_sample_count():
    config = LabConfig()
    assert config.sample_count(10) == 52
    assert replace(config, samples=100).sample_count(10) == 100


def test_scalar_encoding():
    assert encode_scalar(Fraction(3)) == "3"
    assert encode_scalar(Fraction(-1, 2)) == "-1/2"
    assert encode_scalar(0.25) == 0.25
    assert decode_scalar(4) == Fraction(4)
    assert decode_scalar(" 2/6 ") == Fraction(1, 3)
    assert decode_scalar(0.5) == 0.5
    for bad in (True, "x/2", "1/0", None, [1]):
        with pytest.raises(JsonParsingError):
            decode_scalar(bad)


def test_key_helpers():
    data = {"rows": 2, "entries": [1, 2], "flag": True}
    assert getKey(data, "rows") == 2
    assert optKey(data, "cols") is None
    assert getListKey(data, "entries") == [1, 2]
    assert getIntKey(data, "rows") == 2
    with pytest.raises(JsonParsingError):
        getKey(data, "cols")
    with pytest.raises(JsonParsingError):
        getKey([1, 2], "rows")
    with pytest.raises(JsonParsingError):
        getListKey(data, "rows")
    with pytest.raises(JsonParsingError):
        getIntKey(data, "flag")


def test_violation_collector():
    collector = ViolationCollector()
    collector.addViolation("unitary", "residual too large", {"residual": 0.1}, is_warning=True)
    assert collector.ok()
    collector.addViolation("unitary", "not unitary")
    assert not collector.ok()
    assert [v["warning"] for v in collector.to_json()] == [True, False]

    strict = ViolationCollector(fail_on_first=True)
    strict.addViolation("trace", "suspicious", is_warning=True)
    with pytest.raises(PropertyViolation):
        strict.addViolation("trace", "mismatch")
