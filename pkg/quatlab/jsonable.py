from abc import abstractmethod
from fractions import Fraction
from typing import List, Dict, Optional, Any, Union
import json
import pprint

from quatlab.errors import InputError, QuatlabError

""" JSON plumbing: the Jsonable base class, scalar encoding, key lookup helpers, and
collection of property violations found by the verification suites.
"""

RealScalar = Union[Fraction, float]


# ---------------------------- JSON Data Structures ----------------------------
class Jsonable(object):
    """
    Convenience class that contains method to convert attributes of a class into a json.
    """
    @abstractmethod
    def to_json(self) -> Any:
        """ Produces dictionary (or list) representation of the json output"""
        pass

    @staticmethod
    def from_json(data) -> "Jsonable":
        """ Construct this object from a dictionary/json represenation """
        raise RuntimeError("Must call from_json of implementing class")


def dump_json(data: Any) -> str:
    """ Canonical serialization: sorted keys, compact separators. Used for output and digests. """
    return json.dumps(data, sort_keys=True, separators=(',', ':'))


# ---------------------------- Parsing Errors ----------------------------

class JsonParsingError(InputError):
    """ JSON parsing failure. """
    def __init__(self, message: str, data: Any) -> None:
        self.data = data
        super(JsonParsingError, self).__init__("ERROR: " + message + " " + self.problematic_json())
        self.message = "ERROR: " + message

    def problematic_json(self) -> str:
        return "Problematic JSON:\n" + (pprint.pformat(self.data, indent=4, width=80))


# ---------------------------- Scalar Encoding ----------------------------

def encode_scalar(x: RealScalar) -> Union[str, float]:
    """ Exact scalars become "p/q" (or "p"), floats stay JSON numbers. """
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)
    return float(x)


def decode_scalar(value: Any, data: Any = None) -> RealScalar:
    """ Inverse of `encode_scalar`. JSON integers are exact. """
    if isinstance(value, bool):
        raise JsonParsingError("Boolean %r is not a real scalar." % value, data if data is not None else value)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise JsonParsingError("String %r is not a rational \"p/q\"." % value, data if data is not None else value)
    raise JsonParsingError("Value %r is not a real scalar." % (value,), data if data is not None else value)


# ---------------------------- Json validation helper methods ----------------------------

def optKey(data: Dict[str, Any], key: str) -> Optional[Any]:
    if key not in data:
        return None
    else:
        return data[key]


def getKey(data: Dict[str, Any], key: str) -> Any:
    if not isinstance(data, dict):
        raise JsonParsingError("Expected a json dictionary with key \'%s\'. " % key, data)
    if key not in data:
        raise JsonParsingError("Key \'%s\' is not in json dictionary. " % key, data)
    else:
        return data[key]


def getListKey(data: Dict[str, Any], key: str) -> List[Any]:
    value = getKey(data, key)
    if not isinstance(value, list):
        raise JsonParsingError("Key \'%s\' is expected to produce a list, but getting %s. " % (key, value), data)
    return value


def getIntKey(data: Dict[str, Any], key: str) -> int:
    value = getKey(data, key)
    if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
        raise JsonParsingError("Key \'%s\' is expected to be a positive integer, but getting %s. " % (key, value), data)
    return value


# ---------------------------- Property Violations ----------------------------

class PropertyViolation(QuatlabError):
    """ A checked property failed on a concrete input. Warnings mark suspicious but acceptable results. """
    def __init__(self, prop: str, message: str, data: Optional[Dict[str, Any]] = None, is_warning: bool = False) -> None:
        self.prop = prop
        self.data = data if data is not None else {}
        self.is_warning = is_warning
        super(PropertyViolation, self).__init__(("WARNING: " if is_warning else "ERROR: ") + prop + ": " + message)

    def problematic_json(self) -> str:
        return "Problematic values:\n" + (pprint.pformat(self.data, indent=4, width=80))

    def to_json(self) -> Dict[str, Any]:
        return {"property": self.prop, "message": self.message, "warning": self.is_warning, "data": self.data}


class ViolationCollector(object):
    """ Collector for property violations found while running a verification suite. """
    def __init__(self, fail_on_first: bool = False) -> None:
        self.violations = []  # type: List[PropertyViolation]
        self.fail_on_first = fail_on_first

    def addViolation(self, prop: str, message: str, data: Optional[Dict[str, Any]] = None, is_warning: bool = False) -> None:
        issue = PropertyViolation(prop, message, data, is_warning)
        if self.fail_on_first and not is_warning:
            raise issue
        self.violations.append(issue)

    def errors(self) -> List[PropertyViolation]:
        return [v for v in self.violations if not v.is_warning]

    def ok(self) -> bool:
        return not self.errors()

    def to_json(self) -> List[Dict[str, Any]]:
        return [v.to_json() for v in self.violations]


class PropertyReport(Jsonable):
    """ Outcome of one verification suite: how many checks ran and what they found. """
    def __init__(self, suite: str, collector: Optional[ViolationCollector] = None) -> None:
        self.suite = suite
        self.checks = 0
        self.collector = collector if collector is not None else ViolationCollector()
        self.details = {}  # type: Dict[str, Any]

    def count(self, n: int = 1) -> None:
        self.checks += n

    def ok(self) -> bool:
        return self.collector.ok()

    def to_json(self) -> Dict[str, Any]:
        return {"suite": self.suite, "checks": self.checks, "ok": self.ok(),
                "violations": self.collector.to_json(), "details": self.details}
