"""Exact text encodings of rationals, intervals and results.

Rationals travel as "a/b" or integer strings, infinities as "+inf" and
"-inf". Results are rendered as JSON with sorted keys so identical inputs
give identical bytes.
"""

import dataclasses
import json
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Mapping, Tuple

from kummerlab.errors import InputError
from kummerlab.newton import NewtonData
from kummerlab.residues import FpLaurent, LaurentExt
from kummerlab.valnum import NEG_INF, POS_INF, Infinity, LogInterval, LogMag, as_fraction


def _clean(text: str) -> str:
    return text.strip().replace("−", "-")


def parse_rational(text) -> Fraction:
    """Parse "a/b", "-a" or an int

    Raises:
        InputError: If the value is not an exact rational
    """
    if isinstance(text, str):
        text = _clean(text)
    return as_fraction(text)


def parse_logmag(text) -> LogMag:
    if isinstance(text, str) and _clean(text) in ("+inf", "inf"):
        return POS_INF
    if isinstance(text, str) and _clean(text) == "-inf":
        return NEG_INF
    return parse_rational(text)


def format_rational(value: LogMag) -> str:
    if isinstance(value, Infinity):
        return str(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_interval(lo, hi, lo_closed: bool = False, hi_closed: bool = False) -> LogInterval:
    try:
        return LogInterval(parse_logmag(lo), parse_logmag(hi), lo_closed, hi_closed)
    except InputError:
        raise
    except (TypeError, ValueError) as e:
        raise InputError(f"Invalid interval ({lo}, {hi}): {str(e)}")


def interval_to_dict(interval: LogInterval) -> dict:
    return {
        "lo": format_rational(interval.lo),
        "hi": format_rational(interval.hi),
        "lo_closed": interval.lo_closed,
        "hi_closed": interval.hi_closed,
        "empty": interval.is_empty(),
    }


def newton_from_terms(terms: Iterable[Tuple[int, str]]) -> NewtonData:
    return NewtonData(tuple(sorted((int(k), parse_rational(v)) for k, v in terms)))


def laurent_from_terms(p: int, terms: Iterable[Tuple[int, str]]) -> LaurentExt:
    return LaurentExt.from_rationals(p, {int(k): parse_rational(v) for k, v in terms})


def newton_to_list(nd: NewtonData):
    return [[degree, format_rational(value)] for degree, value in nd]


def to_jsonable(value: Any) -> Any:
    """Recursively turn library values into JSON-compatible data"""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, (Fraction, Infinity)):
        return format_rational(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, LogInterval):
        return interval_to_dict(value)
    if isinstance(value, NewtonData):
        return newton_to_list(value)
    if isinstance(value, FpLaurent):
        return str(value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"Cannot encode {type(value).__name__}")


def dumps(document: Any) -> str:
    return json.dumps(to_jsonable(document), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
