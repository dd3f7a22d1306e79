"""
Exact rational scalars.

Scalars are ``fractions.Fraction`` values; this module only adds parsing,
formatting and conversion helpers.
"""

import re
from fractions import Fraction
from typing import Union

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_SCALAR_PATTERN = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')


def to_scalar(value: Union[int, Fraction, str]) -> Fraction:
    """Coerce an int, Fraction or literal string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise ValueError(f"Cannot use {value!r} as an exact scalar")


def parse_scalar(text: str) -> Fraction:
    """
    Parse ``p/q`` or an integer literal.

    Raises:
        ValueError: If the text is not a rational literal or q is zero
    """
    match = _SCALAR_PATTERN.match(text)
    if not match:
        raise ValueError(f"Invalid scalar literal '{text}'")

    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) else 1
    if denominator == 0:
        raise ValueError(f"Zero denominator in scalar literal '{text}'")

    return Fraction(numerator, denominator)


def format_scalar(value: Fraction) -> str:
    """Render a Fraction as ``p/q`` or an integer."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
