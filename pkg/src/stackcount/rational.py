"""Exact rational helpers and the pydantic field type used in reports."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Annotated, Any

from pydantic import PlainSerializer, PlainValidator


def to_fraction(value: Any) -> Fraction:
    """Coerce an int, Fraction, "p/q" string or finite float to a Fraction.

    Floats are converted through their shortest decimal repr so that 1e7
    becomes exactly 10000000.

    Raises:
        ValueError: If the value is not a finite rational.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        msg = "booleans are not rationals"
        raise ValueError(msg)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            msg = f"not a finite number: {value}"
            raise ValueError(msg)
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            msg = f"not a rational: {value!r}"
            raise ValueError(msg) from e
    msg = f"cannot interpret {type(value).__name__} as a rational"
    raise ValueError(msg)


def format_fraction(value: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when integral."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def fractional_part(value: Fraction) -> Fraction:
    """Return value - floor(value), always in [0, 1)."""
    return value - math.floor(value)


def ceil_fraction(value: Fraction) -> int:
    return -((-value.numerator) // value.denominator)


# Exact rational in pydantic models, serialized as "p/q".
Rational = Annotated[
    Fraction,
    PlainValidator(to_fraction),
    PlainSerializer(format_fraction, return_type=str),
]
