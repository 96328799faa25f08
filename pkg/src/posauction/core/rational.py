"""Exact rational helpers.

``Rational`` is :class:`fractions.Fraction`; every budget, bid, probability and
equilibrium value in the package is one.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Union

from .errors import DomainError, ValidationError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

__all__ = [
    "Rational",
    "RationalLike",
    "as_rational",
    "parse_rational",
    "parse_rational_list",
    "format_rational",
    "format_decimal",
    "strict_multiple_floor",
    "integral_floor",
]


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, ``p`` or a decimal string (``0.15``) exactly."""
    if not isinstance(text, str):
        raise ValidationError(f"expected rational text, got {type(text).__name__}")
    cleaned = text.strip()
    if not cleaned:
        raise ValidationError("empty rational")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"invalid rational: {text!r}") from exc


def parse_rational_list(text: str) -> List[Fraction]:
    parts = [part for part in text.split(",") if part.strip()]
    if not parts:
        raise ValidationError("empty rational list")
    return [parse_rational(part) for part in parts]


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ValidationError(f"cannot convert {type(value).__name__} to a rational; floats are rejected")


def format_rational(value: Fraction) -> str:
    """Canonical ``p/q`` text; ``q`` omitted when 1, sign on the numerator."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction, digits: int = 6) -> str:
    # display only
    return f"{float(value):.{digits}f}"


def strict_multiple_floor(x: RationalLike, y: RationalLike) -> Fraction:
    """Largest integral multiple of ``y`` strictly below ``x``: ``y * (ceil(x/y) - 1)``."""
    x = as_rational(x)
    y = as_rational(y)
    if y <= 0:
        raise DomainError(f"step must be positive, got {format_rational(y)}")
    if x <= 0:
        raise DomainError(f"value must be positive, got {format_rational(x)}")
    return y * (math.ceil(x / y) - 1)


def integral_floor(x: RationalLike) -> Fraction:
    return strict_multiple_floor(x, 1)
