"""Exact rational parsing and formatting.

Rationals travel as ``"num/den"`` strings; decimals such as ``"0.48"`` are
read exactly (``12/25``), never through binary floating point.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import InvariantError


def to_fraction(value) -> Fraction:
    """Convert an int, Fraction or rational string exactly.

    Floats are rejected: their binary expansion is rarely what was meant.
    """
    if isinstance(value, bool):
        raise InvariantError(f"not a rational number: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InvariantError(f"not a rational number: {value!r}") from None
    raise InvariantError(f"expected an exact rational (int, Fraction or 'num/den'), got {value!r}")


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
