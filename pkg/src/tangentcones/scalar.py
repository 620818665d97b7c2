"""Exact coefficient arithmetic.

Integers are Python ``int`` (arbitrary precision, canonical by construction)
and rationals are :class:`fractions.Fraction`, which reduces to lowest terms
with a positive denominator on construction.  The helpers below are the
named entry points the rest of the package uses.
"""

from __future__ import annotations

import re
from fractions import Fraction

Integer = int
Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+\-−]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def rat(numerator: int | Fraction, denominator: int = 1) -> Fraction:
    if denominator == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(numerator, denominator)


def rat_add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def rat_mul(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def rat_neg(a: Fraction) -> Fraction:
    return -a


def rat_inv(a: Fraction) -> Fraction:
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / Fraction(a)


def is_canonical(a: Fraction) -> bool:
    from math import gcd

    return a.denominator > 0 and gcd(abs(a.numerator), a.denominator) == 1


def parse_rational(text: str) -> Fraction:
    """Parse ``"-3/7"``, ``"12"`` or ``"−3/7"`` (unicode minus)."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational number: {text!r}")
    sign, num, den = m.groups()
    value = rat(int(num), int(den) if den is not None else 1)
    return -value if sign in ("-", "−") else value


def format_rational(a: Fraction) -> str:
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"
