"""Serialization helpers for exact rationals."""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction


def format_rational(value: Fraction | int) -> str:
    """Render ``value`` as ``"p/q"`` in lowest terms with ``q > 0``."""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_decimal(value: Fraction | int, digits: int = 12) -> str:
    """Decimal rendering for display only; never fed back into comparisons."""
    q = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(q.numerator) / Decimal(q.denominator)
    return format(d, "g") if d != 0 else "0"


def pretty_rational(value: Fraction | int) -> str:
    q = Fraction(value)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
