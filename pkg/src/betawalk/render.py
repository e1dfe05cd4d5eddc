"""Shared serialization helpers: exact rationals and 15-digit decimals."""

from __future__ import annotations

from fractions import Fraction


def fraction_str(value: Fraction) -> str:
    """Canonical "numerator/denominator" form, denominator always present."""
    return f"{value.numerator}/{value.denominator}"


def decimal15(value) -> str:
    """Decimal rendering to 15 significant digits."""
    return format(float(value), ".15g")
