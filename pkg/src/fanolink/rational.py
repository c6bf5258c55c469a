"""Exact rational arithmetic for the enumeration engine.

Every numeric quantity in the engine is either a Python int or a reduced
``fractions.Fraction``.  Floats are never produced or accepted: equality of
results with the golden tables has to be exact, so all arithmetic goes
through this module (or through plain int operations in hot loops, which
are exact anyway).

The engine is specified against 64-bit exact arithmetic.  Python integers
do not overflow, so the 2**63 bound cannot be exceeded silently; the
``audit_magnitude`` helper still enforces it at the few trust boundaries
(construction and candidate emission) so that a port to fixed-width
integers would fail loudly here rather than wrap around.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction

# Magnitude bound for the 64-bit arithmetic contract.
INT64_LIMIT = 2**63


class RationalOverflowError(ArithmeticError):
    """Numerator or denominator left the signed 64-bit range."""


def audit_magnitude(x: Fraction | int) -> Fraction | int:
    """Return ``x`` unchanged, raising if it exceeds the 64-bit contract."""
    n, d = (x.numerator, x.denominator) if isinstance(x, Fraction) else (x, 1)
    if not (-INT64_LIMIT <= n < INT64_LIMIT and 0 < d < INT64_LIMIT):
        raise RationalOverflowError(f"magnitude outside signed 64-bit range: {n}/{d}")
    return x


def rat(numerator: int, denominator: int = 1) -> Fraction:
    """Reduced rational with positive denominator; denominator 0 is an error."""
    if denominator == 0:
        raise ZeroDivisionError("rational with zero denominator")
    value = Fraction(numerator, denominator)
    audit_magnitude(value)
    return value


def is_integer(x: Fraction | int) -> bool:
    return isinstance(x, int) or x.denominator == 1


def as_integer(x: Fraction | int) -> int:
    if isinstance(x, int):
        return x
    if x.denominator != 1:
        raise ValueError(f"not an integer: {x}")
    return x.numerator


def add(x: Fraction, y: Fraction) -> Fraction:
    return x + y


def sub(x: Fraction, y: Fraction) -> Fraction:
    return x - y


def mul(x: Fraction, y: Fraction) -> Fraction:
    return x * y


def div(x: Fraction, y: Fraction) -> Fraction:
    # Fraction raises ZeroDivisionError on y == 0, as required.
    return x / y


def neg(x: Fraction) -> Fraction:
    return -x


def pow3(x: Fraction) -> Fraction:
    return x * x * x


def cmp(x: Fraction | int, y: Fraction | int) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


def render_exact(x: Fraction | int) -> str:
    """Machine form: bare integer, or 'n/d' in lowest terms.

    This is the canonical serialization for CSV and JSON output; it never
    loses precision and ``parse_rational`` inverts it.
    """
    if isinstance(x, int):
        return str(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def render_table(x: Fraction | int) -> str:
    """Display form used by the human-readable table renderers.

    Halves print with one decimal place and quarters with two, matching the
    typography of the reference tables; everything else falls back to the
    exact 'n/d' form.  The decimal forms are exact (denominators 2 and 4
    are powers of two), so parse_rational round-trips them.
    """
    if isinstance(x, int):
        return str(x)
    if x.denominator == 1:
        return str(x.numerator)
    if x.denominator == 2:
        return f"{x.numerator / 2:.1f}"
    if x.denominator == 4:
        return f"{x.numerator / 4:.2f}"
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse 'n', 'n/d', or a terminating decimal such as '-0.25', exactly."""
    value = Fraction(text.strip())
    audit_magnitude(value)
    return value
