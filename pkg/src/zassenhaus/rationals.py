"""Exact rational coefficients.

All series and matrix arithmetic in this package is exact.  gmpy2's mpq is
used when available (roughly 7x faster than the stdlib on the coefficient
churn of high orders); fractions.Fraction is a drop-in fallback.  Both keep
values in lowest terms with a positive denominator, so the representation
invariants hold for free.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - environments without gmpy2
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)


def rational_str(value) -> str:
    """Render a rational as 'p/q' with the denominator always explicit."""
    return f"{value.numerator}/{value.denominator}"


def pretty_rational(value) -> str:
    """Render a rational as 'p' when integral, else 'p/q'."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str):
    """Parse 'p/q' or 'p' (decimal integer strings) into an exact rational."""
    num, _, den = text.partition("/")
    if den:
        return Q(int(num), int(den))
    return Q(int(num))
