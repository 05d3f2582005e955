"""Exact decimal arithmetic helpers.

Coefficients and limits are kept as rationals so that canonical equality is
exact; floats only appear at the solver boundary.
"""

import re
from fractions import Fraction

_DECIMAL_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)")


def parse_number(token: str) -> Fraction:
    """Parse a plain decimal literal into an exact rational."""
    token = token.strip()
    if not _DECIMAL_RE.fullmatch(token):
        raise ValueError(f"not a decimal number: {token!r}")
    return Fraction(token)


def format_number(value: Fraction) -> str:
    """Render a rational as the exact decimal string it came from.

    Only rationals with a terminating decimal expansion are representable;
    anything else is a programming error upstream.
    """
    if value.denominator == 1:
        return str(value.numerator)
    twos = fives = 0
    d = value.denominator
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        raise ValueError(f"{value} has no terminating decimal expansion")
    places = max(twos, fives)
    scaled = value * 10**places
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    sign = "-" if value < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"
