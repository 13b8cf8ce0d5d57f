# SPDX-License-Identifier: Apache-2.0

"""Exact rational numbers: parsing flag text and rendering results.

Every decision procedure in threshold-lab works with fractions.Fraction,
which is always kept in reduced form with a positive denominator.
"""

from fractions import Fraction
import decimal
import re

from threshold_lab.errors import ParseError

DIGITS = 12

# Upper approximation of e: the 15-digit truncation 2.718281828459045 rounded up.
E_UPPER = Fraction(2718281828459046, 10**15)

HALF = Fraction(1, 2)

POWER = re.compile(r'^\s*(\d+)\s*\^\s*(-?\d+)\s*$')

################################################################

def parse_rational(text):
    """Parse '3/10', '0.3', '1e-6' or '2^-40' as an exact rational."""

    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    match = POWER.match(text)
    if match:
        base, exponent = int(match.group(1)), int(match.group(2))
        if base == 0 and exponent < 0:
            raise ParseError(f"Division by zero in '{text}'")
        return Fraction(base) ** exponent
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"Not a rational number: '{text}'") from None

def parse_probability(text):
    """Parse a rational in (0, 1]."""

    value = parse_rational(text)
    if not 0 < value <= 1:
        raise ParseError(f"Expected a rational in (0, 1], found '{text}'")
    return value

def parse_positive(text):
    """Parse a rational > 0."""

    value = parse_rational(text)
    if value <= 0:
        raise ParseError(f"Expected a positive rational, found '{text}'")
    return value

################################################################

def exact(value):
    """Render a rational as num/den."""

    value = Fraction(value)
    return f'{value.numerator}/{value.denominator}'

def approx(value, digits=DIGITS):
    """Render a rational as a decimal with the given significant digits."""

    value = Fraction(value)
    with decimal.localcontext() as context:
        context.prec = digits
        number = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
        number = number.normalize()
    # Trailing zeros are dropped, as for floats
    if number == number.to_integral_value():
        return str(int(number))
    return format(number, 'g')

def ceil(value):
    """The least integer at least value."""

    value = Fraction(value)
    return -(-value.numerator // value.denominator)
