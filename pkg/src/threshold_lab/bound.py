# SPDX-License-Identifier: Apache-2.0

"""The tail bound on the probability that a random m-set is bad.

For a family that is not p-small, a uniform m-subset W of the ground
set is (1 - 1/(2r))-bad with probability less than

    2 sum_{t=1}^{n} x^t,   x = C n p / m.

The bound is used as an oracle to test against and is evaluated
exactly.  It is vacuous when it is at least 1.
"""

from fractions import Fraction
import logging

from threshold_lab.errors import DegenerateInput

################################################################

def geometric_sum(x, n):
    """sum_{t=1}^{n} x^t in closed form."""

    x = Fraction(x)
    if n <= 0:
        return Fraction(0)
    if x == 1:
        return Fraction(n)
    return x * (1 - x ** n) / (1 - x)

def bmm_bound(cfg, m=None):
    """Evaluate the bound for a configuration, returning (value, vacuous).

    The sample size defaults to the integer cfg.m; any positive rational
    m may be given instead, such as the unrounded cfg.real_m.
    """

    m = cfg.m if m is None else Fraction(m)
    if m <= 0:
        raise DegenerateInput(f"The bound needs a positive sample size, found m={m}")
    x = cfg.C * cfg.n * cfg.p / m
    value = 2 * geometric_sum(x, cfg.n)
    vacuous = value >= 1
    logging.debug("bmm bound: x=%s, value=%s, vacuous=%s", float(x), float(value), vacuous)
    return value, vacuous
