# SPDX-License-Identifier: Apache-2.0

"""Constants of the selector argument for one instance.

For restriction r the tail bound uses C = (2er)^2, the argument uses
J = 10rC, and the random set has m = Jpn/(2r) = 5Cpn elements.  The
constant e is replaced by a rational upper approximation, so C is
rounded up and every bound inequality keeps its direction.  The real
value 5Cpn is kept as real_m; the sample size m is 5Cpn rounded up
and capped at n, unless overridden.
"""

from fractions import Fraction
import json

import voluptuous
import voluptuous.humanize

from threshold_lab import rational

JSON_TAG = 'threshold-selector-config'

VALID_CONFIG = voluptuous.Schema({
    'r': voluptuous.All(int, voluptuous.Range(min=1)),
    'n': voluptuous.All(int, voluptuous.Range(min=0)),
    'p': str,
    'e': str,
    'C': str,
    'J': str,
    'real_m': str,
    'm': voluptuous.All(int, voluptuous.Range(min=0)),
    'c': str
}, required=True)

################################################################

class SelectorConfig:
    """The constants r, C, J, m and c for one instance (n, p)."""

    def __init__(self, r, p, n, *, C=None, m=None, c=None, e=rational.E_UPPER):
        # pylint: disable=too-many-arguments

        if not isinstance(r, int) or r < 1:
            raise ValueError(f"Restriction r must be a positive integer, found {r}")
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"Ground set size must be a nonnegative integer, found {n}")
        self.r = r
        self.n = n
        self.p = Fraction(p)
        self.e = Fraction(e)
        self.C = (2 * self.e * r) ** 2 if C is None else Fraction(C)
        self.J = 10 * r * self.C
        self.real_m = self.J * self.p * n / (2 * r)
        self.m = min(n, rational.ceil(self.real_m)) if m is None else m
        if not 0 <= self.m <= n:
            raise ValueError(f"Sample size m={self.m} is outside 0..{n}")
        self.c = 1 - Fraction(1, 2 * r) if c is None else Fraction(c)
        self.validate()

    def __repr__(self):
        return (f'SelectorConfig(r={self.r}, n={self.n}, p={self.p}, '
                f'C~{float(self.C):.6g}, m={self.m}, c={self.c})')

    def __str__(self):
        """A string representation of the configuration."""

        return json.dumps({JSON_TAG: self.to_dict()}, indent=2, sort_keys=True)

    def to_dict(self):
        """A dict representation of the configuration."""

        return {
            'r': self.r,
            'n': self.n,
            'p': rational.exact(self.p),
            'e': rational.exact(self.e),
            'C': rational.exact(self.C),
            'J': rational.exact(self.J),
            'real_m': rational.exact(self.real_m),
            'm': self.m,
            'c': rational.exact(self.c)
        }

    def validate(self):
        """Validate the configuration."""

        return voluptuous.humanize.validate_with_humanized_errors(
            self.to_dict(), VALID_CONFIG
        )

    def capped(self):
        """Was the sample size capped at n?"""

        return self.m == self.n and self.real_m > self.n

    def jp(self):
        """The scaled probability Jp."""

        return self.J * self.p
