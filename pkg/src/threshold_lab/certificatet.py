# SPDX-License-Identifier: Apache-2.0

"""Certificates for p-smallness and weak (p, r)-smallness.

A cover certificate is a collection G of sets with weight
sum_{S in G} p^|S|, and a lambda certificate is a fractional cover
with weight sum_S lambda_S p^|S|.  Both are checked in exact
arithmetic against a budget, 1/2 by default.
"""

from fractions import Fraction
import json
import logging

import voluptuous
import voluptuous.humanize

from threshold_lab import rational
from threshold_lab import subsets
from threshold_lab import templates
from threshold_lab import util
from threshold_lab.familyt import Cover
from threshold_lab.lambdat import Lambda

JSON_TAG = 'threshold-certificate'

RATIONAL = voluptuous.Match(r'^-?\d+/\d+$')

VALID_COVER_CERTIFICATE = voluptuous.Schema({
    'kind': 'cover',
    'p': RATIONAL,
    'weight': RATIONAL,
    'cover': [[int]]
}, required=True)

VALID_LAMBDA_CERTIFICATE = voluptuous.Schema({
    'kind': 'lambda',
    'p': RATIONAL,
    'r': voluptuous.Any(voluptuous.All(int, voluptuous.Range(min=1)), None),
    'weight': RATIONAL,
    'lambda': [{'set': [int], 'value': RATIONAL}]
}, required=True)

################################################################

class CoverCertificate:
    """A cover G witnessing p-smallness, with its exact weight."""

    def __init__(self, p, cover, weight=None):
        self.p = Fraction(p)
        self.cover = cover if isinstance(cover, Cover) else Cover(cover)
        self.weight = self.cover.weight(self.p) if weight is None else Fraction(weight)
        self.validate()

    def __repr__(self):
        return f'CoverCertificate(p={self.p}, weight={self.weight}, cover={self.cover!r})'

    def __str__(self):
        """Render the certificate as text."""

        return templates.render_cover(
            rational.exact(self.p), rational.exact(self.weight),
            [subsets.render(bits) for bits in self.cover]
        )

    def to_dict(self):
        """A dict representation of the certificate."""

        return {
            'kind': 'cover',
            'p': rational.exact(self.p),
            'weight': rational.exact(self.weight),
            'cover': [list(subsets.elements(bits)) for bits in self.cover]
        }

    def to_json(self):
        """A json representation of the certificate."""

        return json.dumps({JSON_TAG: self.to_dict()}, indent=2, sort_keys=True)

    def validate(self):
        """Validate the certificate."""

        return voluptuous.humanize.validate_with_humanized_errors(
            self.to_dict(), VALID_COVER_CERTIFICATE
        )

    def dump(self, filename=None, directory=None):
        """Write the certificate text to a file or stdout."""

        util.dump(str(self).rstrip('\n'), filename, directory)

class LambdaCertificate:
    """A fractional cover witnessing weak (p, r)-smallness, with its exact weight."""

    def __init__(self, p, r, lam, weight=None):
        self.p = Fraction(p)
        self.r = r
        self.lam = lam if isinstance(lam, Lambda) else Lambda(lam)
        self.weight = self.lam.weight(self.p) if weight is None else Fraction(weight)
        self.validate()

    def __repr__(self):
        return (f'LambdaCertificate(p={self.p}, r={self.r}, '
                f'weight={self.weight}, lam={self.lam!r})')

    def __str__(self):
        """Render the certificate as text."""

        return templates.render_lambda(
            rational.exact(self.p),
            'unbounded' if self.r is None else self.r,
            rational.exact(self.weight),
            [(subsets.render(bits), rational.exact(value)) for bits, value in self.lam.items()]
        )

    def to_dict(self):
        """A dict representation of the certificate."""

        return {
            'kind': 'lambda',
            'p': rational.exact(self.p),
            'r': self.r,
            'weight': rational.exact(self.weight),
            'lambda': [{'set': list(subsets.elements(bits)), 'value': rational.exact(value)}
                       for bits, value in self.lam.items()]
        }

    def to_json(self):
        """A json representation of the certificate."""

        return json.dumps({JSON_TAG: self.to_dict()}, indent=2, sort_keys=True)

    def validate(self):
        """Validate the certificate."""

        return voluptuous.humanize.validate_with_humanized_errors(
            self.to_dict(), VALID_LAMBDA_CERTIFICATE
        )

    def dump(self, filename=None, directory=None):
        """Write the certificate text to a file or stdout."""

        util.dump(str(self).rstrip('\n'), filename, directory)

################################################################

def verify_cover(cert, family, budget=rational.HALF):
    """Does the cover generate a superfamily of the family within the budget?"""

    weight = cert.cover.weight(cert.p)
    if weight != cert.weight:
        logging.info("Cover certificate weight %s does not match recomputed weight %s",
                     cert.weight, weight)
        return False
    if not cert.cover.covers(family):
        logging.info("Cover certificate does not cover every minimal element")
        return False
    if weight > budget:
        logging.info("Cover certificate weight %s exceeds budget %s", weight, budget)
        return False
    return True

def verify_lambda(cert, family, budget=rational.HALF):
    """Is lambda a fractional cover of the family, supported on small sets, within the budget?"""

    weight = cert.lam.weight(cert.p)
    if weight != cert.weight:
        logging.info("Lambda certificate weight %s does not match recomputed weight %s",
                     cert.weight, weight)
        return False
    if cert.r is not None and cert.lam.max_support_size() > cert.r:
        logging.info("Lambda certificate has support larger than r=%s", cert.r)
        return False
    for minimal in family.minimal:
        if cert.lam.mass(minimal) < 1:
            logging.info("Lambda certificate gives mass %s < 1 to %s",
                         cert.lam.mass(minimal), subsets.elements(minimal))
            return False
    if weight > budget:
        logging.info("Lambda certificate weight %s exceeds budget %s", weight, budget)
        return False
    return True
