# SPDX-License-Identifier: Apache-2.0

"""Audit summary page."""

import voluptuous
import voluptuous.humanize

from threshold_lab import auditt
from threshold_lab import rational
from threshold_lab import subsets
from threshold_lab import templates
from threshold_lab import util

################################################################
# Data passed to jinja to generate the audit page from audit.jinja.html

VALID_PAGE_DATA = voluptuous.Schema({
    'instance': {
        'family': [str], # rendered minimal elements
        'n': int,
        'p': str,
        'r': int,
        'budget': str,
        'witness_p': voluptuous.Any(str, None),
        'm': voluptuous.Any(int, None) # sample size
    },
    'hypotheses': [{
        'name': str,
        'relation': str,
        'lhs': str,
        'rhs': str,
        'status': voluptuous.Any(auditt.PASS, auditt.FAIL, auditt.SKIPPED),
        'note': str
    }],
    'contracts': [{
        'name': str,
        'relation': str,
        'lhs': str,
        'rhs': str,
        'status': voluptuous.Any(auditt.PASS, auditt.FAIL, auditt.SKIPPED),
        'note': str
    }],
    'passed': bool
}, required=True)

VALID_PAGE = voluptuous.Schema({
    'page': VALID_PAGE_DATA,
    'outdir': str # default output directory for dump()
}, required=True)

################################################################

class AuditPage:
    """Audit summary page.

    The page lists the hypotheses the instance satisfies and every
    contract check with its two sides in decimal.
    """

    def __init__(self, report, outdir='.'):
        config = report.instance['config']
        witness = report.instance['witness']
        self.page = {
            'instance': {
                'family': [subsets.render(bits) for bits in report.family.minimal],
                'n': report.family.n,
                'p': report.instance['p'],
                'r': report.instance['r'],
                'budget': report.instance['budget'],
                'witness_p': None if witness is None else witness['p'],
                'm': None if config is None else config['m']
            },
            'hypotheses': [row(check) for check in report.checks
                           if check.kind == auditt.HYPOTHESIS],
            'contracts': [row(check) for check in report.checks
                          if check.kind == auditt.CONTRACT],
            'passed': report.passed()
        }
        self.outdir = outdir
        self.validate()

    def __str__(self):
        """Render the audit page as html."""

        return templates.render_audit(
            self.page['instance'], self.page['hypotheses'] + self.page['contracts'],
            self.page['passed']
        )

    def validate(self):
        """Validate members of an audit page object."""

        return voluptuous.humanize.validate_with_humanized_errors(
            self.__dict__, VALID_PAGE
        )

    def dump(self, filename=None, outdir=None):
        """Write the audit page to a file rendered as html."""

        util.dump(self, filename or "audit.html", outdir or self.outdir)

def row(check):
    """A check as displayed on the page."""

    def text(value):
        return '' if value is None else rational.approx(value)

    return {
        'name': check.name,
        'relation': check.relation,
        'lhs': text(check.lhs),
        'rhs': text(check.rhs),
        'status': check.status(),
        'note': check.note
    }
