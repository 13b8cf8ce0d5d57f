# SPDX-License-Identifier: Apache-2.0

"""Run the selector argument on one instance and record every step.

The audit never asserts the final contradiction: at desk scale the
constants make "not p-small" and "weakly (Jp, r)-small with Jp <= 1"
incompatible.  It records whether the hypotheses hold (hypothesis
rows) and checks each inequality the argument proves on the instance
(contract rows).  A failed contract row means an implementation bug.
"""

from fractions import Fraction
import csv
import io
import json
import logging
import math
import random

import voluptuous
import voluptuous.humanize

from threshold_lab import bound
from threshold_lab import covering
from threshold_lab import familyt
from threshold_lab import fractional
from threshold_lab import measure
from threshold_lab import rational
from threshold_lab import sampling
from threshold_lab import subsets
from threshold_lab import util
from threshold_lab.configt import SelectorConfig
from threshold_lab.errors import CapExceeded, ContractError, DegenerateInput

JSON_TAG = 'threshold-audit'

HYPOTHESIS = 'hypothesis'
CONTRACT = 'contract'

PASS = 'true'
FAIL = 'false'
SKIPPED = 'skipped'

CSV_COLUMNS = ('check_name', 'lhs', 'rhs', 'slack', 'pass')

# Exhaustive sweep of the claim over (Y, I) up to this ground set size
CLAIM_EXHAUSTIVE_MAX_N = 8
CLAIM_SAMPLES = 4096

# Rows that enumerate every member of the family stop at this ground set size
MEMBER_MAX_N = 16

# Monte Carlo estimates are compared with the bound within this many standard errors
SIGMAS = 4

# Stream index of the claim sampler, distinct from the Monte Carlo partitions
CLAIM_STREAM = 1 << 32

# (name, kind, relation) in report order
CATALOGUE = (
    ('not-p-small', HYPOTHESIS, '>'),
    ('jp-at-most-one', HYPOTHESIS, '<='),
    ('weakly-jp-r-small', HYPOTHESIS, '<='),
    ('lambda-feasible', CONTRACT, '>='),
    ('normalize-weight', CONTRACT, '<='),
    ('mu-normalization', CONTRACT, '>='),
    ('claim', CONTRACT, '<='),
    ('expectation-chain', CONTRACT, '<='),
    ('scaled-chain', CONTRACT, '<='),
    ('quarter-chain', CONTRACT, '<='),
    ('markov', CONTRACT, '>='),
    ('observation', CONTRACT, '>='),
    ('bound-envelope', CONTRACT, '<'),
    ('bound-vs-truth', CONTRACT, '<='),
)

RATIONAL = voluptuous.Match(r'^-?\d+/\d+$')

VALID_CHECK = voluptuous.Schema({
    'name': voluptuous.Any(*[name for name, _, _ in CATALOGUE]),
    'kind': voluptuous.Any(HYPOTHESIS, CONTRACT),
    'relation': voluptuous.Any('<', '<=', '>', '>='),
    'lhs': voluptuous.Any(RATIONAL, None),
    'rhs': voluptuous.Any(RATIONAL, None),
    'slack': voluptuous.Any(RATIONAL, None),
    'pass': voluptuous.Any(PASS, FAIL, SKIPPED),
    'note': str
}, required=True)

VALID_INSTANCE = voluptuous.Schema({
    'family': {'n': int, 'minimal': [[int]]},
    'p': RATIONAL,
    'r': voluptuous.All(int, voluptuous.Range(min=1)),
    'budget': RATIONAL,
    'seed': int,
    'trials': int,
    'partitions': int,
    'config': voluptuous.Any(dict, None),
    'witness': voluptuous.Any(None, {
        'p': RATIONAL,
        'lambda': [{'set': [int], 'value': RATIONAL}]
    })
}, required=True)

VALID_AUDIT = voluptuous.Schema({
    'instance': VALID_INSTANCE,
    'checks': [VALID_CHECK],
    'passed': bool
}, required=True)

################################################################

class CheckRecord:
    """One row of an audit: lhs relation rhs, or a skipped step."""

    def __init__(self, name, lhs=None, rhs=None, *, skipped=False, note=''):
        self.name = name
        _, self.kind, self.relation = next(row for row in CATALOGUE if row[0] == name)
        self.lhs = None if lhs is None else Fraction(lhs)
        self.rhs = None if rhs is None else Fraction(rhs)
        self.skipped = skipped
        self.note = note

    def __repr__(self):
        return f'CheckRecord({self.name}: {self.lhs} {self.relation} {self.rhs}, {self.status()})'

    @property
    def slack(self):
        """rhs - lhs for upper bounds, lhs - rhs for lower bounds."""

        if self.lhs is None or self.rhs is None:
            return None
        if self.relation in ('<', '<='):
            return self.rhs - self.lhs
        return self.lhs - self.rhs

    @property
    def strict(self):
        """Does the check need positive slack?"""

        return self.relation in ('<', '>')

    def passed(self):
        """True, False, or None for a skipped row."""

        if self.skipped:
            return None
        slack = self.slack
        if slack is None:
            return False
        return slack > 0 if self.strict else slack >= 0

    def status(self):
        """The pass column of the report."""

        passed = self.passed()
        if passed is None:
            return SKIPPED
        return PASS if passed else FAIL

    def to_dict(self):
        """A dict representation of the check."""

        def text(value):
            return None if value is None else rational.exact(value)

        return {
            'name': self.name,
            'kind': self.kind,
            'relation': self.relation,
            'lhs': text(self.lhs),
            'rhs': text(self.rhs),
            'slack': text(self.slack),
            'pass': self.status(),
            'note': self.note
        }

    def csv_row(self):
        """The fields of the check in CSV column order."""

        data = self.to_dict()
        return [self.name, data['lhs'] or '', data['rhs'] or '', data['slack'] or '',
                data['pass']]

def skip(name, note):
    """A skipped check."""

    logging.info("audit: %s skipped: %s", name, note)
    return CheckRecord(name, skipped=True, note=note)

################################################################

class AuditReport:
    """The instance description and the checks run on it."""

    def __init__(self, family, p, r, *, budget=rational.HALF, seed=0, trials=10000,
                 partitions=sampling.DEFAULT_PARTITIONS, cfg=None):
        # pylint: disable=too-many-arguments
        self.family = family
        self.instance = {
            'family': family.to_dict(),
            'p': rational.exact(p),
            'r': r,
            'budget': rational.exact(budget),
            'seed': seed,
            'trials': trials,
            'partitions': partitions,
            'config': None if cfg is None else cfg.to_dict(),
            'witness': None
        }
        self.checks = []

    def __repr__(self):
        return f'AuditReport({self.family!r}, checks={len(self.checks)}, passed={self.passed()})'

    def __str__(self):
        """A json representation of the report."""

        return json.dumps({JSON_TAG: self.to_dict()}, indent=2)

    def add(self, check):
        """Append a check."""

        logging.debug("audit: %r", check)
        self.checks.append(check)
        return check

    def check(self, name):
        """The check with the given name."""

        return next(check for check in self.checks if check.name == name)

    def set_witness(self, witness):
        """Record the lambda the contract rows are evaluated on."""

        self.instance['witness'] = {
            'p': rational.exact(witness.p),
            'lambda': [{'set': list(subsets.elements(bits)), 'value': rational.exact(value)}
                       for bits, value in witness.lam.items()]
        }

    def failures(self):
        """The contract checks that failed."""

        return [check for check in self.checks
                if check.kind == CONTRACT and check.passed() is False]

    def passed(self):
        """Did every executed contract check pass?"""

        return not self.failures()

    def to_dict(self):
        """A dict representation of the report."""

        data = {
            'instance': self.instance,
            'checks': [check.to_dict() for check in self.checks],
            'passed': self.passed()
        }
        voluptuous.humanize.validate_with_humanized_errors(data, VALID_AUDIT)
        return data

    def to_csv(self):
        """The report as CSV text with a header row."""

        output = io.StringIO()
        writer = csv.writer(output, lineterminator='\n')
        writer.writerow(CSV_COLUMNS)
        for check in self.checks:
            writer.writerow(check.csv_row())
        return output.getvalue()

    def dump(self, filename=None, directory=None):
        """Write the report as CSV to a file or stdout."""

        util.dump(self.to_csv().rstrip('\n'), filename, directory)

    def dump_json(self, filename=None, directory=None):
        """Write the report as json to a file or stdout."""

        util.dump(str(self), filename, directory)

################################################################
# The contract rows

def check_mu(family, lam):
    """MuWeights of every member, or a failed row."""

    members = familyt.enumerate_members(family)
    try:
        profiles = {member: measure.mu_weights(member, lam) for member in members}
    except ContractError as error:
        return None, CheckRecord('mu-normalization', note=str(error))
    least = min(profile.nu for profile in profiles.values())
    return profiles, CheckRecord('mu-normalization', least, 1,
                                 note=f'{len(profiles)} members')

def claim_pairs(family, members, seed):
    """The (Y, I) pairs of the claim sweep and a description of the sweep."""

    if family.n <= CLAIM_EXHAUSTIVE_MAX_N:
        pairs = [(bits, member) for member in members for bits in subsets.all_masks(family.n)]
        return pairs, f'exhaustive over {len(pairs)} pairs'
    rng = random.Random(sampling.mix_seed(seed, CLAIM_STREAM))
    full = family.ground.full()
    pairs = [(rng.getrandbits(family.n) & full, members[rng.randrange(len(members))])
             for _ in range(CLAIM_SAMPLES)]
    return pairs, f'{len(pairs)} sampled pairs'

def check_claim(family, lam, r, profiles, seed):
    """The least slack of the claim over (Y, I) pairs."""

    pairs, note = claim_pairs(family, list(profiles), seed)
    worst = None
    for bits, member in pairs:
        lhs, rhs = measure.claim_slack(bits, member, lam, r, profiles[member])
        if worst is None or rhs - lhs < worst[1] - worst[0]:
            worst = (lhs, rhs)
    return CheckRecord('claim', worst[0], worst[1], note=note)

def check_bound_vs_truth(family, lam, cfg, *, seed, trials, partitions, threads, cap):
    """The probability of a bad m-set against the bound at the sample size."""

    # pylint: disable=too-many-arguments
    try:
        value, vacuous = bound.bmm_bound(cfg)
    except DegenerateInput as error:
        return skip('bound-vs-truth', str(error))
    note = 'vacuous bound' if vacuous else 'non-vacuous bound'
    try:
        prob, _ = sampling.bad_prob(family, lam, cfg, sampling.EXACT, cap=cap)
        return CheckRecord('bound-vs-truth', prob, value, note=f'exact, {note}')
    except CapExceeded:
        logging.info("audit: C(%s, %s) is above the cap, estimating", family.n, cfg.m)
    prob, stderr = sampling.bad_prob(family, lam, cfg, sampling.MONTE_CARLO, trials=trials,
                                     seed=seed, partitions=partitions, threads=threads)
    return CheckRecord('bound-vs-truth', prob, value + SIGMAS * Fraction(stderr),
                       note=f'monte carlo, {trials} trials, {partitions} partitions, {note}')

################################################################

def theorem_audit(family, p, r, *, budget=rational.HALF, seed=0, trials=10000,
                  partitions=sampling.DEFAULT_PARTITIONS, threads=1,
                  cap=sampling.ENUMERATION_CAP, C=None, m=None, c=None):
    """Run the selector argument on (F, p, r) and return an AuditReport."""

    # pylint: disable=too-many-arguments,too-many-locals,too-many-statements
    p = covering.check_probability(p)
    if p == 0:
        raise ValueError("The audit needs p > 0")
    if fractional.check_restriction(r) is None:
        raise ValueError("The audit needs a finite restriction r")
    budget = Fraction(budget)

    if family.is_empty() or family.is_full():
        report = AuditReport(family, p, r, budget=budget, seed=seed, trials=trials,
                             partitions=partitions)
        note = 'empty family' if family.is_empty() else 'family of all sets'
        for name, _, _ in CATALOGUE:
            report.add(skip(name, note))
        return report

    cfg = SelectorConfig(r, p, family.n, C=C, m=m, c=c)
    report = AuditReport(family, p, r, budget=budget, seed=seed, trials=trials,
                         partitions=partitions, cfg=cfg)
    jp = cfg.jp()

    util.progress("Checking the hypotheses")
    weight, _ = covering.min_cover_weight(family, p)
    report.add(CheckRecord('not-p-small', weight, budget))
    not_small = report.check('not-p-small').passed()
    report.add(CheckRecord('jp-at-most-one', jp, 1))
    if jp <= 1:
        value, _ = fractional.lp_min_weight(family, jp, r)
        report.add(CheckRecord('weakly-jp-r-small', value, budget))
    else:
        report.add(skip('weakly-jp-r-small', 'Jp > 1'))
    util.progress("Checking the hypotheses", True)

    util.progress("Computing the witness lambda")
    witness = measure.witness_lambda(family, cfg)
    lam, raw = witness.lam, witness.raw
    report.set_witness(witness)
    util.progress("Computing the witness lambda", True)

    # The chain needs the witness to be optimal at Jp and weigh at most 1/2 there
    chained = jp <= 1 and witness.value <= rational.HALF

    util.progress("Checking the measures")
    least = min(lam.mass(minimal) for minimal in family.minimal)
    report.add(CheckRecord('lambda-feasible', least, 1, note=f'lambda at p={witness.p}'))
    if witness.value <= rational.HALF:
        empty = raw.empty_weight()
        report.add(CheckRecord('normalize-weight', lam.weight(witness.p),
                               (1 - 2 * empty) / (2 * (1 - empty))))
    else:
        report.add(skip('normalize-weight', 'lambda weight above 1/2'))
    if family.n > MEMBER_MAX_N:
        profiles = None
        report.add(skip('mu-normalization', f'n > {MEMBER_MAX_N}'))
    else:
        profiles, record = check_mu(family, lam)
        report.add(record)
    if profiles is None:
        report.add(skip('claim', 'mu weights undefined'))
    else:
        report.add(check_claim(family, lam, r, profiles, seed))
    util.progress("Checking the measures", True)

    util.progress("Checking the expectation chain")
    n = family.n
    m_obs = min(n, math.floor(cfg.real_m))
    expected = sampling.expected_mass(lam, n, m_obs)
    report.add(CheckRecord('expectation-chain', expected,
                           sampling.scaled_mass(lam, Fraction(m_obs, n)), note=f'm={m_obs}'))
    report.add(CheckRecord('scaled-chain', sampling.scaled_mass(lam, jp / (2 * r)),
                           sampling.scaled_mass(lam, jp) / (2 * r)))
    if chained:
        report.add(CheckRecord('quarter-chain', sampling.scaled_mass(lam, jp) / (2 * r),
                               Fraction(1, 4 * r)))
    else:
        report.add(skip('quarter-chain', 'not weakly (Jp, r)-small'))
    try:
        o1 = sampling.o1_probability(lam, n, m_obs, r, cap)
    except CapExceeded as error:
        o1 = None
        report.add(skip('markov', str(error)))
    if o1 is not None:
        report.add(CheckRecord('markov', o1, 1 - 2 * r * expected, note=f'm={m_obs}'))
    if o1 is not None and chained:
        report.add(CheckRecord('observation', o1, rational.HALF, note=f'm={m_obs}'))
    elif o1 is None:
        report.add(skip('observation', 'enumeration cap exceeded'))
    else:
        report.add(skip('observation', 'not weakly (Jp, r)-small'))
    util.progress("Checking the expectation chain", True)

    util.progress("Checking the tail bound")
    envelope, _ = bound.bmm_bound(cfg, cfg.real_m)
    report.add(CheckRecord('bound-envelope', envelope, rational.HALF,
                           note=f'm={rational.approx(cfg.real_m)}'))
    if not_small and n > MEMBER_MAX_N:
        report.add(skip('bound-vs-truth', f'n > {MEMBER_MAX_N}'))
    elif not_small:
        report.add(check_bound_vs_truth(family, lam, cfg, seed=seed, trials=trials,
                                        partitions=partitions, threads=threads, cap=cap))
    else:
        report.add(skip('bound-vs-truth', 'family is p-small'))
    util.progress("Checking the tail bound", True)

    logging.info("audit: %s contract failures", len(report.failures()))
    return report
