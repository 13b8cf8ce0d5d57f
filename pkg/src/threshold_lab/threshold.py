# SPDX-License-Identifier: Apache-2.0

"""Expectation thresholds q(F) and fractional expectation thresholds q_f(F).

Both thresholds are located by bisection on [0, 1].  The minimum cover
weight and the fractional program value are nondecreasing and
continuous in p, so bisection maintains the bracket

    weight(lower) <= budget < weight(upper)

with exact rational endpoints, and stops once upper - lower <= tol.
The lower endpoint is reported together with the certificate found
there.  Attainment of the maximum in the definitions is not claimed.

Degenerate families follow fixed conventions: the empty family is
p-small for every p (threshold 1), and the family whose minimal element
is the empty set is never p-small (threshold 0).
"""

from fractions import Fraction
import json
import logging

import voluptuous
import voluptuous.humanize

from threshold_lab import covering
from threshold_lab import fractional
from threshold_lab import rational
from threshold_lab import subsets
from threshold_lab.certificatet import CoverCertificate, LambdaCertificate

JSON_TAG = 'threshold-result'

# The default bracket is reached after exactly DEFAULT_STEPS halvings of [0, 1]
DEFAULT_STEPS = 40
DEFAULT_TOL = Fraction(1, 2**DEFAULT_STEPS)

# Extra bisection steps on the certificate polynomial for the decimal estimate
ESTIMATE_STEPS = 40

VALID_THRESHOLD = voluptuous.Schema({
    'kind': voluptuous.Any('q', 'qf'),
    'r': voluptuous.Any(voluptuous.All(int, voluptuous.Range(min=1)), None),
    'budget': str,
    'tol': str,
    'lower': str,
    'upper': str,
    'estimate': str,
    'iterations': int,
    'certificate': dict
}, required=True)

################################################################

class Threshold:
    """A bracketed threshold with the certificate at its lower endpoint."""

    def __init__(self, kind, lower, upper, certificate, *,
                 r=None, budget=rational.HALF, tol=DEFAULT_TOL, iterations=0):
        self.kind = kind
        self.lower = Fraction(lower)
        self.upper = Fraction(upper)
        self.certificate = certificate
        self.r = r
        self.budget = Fraction(budget)
        self.tol = Fraction(tol)
        self.iterations = iterations
        self.estimate = estimate(self)

    def __repr__(self):
        return (f'Threshold({self.kind}, lower={self.lower}, upper={self.upper}, '
                f'estimate~{float(self.estimate):.12g})')

    def __str__(self):
        """The human readable report printed by the command line."""

        name = 'q' if self.kind == 'q' else 'qf'
        lines = [
            f'{name}={rational.approx(self.estimate)}',
            f'lower={rational.exact(self.lower)}',
            f'upper={rational.exact(self.upper)}',
        ]
        if self.kind == 'qf':
            lines.append(f"r={'unbounded' if self.r is None else self.r}")
        return '\n'.join(lines)

    def to_dict(self):
        """A dict representation of the threshold."""

        data = {
            'kind': self.kind,
            'r': self.r,
            'budget': rational.exact(self.budget),
            'tol': rational.exact(self.tol),
            'lower': rational.exact(self.lower),
            'upper': rational.exact(self.upper),
            'estimate': rational.approx(self.estimate),
            'iterations': self.iterations,
            'certificate': self.certificate.to_dict()
        }
        voluptuous.humanize.validate_with_humanized_errors(data, VALID_THRESHOLD)
        return data

    def to_json(self):
        """A json representation of the threshold."""

        return json.dumps({JSON_TAG: self.to_dict()}, indent=2, sort_keys=True)

def certificate_weight(certificate, p):
    """The weight of the certificate's cover or lambda at p."""

    if isinstance(certificate, CoverCertificate):
        return certificate.cover.weight(p)
    return certificate.lam.weight(p)

def estimate(threshold):
    """Refine the bracket with the certificate's own weight polynomial.

    The certificate weight w(p) is at least the optimal weight at every
    p, equals it at the lower endpoint, and so crosses the budget
    inside [lower, q] where q is the true threshold.  Bisecting w
    locates that crossing far below the bracket width.
    """

    lower, upper = threshold.lower, threshold.upper
    if lower == upper:
        return lower
    if certificate_weight(threshold.certificate, upper) <= threshold.budget:
        return upper
    for _ in range(ESTIMATE_STEPS):
        middle = (lower + upper) / 2
        if certificate_weight(threshold.certificate, middle) <= threshold.budget:
            lower = middle
        else:
            upper = middle
    return (lower + upper) / 2

################################################################

def bisect(decide, tol):
    """Bisect [0, 1] for the largest p with decide(p) <= budget.

    decide(p) returns (fits, witness).  Returns (lower, upper, witness
    at lower, iterations).
    """

    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, found {tol}")

    fits, witness = decide(Fraction(1))
    if fits:
        return Fraction(1), Fraction(1), witness, 0

    lower, upper = Fraction(0), Fraction(1)
    _, witness = decide(lower)
    iterations = 0
    while upper - lower > tol:
        middle = (lower + upper) / 2
        fits, found = decide(middle)
        if fits:
            lower, witness = middle, found
        else:
            upper = middle
        iterations += 1
        logging.debug("bisection step %s: [%s, %s]", iterations, lower, upper)
    logging.info("bisection: %s steps, bracket width %s", iterations, float(upper - lower))
    return lower, upper, witness, iterations

def q_threshold(family, tol=DEFAULT_TOL, budget=rational.HALF):
    """The expectation threshold q(F), bracketed within tol."""

    budget = Fraction(budget)
    if family.is_full():
        cert = CoverCertificate(0, [subsets.EMPTY])
        return Threshold('q', 0, 0, cert, budget=budget, tol=tol)
    if family.is_empty():
        cert = CoverCertificate(1, [])
        return Threshold('q', 1, 1, cert, budget=budget, tol=tol)

    def decide(p):
        weight, cover = covering.min_cover_weight(family, p)
        return weight <= budget, CoverCertificate(p, cover, weight)

    lower, upper, cert, iterations = bisect(decide, tol)
    return Threshold('q', lower, upper, cert, budget=budget, tol=tol, iterations=iterations)

def qf_threshold(family, tol=DEFAULT_TOL, r=fractional.UNBOUNDED, budget=rational.HALF):
    """The fractional expectation threshold q_f(F) with supports of size at most r."""

    budget = Fraction(budget)
    r = fractional.check_restriction(r)
    if family.is_full():
        cert = LambdaCertificate(0, r, {subsets.EMPTY: 1})
        return Threshold('qf', 0, 0, cert, r=r, budget=budget, tol=tol)
    if family.is_empty():
        cert = LambdaCertificate(1, r, {})
        return Threshold('qf', 1, 1, cert, r=r, budget=budget, tol=tol)

    def decide(p):
        value, lam = fractional.lp_min_weight(family, p, r)
        return value <= budget, LambdaCertificate(p, r, lam, value)

    lower, upper, cert, iterations = bisect(decide, tol)
    return Threshold('qf', lower, upper, cert, r=r, budget=budget, tol=tol,
                     iterations=iterations)

################################################################

RATIO_COLUMNS = ('family', 'n', 'q', 'qf_unbounded', 'qf_r', 'ratio_qf_over_q')

def ratio(numerator, denominator):
    """numerator / denominator with 0/0 = 1 and x/0 = None for x > 0."""

    if denominator == 0:
        return Fraction(1) if numerator == 0 else None
    return Fraction(numerator) / denominator

def ratio_row(name, family, tol=DEFAULT_TOL, r=fractional.UNBOUNDED, budget=rational.HALF):
    """One row of the ratio table: q, q_f unbounded, q_f with restriction r, and q_f / q.

    The thresholds are reported by their estimates.  Without a
    restriction the q_f(r) column repeats the unbounded value.
    """

    q = q_threshold(family, tol, budget)
    qf_unbounded = qf_threshold(family, tol, fractional.UNBOUNDED, budget)
    qf_r = qf_unbounded if r is None else qf_threshold(family, tol, r, budget)
    value = ratio(qf_unbounded.estimate, q.estimate)
    logging.info("ratio table: %s q=%s qf=%s", name, float(q.estimate),
                 float(qf_unbounded.estimate))
    return {
        'family': name,
        'n': family.n,
        'q': q.estimate,
        'qf_unbounded': qf_unbounded.estimate,
        'qf_r': qf_r.estimate,
        'ratio_qf_over_q': value
    }
