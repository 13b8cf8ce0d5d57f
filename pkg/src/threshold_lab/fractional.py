# SPDX-License-Identifier: Apache-2.0

"""The fractional cover linear program: the decision procedure for weak smallness.

For a family F, a probability p and a restriction r, the program is

    minimize    sum_S lambda_S p^|S|
    subject to  sum_{S subset of I} lambda_S >= 1   for every minimal I
                lambda >= 0, lambda supported on sets of size at most r

Constraints at members of F that are not minimal are implied: the
left side only grows when I grows.  The support is restricted to the
empty set and the nonempty subsets of minimal elements of size at most
r, since a set inside no minimal element appears in no constraint.

The program is solved through its dual packing program

    maximize    sum_I y_I
    subject to  sum_{minimal I containing S} y_I <= p^|S|   for every support set S
                y >= 0

whose slack basis is feasible.  The optimal lambda is the dual solution
of the packing program, so one solve yields an optimal lambda and an
optimal y with equal values.
"""

from fractions import Fraction
import logging

from threshold_lab import covering
from threshold_lab import familyt
from threshold_lab import simplex
from threshold_lab import subsets
from threshold_lab.errors import ContractError
from threshold_lab.lambdat import Lambda

UNBOUNDED = None

################################################################

def check_restriction(r):
    """Accept a positive integer or None for unbounded."""

    if r is UNBOUNDED:
        return r
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise ValueError(f"Restriction r must be a positive integer or unbounded, found {r}")
    return r

def support_sets(family, r=UNBOUNDED, allow_empty=True):
    """The candidate support sets in canonical order."""

    r = check_restriction(r)
    sets = set()
    for minimal in family.minimal:
        for bits in subsets.submasks(minimal, nonempty=True):
            if r is UNBOUNDED or subsets.size(bits) <= r:
                sets.add(bits)
    if allow_empty:
        sets.add(subsets.EMPTY)
    return subsets.canonical(sets)

################################################################

class FractionalSolution:
    """An optimal lambda together with an optimal dual y."""

    def __init__(self, value, lam, dual):
        self.value = value
        self.lam = lam
        self.dual = dual

    def __repr__(self):
        return f'FractionalSolution(value={self.value}, lam={self.lam!r})'

def solve(family, p, r=UNBOUNDED, allow_empty=True):
    """Solve the fractional cover program exactly."""

    p = covering.check_probability(p)
    r = check_restriction(r)
    if family.is_empty():
        return FractionalSolution(Fraction(0), Lambda(n=family.n), {})

    supports = support_sets(family, r, allow_empty)
    minimal = family.minimal
    for bits in minimal:
        if not any(subsets.is_subset(support, bits) for support in supports):
            raise ContractError(
                f"No support set fits inside minimal element {subsets.elements(bits)}: "
                "the program is infeasible"
            )

    matrix = [[1 if subsets.is_subset(support, bits) else 0 for bits in minimal]
              for support in supports]
    bounds = [p ** subsets.size(support) for support in supports]
    solution = simplex.maximize([1] * len(minimal), matrix, bounds)
    if solution.status != simplex.OPTIMAL:
        raise RuntimeError(f"Packing program is {solution.status}: this should never happen")

    lam = Lambda(dict(zip(supports, solution.dual)), family.n)
    dual = {bits: value for bits, value in zip(minimal, solution.primal) if value}
    logging.debug("fractional program at p=%s r=%s: value %s, %s supports, %s pivots",
                  p, r, solution.value, len(supports), solution.pivots)
    return FractionalSolution(solution.value, lam, dual)

def lp_min_weight(family, p, r=UNBOUNDED, allow_empty=True):
    """The optimal value of the fractional cover program and one optimal lambda."""

    solution = solve(family, p, r, allow_empty)
    return solution.value, solution.lam

################################################################

def check_dual_certificate(family, p, r, y):
    """Check a dual solution y (minimal element -> rational) of the fractional program.

    Return the dual value sum_I y_I and whether y is feasible.  A
    feasible y bounds the optimal value from below (weak duality).
    """

    p = Fraction(p)
    y = {familyt.as_mask(item): Fraction(value) for item, value in y.items()}
    value = sum(y.values(), Fraction(0))

    if any(bits not in family.minimal for bits in y):
        logging.debug("Dual certificate names a set that is not a minimal element")
        return value, False
    if any(weight < 0 for weight in y.values()):
        logging.debug("Dual certificate has a negative entry")
        return value, False

    for support in support_sets(family, r):
        load = sum((weight for bits, weight in y.items() if subsets.is_subset(support, bits)),
                   Fraction(0))
        if load > p ** subsets.size(support):
            logging.debug("Dual certificate violates support set %s: %s > %s",
                          subsets.elements(support), load, p ** subsets.size(support))
            return value, False
    return value, True
