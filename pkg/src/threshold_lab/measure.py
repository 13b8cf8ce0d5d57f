# SPDX-License-Identifier: Apache-2.0

"""The weights mu_I built from a fractional cover, and c-badness.

Given a fractional cover lambda with lambda of the empty set equal to
zero, each member I of the family gets the normalizer

    nu_I = sum_{S subset of I} |S| lambda_S  (at least 1 by feasibility)

and the probability weights

    mu_I(v) = nu_I^-1 sum_{v in S subset of I} lambda_S,  v in I,

which sum to 1 over I.  A set X is c-bad when sup_I mu_I(X & I) < c,
the supremum running over all members of the family.  mu_I is not
monotone in I, so the supremum is taken over every member, not only
the minimal elements.
"""

from fractions import Fraction
import logging
import math

from threshold_lab import covering
from threshold_lab import familyt
from threshold_lab import fractional
from threshold_lab import subsets
from threshold_lab.errors import ContractError, DegenerateInput
from threshold_lab.lambdat import Lambda

################################################################

def normalize_lambda(lam):
    """Move the weight of the empty set out of lambda.

    Returns lambda' with lambda'_{} = 0 and lambda'_S = lambda_S / (1 - lambda_{})
    for nonempty S.
    """

    empty = lam.empty_weight()
    if empty >= 1:
        raise DegenerateInput(
            f"Can't normalize lambda with weight {empty} >= 1 on the empty set"
        )
    if not empty:
        return lam
    scale = 1 - empty
    return Lambda({bits: value / scale for bits, value in lam.entries.items()
                   if bits != subsets.EMPTY}, lam.n)

################################################################

class MuWeights:
    """The normalizer nu_I and the weights mu_I on the elements of I."""

    def __init__(self, member, nu, weights):
        self.member = member
        self.nu = nu
        self.weights = weights
        if sum(weights.values(), Fraction(0)) != 1:
            raise ContractError(
                f"mu weights of {subsets.elements(member)} do not sum to 1"
            )

    def __repr__(self):
        return f'MuWeights(I={subsets.elements(self.member)}, nu={self.nu}, weights={self.weights})'

    def measure(self, bits):
        """mu_I of a set, counting only elements of I."""

        return sum((weight for element, weight in self.weights.items()
                    if bits >> (element - 1) & 1), Fraction(0))

def check_lambda(lam):
    """The selector machinery needs lambda of the empty set to be zero."""

    if lam.empty_weight():
        raise ContractError(
            f"lambda of the empty set is {lam.empty_weight()}, expected 0 (normalize first)"
        )

def mu_weights(member, lam):
    """The normalizer nu_I and weights mu_I for a member I."""

    member = familyt.as_mask(member)
    check_lambda(lam)
    mass = lam.mass(member)
    if mass < 1:
        raise ContractError(
            f"lambda is infeasible at {subsets.elements(member)}: "
            f"sum of lambda_S over S inside I is {mass} < 1"
        )

    inside = [(bits, value) for bits, value in lam.entries.items()
              if subsets.is_subset(bits, member)]
    nu = sum((subsets.size(bits) * value for bits, value in inside), Fraction(0))
    if nu < 1:
        raise ContractError(f"nu_I = {nu} < 1 at {subsets.elements(member)}")

    weights = {}
    for element in subsets.elements(member):
        bit = 1 << (element - 1)
        weights[element] = sum((value for bits, value in inside if bits & bit),
                               Fraction(0)) / nu
    return MuWeights(member, nu, weights)

################################################################

class BadnessOracle:
    """Evaluate sup_I mu_I(X & I) over all members I quickly.

    All weights mu_I(v) are scaled to integers over one common
    denominator, so each evaluation is integer arithmetic.
    """

    def __init__(self, family, lam):
        check_lambda(lam)
        self.family = family
        self.empty = family.is_empty()
        profiles = [mu_weights(member, lam) for member in familyt.enumerate_members(family)]
        self.denominator = 1
        for profile in profiles:
            for weight in profile.weights.values():
                self.denominator = self.denominator * weight.denominator // math.gcd(
                    self.denominator, weight.denominator)
        self.profiles = []
        for profile in profiles:
            scaled = [(1 << (element - 1), int(weight * self.denominator))
                      for element, weight in profile.weights.items() if weight]
            self.profiles.append((profile.member, scaled))
        logging.debug("badness oracle: %s members, common denominator %s",
                      len(self.profiles), self.denominator)

    def scaled_sup(self, bits):
        """The supremum times the common denominator, an integer."""

        best = 0
        for _, scaled in self.profiles:
            total = 0
            for bit, weight in scaled:
                if bits & bit:
                    total += weight
            if total > best:
                best = total
                if best == self.denominator:
                    break
        return best

    def sup(self, bits):
        """sup over members I of mu_I(X & I), exactly; 0 for the empty family."""

        return Fraction(self.scaled_sup(bits), self.denominator)

    def is_bad(self, bits, c):
        """Is the set c-bad: is the supremum strictly below c?"""

        c = Fraction(c)
        return self.scaled_sup(bits) * c.denominator < c.numerator * self.denominator

def badness(bits, family, lam, c):
    """The supremum sup_I mu_I(X & I) and whether X is c-bad (strictly below c).

    The empty family has no members: the supremum is reported as 0 and
    every X is c-bad for c > 0.
    """

    bits = familyt.as_mask(bits)
    c = Fraction(c)
    if family.is_empty():
        logging.info("badness: empty family, every set is bad")
        return Fraction(0), c > 0
    oracle = BadnessOracle(family, lam)
    sup = oracle.sup(bits)
    return sup, sup < c

################################################################

def claim_slack(bits, member, lam, r, weights=None):
    """Both sides of mu_I(Y & I) <= 1 - 1/r + sum_{S subset of Y & I} lambda_S.

    Sweeps over many sets Y pass the MuWeights of the member, computed once.
    """

    bits = familyt.as_mask(bits)
    member = familyt.as_mask(member)
    if lam.max_support_size() > r:
        raise ContractError(
            f"lambda has a support set of size {lam.max_support_size()} > r={r}"
        )
    if weights is None:
        weights = mu_weights(member, lam)
    lhs = weights.measure(bits)
    rhs = 1 - Fraction(1, r) + lam.mass(bits & member)
    return lhs, rhs

################################################################

class Witness:
    """The normalized fractional cover used by the selector argument for an instance."""

    def __init__(self, p, value, raw, lam):
        self.p = p
        self.value = value
        self.raw = raw
        self.lam = lam

    def __repr__(self):
        return f'Witness(p={self.p}, value={self.value}, lam={self.lam!r})'

def witness_lambda(family, cfg):
    """An optimal r-supported lambda at Jp (or at p when Jp > 1), normalized.

    When the optimum puts all its weight on the empty set the program
    is solved again without the empty set in the support.
    """

    if family.is_full():
        raise DegenerateInput("The family containing the empty set has no normalizable lambda")
    p = cfg.jp() if cfg.jp() <= 1 else cfg.p
    p = covering.check_probability(p)
    value, raw = fractional.lp_min_weight(family, p, cfg.r)
    if raw.empty_weight() >= 1:
        logging.info("Optimal lambda at p=%s sits on the empty set: excluding it", p)
        value, raw = fractional.lp_min_weight(family, p, cfg.r, allow_empty=False)
    return Witness(p, value, raw, normalize_lambda(raw))
