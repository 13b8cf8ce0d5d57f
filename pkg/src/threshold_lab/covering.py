# SPDX-License-Identifier: Apache-2.0

"""Minimum weight covers: the decision procedure for p-smallness.

A family F is p-small when some collection G of sets generates an
increasing family containing F and has weight sum_{S in G} p^|S| at
most 1/2.  The minimum weight over all such G is computed exactly
here by branch and bound.

Only nonempty subsets of minimal elements need to be considered as
members of G.  A set S covers a minimal element I only if S is a
subset of I, so a set contained in no minimal element covers nothing
and can be dropped without increasing the weight.  The empty set is
left out unless it is itself minimal: a cover containing it weighs at
least 1, so it never decides p-smallness at any budget below 1.
"""

from fractions import Fraction
import logging

from threshold_lab import subsets
from threshold_lab.familyt import Cover

################################################################

def check_probability(p):
    """Coerce p to a rational in [0, 1]."""

    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"Expected p in [0, 1], found {p}")
    return p

def solution_key(weight, sets):
    """Order optimal covers: lower weight, then fewer sets, then canonical order."""

    return (weight, len(sets), tuple(subsets.key(bits) for bits in subsets.canonical(sets)))

class BranchAndBound:
    """Branch on the subset of the first uncovered minimal element that joins the cover."""

    def __init__(self, family, p):
        self.p = p
        self.minimal = family.minimal
        self.powers = [p ** k for k in range(family.n + 1)]

        # Candidate subsets of each minimal element, cheapest first
        self.candidates = []
        for minimal in self.minimal:
            subs = list(subsets.submasks(minimal, nonempty=True))
            subs.sort(key=lambda bits: (self.powers[subsets.size(bits)], subsets.key(bits)))
            self.candidates.append(subs)

        # The minimal elements (as a bitmask of indices) covered by each candidate
        self.covered = {}
        for subs in self.candidates:
            for bits in subs:
                if bits not in self.covered:
                    self.covered[bits] = sum(
                        1 << index for index, minimal in enumerate(self.minimal)
                        if subsets.is_subset(bits, minimal)
                    )

        # The minimal elements themselves are a feasible cover
        self.best_sets = list(self.minimal)
        self.best_key = solution_key(self.weight(self.best_sets), self.best_sets)
        self.nodes = 0

    def weight(self, sets):
        """The weight of a list of sets."""

        return sum((self.powers[subsets.size(bits)] for bits in sets), Fraction(0))

    def prune(self, weight, chosen, first):
        """Can no completion of the partial cover beat the incumbent?"""

        best_weight, best_count, _ = self.best_key
        bound = weight + self.powers[subsets.size(self.minimal[first])]
        if bound > best_weight:
            return True
        if self.p > 0 and weight >= best_weight:
            return True
        return weight == best_weight and len(chosen) + 1 > best_count

    def search(self, uncovered, chosen, weight):
        """Depth first search below a partial cover."""

        self.nodes += 1
        if not uncovered:
            key = solution_key(weight, chosen)
            if key < self.best_key:
                logging.debug("branch and bound: new incumbent weight %s with %s sets",
                              weight, len(chosen))
                self.best_key = key
                self.best_sets = list(chosen)
            return

        first = (uncovered & -uncovered).bit_length() - 1
        if self.prune(weight, chosen, first):
            return

        for bits in self.candidates[first]:
            chosen.append(bits)
            self.search(uncovered & ~self.covered[bits], chosen,
                        weight + self.powers[subsets.size(bits)])
            chosen.pop()

    def solve(self):
        """Run the search and return the optimal weight and cover."""

        self.search((1 << len(self.minimal)) - 1, [], Fraction(0))
        logging.debug("branch and bound: %s nodes, weight %s", self.nodes, self.best_key[0])
        return self.best_key[0], Cover(self.best_sets)

def min_cover_weight(family, p):
    """The minimum weight of a cover of the family at p, and one optimal cover.

    The empty family has weight 0 with the empty cover.  A family whose
    minimal element is the empty set has weight 1 with the cover {{}}
    and is never p-small.
    """

    p = check_probability(p)
    if family.is_empty():
        return Fraction(0), Cover()
    if family.is_full():
        logging.debug("Family contains the empty set: never p-small")
        return Fraction(1), Cover([subsets.EMPTY])
    return BranchAndBound(family, p).solve()
