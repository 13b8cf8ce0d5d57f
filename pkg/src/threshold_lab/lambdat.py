# SPDX-License-Identifier: Apache-2.0

"""Fractional covers: nonnegative rational weights on subsets.

A Lambda stores only its nonzero entries.  The lambda file format
(".lam") is

    n=<int>
    <num>/<den> : <elements>
    ...

where an empty element list denotes the empty set.
"""

from fractions import Fraction

from threshold_lab import familyt
from threshold_lab import parse
from threshold_lab import subsets
from threshold_lab import util
from threshold_lab.errors import ParseError

################################################################

class Lambda:
    """A sparse map from subsets to positive rational weights."""

    def __init__(self, entries=None, n=None):
        """Build from a map whose keys are bitmasks or element iterables.

        Zero weights are dropped; negative weights are rejected.
        """

        self.n = n
        self.entries = {}
        for item, weight in (entries or {}).items():
            bits = familyt.as_mask(item)
            weight = Fraction(weight)
            if weight < 0:
                raise ValueError(f"Negative weight {weight} at {subsets.elements(bits)}")
            if n is not None and not subsets.is_subset(bits, subsets.full(n)):
                raise ValueError(f"Set {subsets.elements(bits)} is not a subset of 1..{n}")
            if weight:
                self.entries[bits] = self.entries.get(bits, Fraction(0)) + weight

    def __eq__(self, other):
        return isinstance(other, Lambda) and self.entries == other.entries

    def __repr__(self):
        items = ', '.join(f'{subsets.elements(bits)}: {weight}'
                          for bits, weight in self.items())
        return f'Lambda({{{items}}})'

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, item):
        return self.entries.get(familyt.as_mask(item), Fraction(0))

    def items(self):
        """The entries in canonical order of their sets."""

        return [(bits, self.entries[bits]) for bits in subsets.canonical(self.entries)]

    def support(self):
        """The sets with nonzero weight in canonical order."""

        return subsets.canonical(self.entries)

    def max_support_size(self):
        """The size of the largest set in the support."""

        return max((subsets.size(bits) for bits in self.entries), default=0)

    def empty_weight(self):
        """The weight on the empty set."""

        return self.entries.get(subsets.EMPTY, Fraction(0))

    def weight(self, p):
        """The weight sum of lambda_S p^|S|, exactly."""

        return sum((weight * Fraction(p) ** subsets.size(bits)
                    for bits, weight in self.entries.items()), Fraction(0))

    def mass(self, bits):
        """The total weight of the sets inside a set."""

        return sum((weight for support, weight in self.entries.items()
                    if subsets.is_subset(support, bits)), Fraction(0))

    def feasible(self, family):
        """Does every minimal element receive mass at least 1?"""

        return all(self.mass(minimal) >= 1 for minimal in family.minimal)

    def dump(self, filename=None, directory=None):
        """Write the lambda in .lam format to a file or stdout."""

        util.dump(serialize(self, self.n).rstrip('\n'), filename, directory)

################################################################
# Lambda files

def parse_weight(text, source, number):
    """Parse a nonnegative rational weight."""

    try:
        weight = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{source}:{number}: Weight is not a rational number: '{text}'") from None
    if weight < 0:
        raise ParseError(f"{source}:{number}: Weight is negative: '{text}'")
    return weight

def parse_lambda(text, source='<string>'):
    """Parse the text of a lambda file."""

    lines = familyt.content_lines(text)
    try:
        number, line = next(lines)
    except StopIteration:
        raise ParseError(f"{source}: Missing 'n=<int>' header") from None
    n = familyt.parse_header(line, source, number)

    entries = {}
    for number, line in lines:
        weight, sep, elements = line.partition(':')
        if not sep:
            raise ParseError(f"{source}:{number}: Expected '<weight> : <elements>', found '{line}'")
        weight = parse_weight(weight, source, number)
        bits = (subsets.EMPTY if not elements.strip() else
                familyt.parse_subset(elements, n, source, number))
        if bits in entries:
            raise ParseError(
                f"{source}:{number}: Duplicate entry for set {subsets.elements(bits)}"
            )
        entries[bits] = weight
    return Lambda(entries, n)

def serialize(lam, n=None):
    """The text of a lambda file for the lambda."""

    n = lam.n if n is None else n
    if n is None:
        n = max((bits.bit_length() for bits in lam.entries), default=0)
    lines = [f'n={n}']
    for bits, weight in lam.items():
        elements = ' '.join(str(element) for element in subsets.elements(bits))
        lines.append(f'{weight.numerator}/{weight.denominator} : {elements}'.rstrip())
    return '\n'.join(lines) + '\n'

def load_lambda(path):
    """Load a lambda file."""

    return parse_lambda(parse.parse_text_file(path), str(path))
