# SPDX-License-Identifier: Apache-2.0

"""Increasing families of subsets of a finite ground set.

An increasing family F over the ground set V = {1..n} is represented
by its antichain of minimal elements: every increasing family over a
finite ground set is the family generated by its minimal elements, so
the representation is lossless.

The family file format (".fam") is

    n=<int>
    <strictly increasing elements in 1..n, space separated>
    ...

with one set per line, "#" starting a comment, blank lines ignored,
and the token {} denoting the empty set.
"""

from fractions import Fraction
import json
import logging

import voluptuous
import voluptuous.humanize

from threshold_lab import parse
from threshold_lab import subsets
from threshold_lab import util
from threshold_lab.errors import CapExceeded, ParseError

JSON_TAG = 'threshold-family'

MAX_GROUND = 24

################################################################
# Family validator

VALID_SUBSET = [voluptuous.All(int, voluptuous.Range(min=1))]

VALID_FAMILY = voluptuous.Schema({
    'n': voluptuous.All(int, voluptuous.Range(min=0, max=MAX_GROUND)),
    'minimal': [VALID_SUBSET]
}, required=True)

################################################################

class GroundSet:
    """The ground set {1..n}."""

    def __init__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"Ground set size is not a nonnegative integer: {n}")
        if n > MAX_GROUND:
            raise CapExceeded(
                f"Ground set size {n} exceeds the cap {MAX_GROUND}"
            )
        self.n = n

    def __eq__(self, other):
        return isinstance(other, GroundSet) and self.n == other.n

    def __hash__(self):
        return hash(self.n)

    def __repr__(self):
        return f'GroundSet({self.n})'

    def full(self):
        """The bitmask of the whole ground set."""

        return subsets.full(self.n)

    def check(self, bits):
        """Raise ValueError if a subset is not inside the ground set."""

        if not subsets.is_subset(bits, self.full()):
            raise ValueError(
                f"Set {subsets.elements(bits)} is not a subset of 1..{self.n}"
            )
        return bits

################################################################

def antichain(masks):
    """Reduce a collection of subsets to its minimal elements."""

    kept = []
    for bits in sorted(set(masks), key=lambda bits: (subsets.size(bits), subsets.key(bits))):
        if any(subsets.is_subset(other, bits) for other in kept):
            continue
        kept.append(bits)
    return subsets.canonical(kept)

class MinimalFamily:
    """An increasing family given by its minimal elements."""

    def __init__(self, n, sets=()):
        """Build the family generated by sets over the ground set 1..n.

        The sets may be bitmasks or iterables of 1-based elements.  Any
        set containing another listed set is dropped.
        """

        self.ground = n if isinstance(n, GroundSet) else GroundSet(n)
        masks = [self.ground.check(as_mask(item)) for item in sets]
        self.minimal = antichain(masks)

    @property
    def n(self):
        """The size of the ground set."""

        return self.ground.n

    def __eq__(self, other):
        return (isinstance(other, MinimalFamily) and
                self.ground == other.ground and self.minimal == other.minimal)

    def __hash__(self):
        return hash((self.ground, self.minimal))

    def __len__(self):
        return len(self.minimal)

    def __iter__(self):
        return iter(self.minimal)

    def __repr__(self):
        return f'MinimalFamily({self.n}, {[list(subsets.elements(bits)) for bits in self.minimal]})'

    def to_dict(self):
        """A dict representation of the family."""

        data = {
            'n': self.n,
            'minimal': [list(subsets.elements(bits)) for bits in self.minimal]
        }
        self.validate(data)
        return data

    def __str__(self):
        """A string representation of the family."""

        return json.dumps({JSON_TAG: self.to_dict()}, indent=2, sort_keys=True)

    @staticmethod
    def validate(data):
        """Validate a dict representation of a family."""

        return voluptuous.humanize.validate_with_humanized_errors(data, VALID_FAMILY)

    def dump(self, filename=None, directory=None):
        """Write the family in .fam format to a file or stdout."""

        util.dump(serialize(self).rstrip("\n"), filename, directory)

    def is_empty(self):
        """The family with no members."""

        return not self.minimal

    def is_full(self):
        """The family of all subsets: the empty set is minimal."""

        return self.minimal == (subsets.EMPTY,)

    def max_size(self):
        """The size of the largest minimal element."""

        return max((subsets.size(bits) for bits in self.minimal), default=0)

    def add(self, item):
        """The family with one more generating set."""

        return MinimalFamily(self.ground, self.minimal + (as_mask(item),))

    def embed(self, n):
        """The same family over the larger ground set 1..n."""

        if n < self.n:
            raise ValueError(f"Can't embed a family on {self.n} points into {n} points")
        return MinimalFamily(n, self.minimal)

def as_mask(item):
    """Accept a bitmask or an iterable of elements."""

    if isinstance(item, int):
        if item < 0:
            raise ValueError(f"Negative bitmask: {item}")
        return item
    return subsets.mask(item)

################################################################
# Membership

def contains(family, bits):
    """Is the subset a member of the family?"""

    return any(subsets.is_subset(minimal, bits) for minimal in family.minimal)

def enumerate_members(family):
    """All members of the family in canonical order."""

    full = family.ground.full()
    members = set()
    for minimal in family.minimal:
        for extra in subsets.submasks(full & ~minimal):
            members.add(minimal | extra)
    logging.debug("Family on %s points has %s members", family.n, len(members))
    return subsets.canonical(members)

def is_increasing(n, members):
    """Is an explicit list of subsets closed under taking supersets?"""

    members = set(as_mask(item) for item in members)
    full = subsets.full(n)
    for bits in members:
        for element in range(n):
            if not bits >> element & 1 and bits | (1 << element) not in members:
                return False
    return all(subsets.is_subset(bits, full) for bits in members)

def from_members(n, members):
    """The minimal family of an explicit increasing family."""

    masks = [as_mask(item) for item in members]
    if not is_increasing(n, masks):
        raise ValueError("Member list is not an increasing family")
    return MinimalFamily(n, masks)

################################################################

class Cover:
    """A finite collection of sets whose generated family covers a family."""

    def __init__(self, sets=()):
        self.sets = subsets.canonical(as_mask(item) for item in sets)

    def __eq__(self, other):
        return isinstance(other, Cover) and self.sets == other.sets

    def __hash__(self):
        return hash(self.sets)

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __repr__(self):
        return f'Cover({[list(subsets.elements(bits)) for bits in self.sets]})'

    def weight(self, p):
        """The weight sum of p^|S| over the cover, exactly."""

        return sum((p ** subsets.size(bits) for bits in self.sets), Fraction(0))

    def covers(self, family):
        """Does every minimal element of the family contain a set of the cover?"""

        return all(any(subsets.is_subset(bits, minimal) for bits in self.sets)
                   for minimal in family.minimal)

################################################################
# Family files

def parse_header(line, source, number):
    """Parse the n=<int> header of a family or lambda file."""

    name, sep, value = line.partition('=')
    if not sep or name.strip() != 'n':
        raise ParseError(f"{source}:{number}: Expected 'n=<int>', found '{line}'")
    try:
        n = int(value.strip())
    except ValueError:
        raise ParseError(f"{source}:{number}: Ground set size is not an integer: '{line}'") from None
    if n < 0:
        raise ParseError(f"{source}:{number}: Ground set size {n} is negative")
    if n > MAX_GROUND:
        raise CapExceeded(
            f"{source}:{number}: Ground set size {n} exceeds the cap {MAX_GROUND}"
        )
    return n

def parse_subset(text, n, source, number):
    """Parse a strictly increasing list of elements in 1..n."""

    words = text.split()
    if words == [subsets.EMPTY_TOKEN]:
        return subsets.EMPTY
    try:
        items = [int(word) for word in words]
    except ValueError:
        raise ParseError(f"{source}:{number}: Set is not a list of integers: '{text}'") from None
    for item in items:
        if item < 1 or item > n:
            raise ParseError(f"{source}:{number}: Element {item} is outside 1..{n}")
    if any(first >= second for first, second in zip(items, items[1:])):
        raise ParseError(f"{source}:{number}: Elements are not strictly increasing: '{text}'")
    return subsets.mask(items)

def content_lines(text):
    """The numbered nonblank lines of a file with comments removed."""

    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if line:
            yield number, line

def parse_family(text, source='<string>'):
    """Parse the text of a family file."""

    lines = content_lines(text)
    try:
        number, line = next(lines)
    except StopIteration:
        raise ParseError(f"{source}: Missing 'n=<int>' header") from None
    n = parse_header(line, source, number)
    masks = [parse_subset(line, n, source, number) for number, line in lines]
    return MinimalFamily(n, masks)

def serialize(family):
    """The text of a family file for the family."""

    lines = [f'n={family.n}']
    lines.extend(subsets.render(bits) for bits in family.minimal)
    return '\n'.join(lines) + '\n'

def load_family(path):
    """Load a family file."""

    return parse_family(parse.parse_text_file(path), str(path))
