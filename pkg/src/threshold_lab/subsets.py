# SPDX-License-Identifier: Apache-2.0

"""Subsets of a ground set represented as integer bitmasks.

Ground elements are labeled 1..n and element i is stored as bit i-1,
so the empty set is 0 and the full ground set is 2^n - 1.  Every
collection of subsets in threshold-lab is sorted with the canonical
key below: lexicographic order on the sorted element lists.
"""

EMPTY = 0
EMPTY_TOKEN = '{}'

################################################################

def mask(elements):
    """The bitmask of an iterable of 1-based elements."""

    bits = 0
    for element in elements:
        if element < 1:
            raise ValueError(f"Element is not a positive integer: {element}")
        bits |= 1 << (element - 1)
    return bits

def elements(bits):
    """The sorted tuple of 1-based elements in a bitmask."""

    result = []
    element = 1
    while bits:
        if bits & 1:
            result.append(element)
        bits >>= 1
        element += 1
    return tuple(result)

def size(bits):
    """The number of elements in a bitmask."""

    return bin(bits).count('1')

def full(n):
    """The bitmask of the ground set 1..n."""

    return (1 << n) - 1

def key(bits):
    """The canonical sort key: the sorted element list."""

    return elements(bits)

def canonical(masks):
    """Deduplicate and sort bitmasks in canonical order."""

    return tuple(sorted(set(masks), key=key))

def is_subset(small, large):
    """Is small a subset of large?"""

    return small & ~large == 0

################################################################

def submasks(bits, nonempty=False):
    """All subsets of a bitmask, the bitmask itself first and the empty set last."""

    sub = bits
    while True:
        if sub or not nonempty:
            yield sub
        if sub == 0:
            return
        sub = (sub - 1) & bits

def all_masks(n):
    """All 2^n subsets of the ground set 1..n in increasing integer order."""

    return range(1 << n)

def combinations(n, m):
    """All m-element subsets of 1..n as bitmasks, smallest integer first (Gosper's hack)."""

    if m < 0 or m > n:
        return
    if m == 0:
        yield 0
        return
    bits = (1 << m) - 1
    limit = 1 << n
    while bits < limit:
        yield bits
        low = bits & -bits
        ripple = bits + low
        bits = (((ripple ^ bits) >> 2) // low) | ripple

################################################################

def render(bits):
    """Render a subset as space-separated elements, the empty set as {}."""

    if bits == EMPTY:
        return EMPTY_TOKEN
    return ' '.join(str(element) for element in elements(bits))
