# SPDX-License-Identifier: Apache-2.0

"""Generators for the test families.

The families cover the three regimes of interest: singletons (minimal
elements of size 1), graphs (size 2, as in k_uniform(n, 2)), and
general uniform families (triangles of a complete graph have size 3).
"""

import itertools
import logging

from threshold_lab.familyt import MinimalFamily

################################################################

def single(n, elements):
    """The family of all supersets of one set."""

    return MinimalFamily(n, [list(elements)])

def k_uniform(n, k):
    """The family generated by all k-subsets of 1..n."""

    if k < 0 or k > n:
        raise ValueError(f"k_uniform needs 0 <= k <= n, got n={n}, k={k}")
    return MinimalFamily(n, itertools.combinations(range(1, n + 1), k))

def singletons(n):
    """The family of all nonempty subsets of 1..n."""

    return k_uniform(n, 1)

def edge_labels(vertices):
    """Label the edges of the complete graph on 1..vertices with 1..C(vertices, 2)."""

    pairs = itertools.combinations(range(1, vertices + 1), 2)
    return {pair: label for label, pair in enumerate(pairs, start=1)}

def triangles(vertices):
    """The family of graphs on the complete graph's edges containing a triangle."""

    if vertices < 3:
        raise ValueError(f"triangles needs at least 3 vertices, got {vertices}")
    labels = edge_labels(vertices)
    sets = [[labels[(a, b)], labels[(a, c)], labels[(b, c)]]
            for a, b, c in itertools.combinations(range(1, vertices + 1), 3)]
    logging.debug("Generated %s triangles on %s vertices", len(sets), vertices)
    return MinimalFamily(len(labels), sets)

################################################################

GENERATORS = {
    'single': {'func': single, 'params': ['n', 'elements']},
    'k_uniform': {'func': k_uniform, 'params': ['n', 'k']},
    'singletons': {'func': singletons, 'params': ['n']},
    'triangles': {'func': triangles, 'params': ['v']},
}

def gen_family(kind, **params):
    """Build a generator family by name."""

    try:
        generator = GENERATORS[kind]
    except KeyError:
        raise ValueError(
            f"Unknown generator '{kind}', expected one of {sorted(GENERATORS)}"
        ) from None

    missing = [name for name in generator['params'] if params.get(name) is None]
    if missing:
        raise ValueError(f"Generator '{kind}' needs parameters {missing}")

    args = [params[name] for name in generator['params']]
    return generator['func'](*args)

def battery():
    """The named generator families used by the ratio table and the audits."""

    return {
        'single3': single(3, [1, 2, 3]),
        'singletons4': singletons(4),
        'pairs3': k_uniform(3, 2),
        'pairs4': k_uniform(4, 2),
        'triangles4': triangles(4),
    }
