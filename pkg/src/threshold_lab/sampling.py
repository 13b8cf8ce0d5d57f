# SPDX-License-Identifier: Apache-2.0

"""Uniform random m-subsets: exact probabilities and Monte Carlo estimates.

Exact quantities enumerate all C(n, m) subsets and refuse to run above
ENUMERATION_CAP.  Monte Carlo estimates split the trials into a fixed
number of partitions, each driven by its own seeded generator, so the
merged estimate depends on the seed and the partition count but not on
how many workers run the partitions.
"""

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
import logging
import math
import random

from threshold_lab import subsets
from threshold_lab.errors import CapExceeded
from threshold_lab.measure import BadnessOracle

ENUMERATION_CAP = 10**6
EXACT = 'exact'
MONTE_CARLO = 'monte-carlo'
DEFAULT_PARTITIONS = 8

MASK64 = (1 << 64) - 1

################################################################
# Exact probabilities

def subset_prob(s, n, m):
    """Pr(S subset of W) for a fixed s-set S and a uniform m-subset W of an n-set."""

    if not 0 <= s <= n or not 0 <= m <= n:
        raise ValueError(f"Expected 0 <= s, m <= n, found s={s}, m={m}, n={n}")
    prob = Fraction(1)
    for i in range(s):
        prob *= Fraction(m - i, n - i)
    return prob

def expected_mass(lam, n, m):
    """E[sum_{S subset of W} lambda_S] for a uniform m-subset W."""

    return sum((value * subset_prob(subsets.size(bits), n, m) for bits, value in lam.items()),
               Fraction(0))

def scaled_mass(lam, scale):
    """sum_S scale^|S| lambda_S."""

    scale = Fraction(scale)
    return sum((value * scale ** subsets.size(bits) for bits, value in lam.items()),
               Fraction(0))

def check_enumeration(n, m, cap=ENUMERATION_CAP):
    """Refuse to enumerate more than cap subsets."""

    count = math.comb(n, m)
    if count > cap:
        raise CapExceeded(
            f"C({n}, {m}) = {count} subsets exceeds the enumeration cap {cap}: "
            "use a Monte Carlo estimate instead"
        )
    return count

def o1_probability(lam, n, m, r, cap=ENUMERATION_CAP):
    """Pr(sum_{S subset of W} lambda_S <= 1/(2r)) for a uniform m-subset W, exactly."""

    total = check_enumeration(n, m, cap)
    limit = Fraction(1, 2 * r)
    entries = lam.items()
    good = 0
    for bits in subsets.combinations(n, m):
        mass = sum((value for support, value in entries if support & ~bits == 0), Fraction(0))
        if mass <= limit:
            good += 1
    return Fraction(good, total)

################################################################
# Sampling

def mix_seed(seed, index):
    """Derive a partition seed from the run seed with the splitmix64 finalizer.

    The input is seed + index * 0x9E3779B97F4A7C15 modulo 2^64.
    """

    value = (seed + index * 0x9E3779B97F4A7C15) & MASK64
    value = ((value ^ (value >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    value = ((value ^ (value >> 27)) * 0x94D049BB133111EB) & MASK64
    return value ^ (value >> 31)

def sample_m_subset(n, m, rng):
    """A uniform m-subset of 1..n by a partial Fisher-Yates shuffle."""

    if not 0 <= m <= n:
        raise ValueError(f"Expected 0 <= m <= n, found m={m}, n={n}")
    items = list(range(1, n + 1))
    for i in range(m):
        j = rng.randrange(i, n)
        items[i], items[j] = items[j], items[i]
    return subsets.mask(items[:m])

def count_bad(oracle, c, n, m, trials, seed):
    """The number of c-bad sets among trials sampled m-subsets."""

    rng = random.Random(seed)
    return sum(1 for _ in range(trials) if oracle.is_bad(sample_m_subset(n, m, rng), c))

def partition_sizes(trials, partitions):
    """Split trials into partitions as evenly as possible, larger parts first."""

    base, extra = divmod(trials, partitions)
    return [base + (1 if index < extra else 0) for index in range(partitions)]

################################################################

def bad_prob(family, lam, cfg, mode=EXACT, trials=10000, seed=0,
             partitions=DEFAULT_PARTITIONS, threads=1, cap=ENUMERATION_CAP):
    """Pr(W is cfg.c-bad) for a uniform cfg.m-subset W of the ground set.

    Returns (prob, stderr).  The exact mode enumerates every m-subset
    and reports stderr 0.  The Monte Carlo mode reports the fraction of
    bad samples and its standard error.
    """

    # pylint: disable=too-many-arguments
    n, m, c = family.n, cfg.m, cfg.c
    oracle = BadnessOracle(family, lam)

    if mode == EXACT:
        total = check_enumeration(n, m, cap)
        bad = sum(1 for bits in subsets.combinations(n, m) if oracle.is_bad(bits, c))
        logging.info("bad_prob: %s of %s subsets are bad", bad, total)
        return Fraction(bad, total), 0.0

    if mode != MONTE_CARLO:
        raise ValueError(f"Unknown mode '{mode}', expected '{EXACT}' or '{MONTE_CARLO}'")
    if trials < 1 or partitions < 1 or threads < 1:
        raise ValueError("trials, partitions and threads must be positive")

    sizes = partition_sizes(trials, partitions)
    seeds = [mix_seed(seed, index) for index in range(partitions)]
    args = [(oracle, c, n, m, size, part_seed) for size, part_seed in zip(sizes, seeds)]
    if threads == 1:
        counts = [count_bad(*arg) for arg in args]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(count_bad, *zip(*args)))
    bad = sum(counts)
    prob = Fraction(bad, trials)
    stderr = math.sqrt(float(prob) * (1 - float(prob)) / trials)
    logging.info("bad_prob: %s of %s samples are bad in %s partitions", bad, trials, partitions)
    return prob, stderr
