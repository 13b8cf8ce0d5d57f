# SPDX-License-Identifier: Apache-2.0

"""Exact subset probabilities and Monte Carlo badness estimates."""

from collections import Counter
from fractions import Fraction
import math
import random

from hypothesis import given, settings, strategies as st
import pytest

from threshold_lab import bound
from threshold_lab import covering
from threshold_lab import generate
from threshold_lab import measure
from threshold_lab import sampling
from threshold_lab import subsets
from threshold_lab.configt import SelectorConfig
from threshold_lab.errors import CapExceeded
from threshold_lab.lambdat import Lambda

from oracles import feasible_lambdas, proper_families

HALF = Fraction(1, 2)

def singleton_cover(n):
    return Lambda({(v,): 1 for v in range(1, n + 1)}, n)

################################################################
# Exact probabilities

def test_subset_prob():
    assert sampling.subset_prob(0, 4, 2) == 1
    assert sampling.subset_prob(1, 4, 2) == HALF
    assert sampling.subset_prob(2, 4, 2) == Fraction(1, 6)
    assert sampling.subset_prob(3, 4, 2) == 0
    with pytest.raises(ValueError):
        sampling.subset_prob(5, 4, 2)

def test_subset_prob_counts_subsets():
    for n in range(6):
        for m in range(n + 1):
            for s in range(n + 1):
                count = sum(1 for bits in subsets.combinations(n, m)
                            if subsets.is_subset(subsets.full(s), bits))
                assert sampling.subset_prob(s, n, m) == Fraction(count, math.comb(n, m))

def test_expected_mass():
    assert sampling.expected_mass(Lambda(), 4, 2) == 0
    assert sampling.expected_mass(Lambda({(1,): 1}), 4, 2) == HALF
    assert sampling.expected_mass(Lambda({(1, 2): 3}), 4, 2) == HALF

def test_o1_probability():
    assert sampling.o1_probability(Lambda(), 4, 2, 1) == 1
    assert sampling.o1_probability(Lambda({(1,): 1}), 4, 2, 1) == HALF
    assert sampling.o1_probability(Lambda({(1, 2): 1}), 4, 2, 1) == Fraction(5, 6)

def test_o1_probability_cap():
    with pytest.raises(CapExceeded):
        sampling.o1_probability(Lambda(), 24, 12, 1)
    with pytest.raises(CapExceeded):
        sampling.o1_probability(Lambda(), 6, 3, 1, cap=19)

@settings(max_examples=500)
@given(proper_families(max_n=12, max_sets=3, max_size=4).flatmap(
    lambda family: st.tuples(st.just(family), feasible_lambdas(family))), st.data())
def test_expectation_chain(instance, data):
    family, lam = instance
    n = family.n
    m = data.draw(st.integers(min_value=0, max_value=n))
    assert sampling.expected_mass(lam, n, m) <= sampling.scaled_mass(lam, Fraction(m, n))

@settings(max_examples=100)
@given(proper_families(max_n=12, max_sets=3, max_size=4).flatmap(
    lambda family: st.tuples(st.just(family), feasible_lambdas(family))), st.data())
def test_markov(instance, data):
    family, lam = instance
    n = family.n
    m = data.draw(st.integers(min_value=0, max_value=n))
    r = data.draw(st.integers(min_value=1, max_value=3))
    expected = sampling.expected_mass(lam, n, m)
    assert sampling.o1_probability(lam, n, m, r) >= 1 - 2 * r * expected

@pytest.mark.parametrize('r', [1, 2, 3])
@settings(max_examples=100)
@given(data=st.data())
def test_chain_at_the_real_sample_size(r, data):
    family = data.draw(proper_families(max_n=8, max_sets=3, max_size=r))
    lam = data.draw(feasible_lambdas(family, r))
    p = data.draw(st.sampled_from([Fraction(1, 10**k) for k in range(3, 7)]))
    cfg = SelectorConfig(r, p, family.n)
    jp = cfg.jp()
    scaled = sampling.scaled_mass(lam, jp) / (2 * r)
    assert sampling.scaled_mass(lam, cfg.real_m / family.n) <= scaled
    if jp <= 1 and lam.weight(jp) <= HALF:
        assert scaled <= Fraction(1, 4 * r)

################################################################
# Sampling

def test_sample_edges():
    rng = random.Random(1)
    assert sampling.sample_m_subset(5, 5, rng) == subsets.full(5)
    assert sampling.sample_m_subset(5, 0, rng) == 0
    assert sampling.sample_m_subset(0, 0, rng) == 0
    with pytest.raises(ValueError):
        sampling.sample_m_subset(3, 4, rng)

def test_sample_is_reproducible():
    first = [sampling.sample_m_subset(10, 4, random.Random(7)) for _ in range(3)]
    assert len(set(first)) == 1
    assert subsets.size(first[0]) == 4

def test_sample_is_uniform():
    rng = random.Random(2024)
    trials = 60000
    counts = Counter(sampling.sample_m_subset(4, 2, rng) for _ in range(trials))
    assert set(counts) == set(subsets.combinations(4, 2))
    sigma = math.sqrt(trials * (1 / 6) * (5 / 6))
    for count in counts.values():
        assert abs(count - trials / 6) <= 4 * sigma

def test_mix_seed():
    seeds = [sampling.mix_seed(0, index) for index in range(8)]
    assert len(set(seeds)) == 8
    assert all(0 <= seed < 2**64 for seed in seeds)
    assert seeds == [sampling.mix_seed(0, index) for index in range(8)]
    assert sampling.mix_seed(1, 0) != sampling.mix_seed(0, 0)

def test_partition_sizes():
    assert sampling.partition_sizes(10, 3) == [4, 3, 3]
    assert sampling.partition_sizes(2, 4) == [1, 1, 0, 0]

################################################################
# Bad probabilities

def test_singletons_are_never_bad():
    cfg = SelectorConfig(1, Fraction(1, 10), 4, m=2)
    assert cfg.c == HALF
    family = generate.singletons(4)
    assert sampling.bad_prob(family, singleton_cover(4), cfg) == (0, 0.0)
    prob, stderr = sampling.bad_prob(family, singleton_cover(4), cfg, sampling.MONTE_CARLO,
                                     trials=500)
    assert prob == 0 and stderr == 0

def test_empty_sample_is_bad():
    cfg = SelectorConfig(1, Fraction(1, 10), 4, m=0)
    assert sampling.bad_prob(generate.singletons(4), singleton_cover(4), cfg)[0] == 1

def triple_instance(m):
    """<{1,2,3}> on 6 points: a sample is 3/4-bad unless it contains 1, 2 and 3."""

    family = generate.single(6, [1, 2, 3])
    lam = Lambda({(1,): HALF, (2, 3): HALF}, 6)
    return family, lam, SelectorConfig(2, Fraction(1, 10), 6, m=m)

@pytest.mark.parametrize('m, expected', [
    (3, Fraction(19, 20)),
    (4, Fraction(4, 5)),
    (5, HALF),
    (6, 0),
])
def test_exact_bad_prob(m, expected):
    family, lam, cfg = triple_instance(m)
    assert cfg.c == Fraction(3, 4)
    assert sampling.bad_prob(family, lam, cfg)[0] == expected

def agreement_instances():
    """Twenty small instances, each with C(n, m) at most 10^4."""

    cases = [triple_instance(m) for m in (2, 3, 4, 5)]
    quad = generate.single(6, [1, 2, 3, 4])
    halves = Lambda({(1, 2): HALF, (3, 4): HALF}, 6)
    cases += [(quad, halves, SelectorConfig(2, Fraction(1, 10), 6, m=m)) for m in (2, 3, 4, 5)]
    pairs = generate.k_uniform(5, 2)
    spread = Lambda({(v,): HALF for v in range(1, 6)}, 5)
    cases += [(pairs, spread, SelectorConfig(1, Fraction(1, 10), 5, m=m)) for m in (1, 2, 3, 4)]
    thirds = Lambda({(v,): Fraction(1, 3) for v in range(1, 7)}, 6)
    for family in (generate.triangles(4), generate.k_uniform(6, 3)):
        cases += [(family, thirds, SelectorConfig(1, Fraction(1, 10), 6, m=m))
                  for m in (2, 3, 4, 5)]
    return cases

@pytest.mark.parametrize('index', range(20))
def test_monte_carlo_agrees_with_exact(index):
    family, lam, cfg = agreement_instances()[index]
    trials = 10**4
    assert math.comb(family.n, cfg.m) <= 10**4
    exact = float(sampling.bad_prob(family, lam, cfg)[0])
    prob, stderr = sampling.bad_prob(family, lam, cfg, sampling.MONTE_CARLO,
                                     trials=trials, seed=index)
    sigma = math.sqrt(exact * (1 - exact) / trials)
    assert abs(float(prob) - exact) <= 4 * max(stderr, sigma)

@pytest.mark.parametrize('name', sorted(generate.battery()))
def test_bad_prob_within_bound_on_battery(name):
    family = generate.battery()[name]
    checked = 0
    for p in (Fraction(1, 10), Fraction(1, 4), HALF, Fraction(3, 4), Fraction(9, 10)):
        if covering.min_cover_weight(family, p)[0] <= HALF:
            continue
        for r in (1, 2, 3):
            cfg = SelectorConfig(r, p, family.n)
            lam = measure.witness_lambda(family, cfg).lam
            value, _ = bound.bmm_bound(cfg)
            assert sampling.bad_prob(family, lam, cfg)[0] <= value
            checked += 1
    assert checked

def test_monte_carlo_is_deterministic():
    family, lam, cfg = triple_instance(4)
    runs = [sampling.bad_prob(family, lam, cfg, sampling.MONTE_CARLO, trials=3000,
                              seed=11, partitions=4, threads=threads)
            for threads in (1, 1, 4)]
    assert runs[0] == runs[1] == runs[2]

def test_exact_cap():
    family, lam, cfg = triple_instance(3)
    with pytest.raises(CapExceeded):
        sampling.bad_prob(family, lam, cfg, cap=10)

def test_unknown_mode():
    family, lam, cfg = triple_instance(3)
    with pytest.raises(ValueError):
        sampling.bad_prob(family, lam, cfg, 'bootstrap')
