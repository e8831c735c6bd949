"""Shared helpers: small-instance builders and independent brute-force oracles.

The oracles here deliberately avoid the library's shortcuts (tally
collapsing, certificates, memoization) so they can vouch for them.
"""

import itertools
import math

import numpy as np
import pytest

from quickcount.bench import GeneratorSpec, generate
from quickcount.core import (Instance, PartialAssignment, abs_majority,
                             rel_majority)


def make_instance(costs, probs):
    return Instance(n=len(costs), d=len(probs[0]), costs=tuple(costs),
                    probs=tuple(tuple(row) for row in probs))


def uniform_instance(n, d, costs=None):
    row = tuple(1.0 / d for _ in range(d))
    if costs is None:
        costs = tuple(1.0 for _ in range(n))
    return make_instance(costs, [row] * n)


def random_instance(n, d, seed):
    return generate(GeneratorSpec(kind="random", n=n, d=d, seed=seed))


def all_realizations(n, d):
    return itertools.product(range(1, d + 1), repeat=n)


def all_partials(n, d):
    return itertools.product((None, *range(1, d + 1)), repeat=n)


def realization_prob(instance, x):
    p = 1.0
    for i, v in enumerate(x):
        p *= instance.probs[i][v - 1]
    return p


def extensions(entries, d):
    """All full assignments extending a partial entries tuple."""
    holes = [i for i, v in enumerate(entries) if v is None]
    base = list(entries)
    for fill in itertools.product(range(1, d + 1), repeat=len(holes)):
        for i, v in zip(holes, fill):
            base[i] = v
        yield tuple(base)


def brute_certificate(entries, d, objective):
    """Certificate by checking every extension: the defining property."""
    fn = abs_majority if objective == "abs" else rel_majority
    outcomes = {fn(x, d) for x in extensions(entries, d)}
    return outcomes.pop() if len(outcomes) == 1 else None


def brute_winnable(entries, d, objective):
    """Candidates winning in at least one extension."""
    fn = abs_majority if objective == "abs" else rel_majority
    return {fn(x, d) for x in extensions(entries, d)} - {0}


def brute_optimal(instance, objective, entries=None):
    """Optimal expected cost by unmemoized recursion over raw partial
    assignments; independent of the belief-state DP."""
    d = instance.d
    if entries is None:
        entries = (None,) * instance.n

    def rec(b):
        if brute_certificate(b, d, objective) is not None:
            return 0.0
        best = math.inf
        for i, v in enumerate(b):
            if v is not None:
                continue
            total = instance.costs[i]
            for j in range(1, d + 1):
                child = b[:i] + (j,) + b[i + 1:]
                total += instance.probs[i][j - 1] * rec(child)
            best = min(best, total)
        return best

    return rec(tuple(entries))


def kofn_optimal(costs, ps, k):
    """Exact optimal expected cost of deciding a k-of-n question.

    Decide whether at least k of the variables are 1, where P[var i = 1]
    = ps[i]; stop once k ones or (n - k + 1) zeros are seen.
    """
    n = len(costs)
    z = n - k + 1
    memo = {}

    def rec(mask, ones):
        zeros = n - mask.bit_count() - ones
        if ones >= k or zeros >= z:
            return 0.0
        key = (mask, ones)
        if key in memo:
            return memo[key]
        best = math.inf
        rest = mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            i = bit.bit_length() - 1
            val = costs[i] + ps[i] * rec(mask ^ bit, ones + 1) \
                + (1 - ps[i]) * rec(mask ^ bit, ones)
            best = min(best, val)
        memo[key] = best
        return best

    return rec((1 << n) - 1, 0)


def sweep_cost(run, instance):
    """Expected cost as an explicit sum over all d^n realizations.

    run(x) must return an object with a .cost attribute (a Transcript).
    """
    total = 0.0
    for x in all_realizations(instance.n, instance.d):
        total += realization_prob(instance, x) * run(x).cost
    return total


def partial_from(entries, d):
    return PartialAssignment.from_entries(list(entries), d)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260810)
