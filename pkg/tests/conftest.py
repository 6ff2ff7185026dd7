"""Shared test fixtures: brute-force oracles and seeded set generators.

The energy oracle counts 2k-tuples with equal k-fold sums.  Two
implementations are provided: a literal nested enumeration over all
N**(2k) tuples (the definition, affordable only for tiny sets) and a
sum-class count that enumerates the left and right k-tuples separately.
They are cross-validated against each other in test_engine.py; the
faster one backs the larger oracle checks.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import pytest

from sumsetlab import OrderedSet, SplitMix64


def brute_force_T_literal(sets) -> int:
    """Count 2k-tuples with equal sums by direct enumeration."""
    total = 0
    elements = [A.elements for A in sets]
    for left in itertools.product(*elements):
        s_left = sum(left)
        for right in itertools.product(*elements):
            if sum(right) == s_left:
                total += 1
    return total


def brute_force_T(sets) -> int:
    """Count 2k-tuples with equal sums via left/right sum classes."""
    left = Counter(sum(t) for t in itertools.product(*(A.elements for A in sets)))
    return sum(c * c for c in left.values())


def brute_force_representation(sets) -> dict:
    return dict(
        Counter(sum(t) for t in itertools.product(*(A.elements for A in sets)))
    )


def random_integer_set(rng: SplitMix64, n: int, spread: int = 1000) -> OrderedSet:
    values = set()
    while len(values) < n:
        values.add(rng.next_in(-spread, spread))
    return OrderedSet(sorted(values))


def random_rational_set(rng: SplitMix64, n: int, spread: int = 200) -> OrderedSet:
    values = set()
    while len(values) < n:
        num = rng.next_in(-spread, spread)
        den = rng.next_in(1, 12)
        values.add(Fraction(num, den))
    return OrderedSet(sorted(values))


@pytest.fixture
def rng() -> SplitMix64:
    return SplitMix64(20240817)
