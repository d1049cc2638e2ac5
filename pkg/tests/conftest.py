import random
from functools import lru_cache
from typing import List, Set, Tuple

import pytest

from src.core.factorizations import LengthTables
from src.core.monoid_core import MonoidCore


@lru_cache(maxsize=None)
def brute_length_sets(generators: Tuple[int, ...], upto: int) -> List[Set[int]]:
    """L(n) for every n <= upto by pushing lengths forward; empty set off the monoid."""
    sets: List[Set[int]] = [set() for _ in range(upto + 1)]
    sets[0].add(0)
    for n in range(upto + 1):
        if not sets[n]:
            continue
        for g in generators:
            if n + g <= upto:
                sets[n + g].update(length + 1 for length in sets[n])
    return sets


def brute_factorizations(generators: Tuple[int, ...], n: int) -> List[Tuple[int, ...]]:
    """Every exponent vector of n, by exhaustive search over the coefficients."""
    if not generators:
        return [()] if n == 0 else []
    *rest, last = generators
    found = []
    for count in range(n // last + 1):
        for head in brute_factorizations(tuple(rest), n - count * last):
            found.append(head + (count,))
    return found


@pytest.fixture
def monoid():
    def make(*generators):
        return MonoidCore.new_monoid(generators)
    return make


@pytest.fixture
def oracle():
    return brute_length_sets


@pytest.fixture
def rng():
    return random.Random(1729)


@pytest.fixture
def fresh_tables():
    """Drop cached length tables before and after a test that edits them."""
    LengthTables.for_monoid.cache_clear()
    yield
    LengthTables.for_monoid.cache_clear()
