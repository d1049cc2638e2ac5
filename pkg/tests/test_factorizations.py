from fractions import Fraction

import numpy as np
import pytest

from src.core.errors import EnumerationTooLarge, InvalidCollection, NoSubcollection, NotInMonoid
from src.core.factorizations import Factorizations, LengthTables
from src.core.monoid_core import MonoidCore
from src.utils import config
from tests.conftest import brute_factorizations


def test_factorizations_of_ten(monoid):
    S = monoid(3, 5, 7)
    found = Factorizations.factorizations(S, 10)
    assert {f.exponents for f in found} == {(1, 0, 1), (0, 2, 0)}
    assert all(f.value(S) == 10 for f in found)
    assert Factorizations.length_set(S, 10) == {2}


def test_factorizations_edge_elements(monoid):
    S = monoid(3, 5, 7)
    assert [f.exponents for f in Factorizations.factorizations(S, 0)] == [(0, 0, 0)]
    assert Factorizations.factorizations(S, 4) == []


def test_factorizations_descend_lexicographically_from_largest(monoid):
    S = monoid(6, 10, 13, 14)
    keys = [tuple(reversed(f.exponents)) for f in Factorizations.factorizations(S, 120)]
    assert keys == sorted(keys, reverse=True)


def test_factorizations_match_exhaustive_search(monoid):
    for gens in ([3, 5, 7], [6, 10, 13, 14], [7, 12, 17, 22], [5, 16, 17, 18, 19]):
        S = monoid(*gens)
        for n in range(0, 150):
            found = sorted(f.exponents for f in Factorizations.factorizations(S, n))
            assert found == sorted(brute_factorizations(S.generators, n))


def test_enumeration_guard(monoid, monkeypatch):
    monkeypatch.setattr(config, "ENUMERATION_LIMIT", 10)
    with pytest.raises(EnumerationTooLarge):
        Factorizations.factorizations(monoid(3, 5), 300)


def test_length_set_needs_member(monoid):
    S = monoid(3, 5, 7)
    assert Factorizations.length_set(S, 0) == {0}
    with pytest.raises(NotInMonoid):
        Factorizations.length_set(S, 4)
    with pytest.raises(NotInMonoid):
        Factorizations.max_length(S, 4)
    with pytest.raises(NotInMonoid):
        Factorizations.elasticity(S, 1)


def test_length_set_limit(monoid, monkeypatch):
    monkeypatch.setattr(config, "LENGTH_SET_LIMIT", 50)
    with pytest.raises(EnumerationTooLarge):
        Factorizations.length_set(monoid(3, 5), 51)


def test_length_sets_match_oracle(monoid, oracle):
    for gens in config.FIXTURE_MONOIDS:
        S = monoid(*gens)
        sets = oracle(S.generators, 400)
        for n, expected in enumerate(sets):
            if expected:
                assert Factorizations.length_set(S, n) == expected


@pytest.mark.parametrize("gens, n, longest, shortest", [
    ((5, 16, 17, 18, 19), 100, 20, 6),
    ((7, 12, 17, 22), 66, 8, 3),
    ((6, 10, 13, 14), 6, 1, 1),
])
def test_max_min_length(monoid, gens, n, longest, shortest):
    S = monoid(*gens)
    assert Factorizations.max_length(S, n) == longest
    assert Factorizations.min_length(S, n) == shortest


def test_elasticity(monoid):
    assert Factorizations.elasticity(monoid(7, 12, 17, 22), 66) == Fraction(8, 3)
    assert Factorizations.elasticity(monoid(3, 5, 7), 10) == 1
    assert Factorizations.elasticity(monoid(3, 5, 7), 0) == 1


@pytest.mark.slow
def test_quasilinearity_beyond_thresholds(monoid):
    S = monoid(5, 16, 17, 18, 19)
    tables = LengthTables.for_monoid(S)
    assert (tables.max_threshold, tables.min_threshold) == (76, 324)
    for n in range(77, 5001):
        if MonoidCore.contains(S, n):
            assert Factorizations.max_length(S, n) == Factorizations.max_length(S, n - 5) + 1
    for n in range(325, 5001):
        if MonoidCore.contains(S, n):
            assert Factorizations.min_length(S, n) == Factorizations.min_length(S, n - 19) + 1


@pytest.mark.slow
def test_lengths_agree_with_enumeration(monoid, oracle):
    S = monoid(5, 16, 17, 18, 19)
    for n in range(301):
        lengths = {f.length for f in Factorizations.factorizations(S, n)}
        if not lengths:
            continue
        assert Factorizations.max_length(S, n) == max(lengths)
        assert Factorizations.min_length(S, n) == min(lengths)
    sets = oracle(S.generators, 5000)
    for n in range(301, 5001):
        if sets[n]:
            assert (Factorizations.max_length(S, n), Factorizations.min_length(S, n)) == (max(sets[n]), min(sets[n]))


def test_bulk_lengths_match_scalar(monoid):
    S = monoid(20, 21, 45)
    tables = LengthTables.for_monoid(S)
    ns = np.arange(0, 3000)
    longest, shortest = tables.max_lengths(ns), tables.min_lengths(ns)
    for n in range(3000):
        if MonoidCore.contains(S, n):
            assert longest[n] == tables.max_length(n)
            assert shortest[n] == tables.min_length(n)
        else:
            assert longest[n] == -1 and shortest[n] == -1


def test_single_generator_lengths(monoid):
    S = monoid(1)
    assert Factorizations.max_length(S, 7) == 7
    assert Factorizations.min_length(S, 7) == 7
    assert Factorizations.elasticity(S, 7) == 1


def test_length_stats(monoid):
    S = monoid(7, 12, 17, 22)
    stats = Factorizations.length_stats(S, 66)
    assert (stats.max_len, stats.min_len, stats.elasticity) == (8, 3, Fraction(8, 3))
    assert Factorizations.length_stats(S, 0).elasticity == 1
    with pytest.raises(NotInMonoid):
        Factorizations.length_stats(S, 8)


def test_length_stats_range(monoid):
    S = monoid(3, 5, 7)
    assert [s.n for s in Factorizations.length_stats_range(S, 0, 7)] == [0, 3, 5, 6, 7]
    assert Factorizations.length_stats_range(S, 5, 4) == []


def test_length_stats_range_with_workers(monoid):
    S = monoid(6, 10, 13, 14)
    sequential = Factorizations.length_stats_range(S, 1, 266, workers=1)
    threaded = Factorizations.length_stats_range(S, 1, 266, workers=4)
    assert sequential == threaded
    assert len(sequential) == sum(MonoidCore.contains(S, n) for n in range(1, 267))


def test_elasticities_up_to(monoid):
    S = monoid(7, 12, 17, 22)
    expected = {Factorizations.elasticity(S, n) for n in range(1, 701) if MonoidCore.contains(S, n)}
    assert Factorizations.elasticities_up_to(S, 700) == expected
    assert Factorizations.elasticities_up_to(S, 0) == set()


def test_find_length_set_separates_monoids(monoid):
    S, T = monoid(6, 10, 13, 14), monoid(6, 11, 13, 14)
    n = Factorizations.find_length_set(S, {4, 6})
    assert n is not None and n <= 266
    assert Factorizations.length_set(S, n) == {4, 6}
    assert Factorizations.find_length_set(T, {4, 6}) is None


@pytest.mark.parametrize("k, c, expected", [
    (3, [1, 1, 1], frozenset()),
    (2, [1, 2, 1], frozenset({1, 3})),
    (2, [3, 5], frozenset()),
])
def test_find_proper_subcollection(k, c, expected):
    assert Factorizations.find_proper_subcollection(k, c) == expected


def test_find_proper_subcollection_errors():
    with pytest.raises(InvalidCollection):
        Factorizations.find_proper_subcollection(3, [1, 2])
    with pytest.raises(NoSubcollection):
        Factorizations.find_proper_subcollection(0, [1, 2, 4])


@pytest.mark.slow
def test_find_proper_subcollection_random(rng):
    for _ in range(10_000):
        k = rng.randint(1, 20)
        c = [rng.randint(-1000, 1000) for _ in range(rng.randint(k, 40))]
        chosen = Factorizations.find_proper_subcollection(k, c)
        assert chosen < frozenset(range(1, len(c) + 1))
        assert (sum(c[i - 1] for i in chosen) - sum(c)) % k == 0


@pytest.mark.parametrize("gens", [[7, 12, 17, 22], [3, 5], [14, 17, 20, 23, 26, 29, 32]])
def test_arithmetical_length_sets_step_by_d(monoid, gens):
    S = monoid(*gens)
    d = MonoidCore.detect_arithmetical(S).d
    for n in range(1, 1500):
        if not MonoidCore.contains(S, n):
            continue
        lengths = Factorizations.length_set(S, n)
        shortest = min(lengths)
        assert all((length - shortest) % d == 0 for length in lengths), (n, sorted(lengths))
