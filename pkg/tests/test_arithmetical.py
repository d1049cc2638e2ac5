from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest

from src.core.arithmetical import Arithmetical, ElasticityTuple, TupleRelation
from src.core.elasticity_profile import ElasticityProfiles
from src.core.errors import (
    IncompatibleParams,
    InvalidElasticities,
    InvalidTuple,
    MonoidError,
    NonIntegerResult,
    NotApplicable,
    NotArithmetical,
    NotInMonoid,
    SOutOfRange,
)
from src.core.factorizations import Factorizations
from src.core.monoid_core import ArithmeticalParams, MonoidCore

P753 = ArithmeticalParams(7, 5, 3)
P321 = ArithmeticalParams(3, 2, 1)
P1436 = ArithmeticalParams(14, 3, 6)
P733 = ArithmeticalParams(7, 3, 3)


def T(c, s, x):
    return ElasticityTuple(c, s, x)


@pytest.mark.parametrize("P, s, expected", [
    (P753, 1, (3, 11)),
    (P753, 0, (0, 9)),
    (P321, 0, (0, 6)),
])
def test_tuple_bounds(P, s, expected):
    assert Arithmetical.tuple_bounds(P, s) == expected


def test_tuple_bounds_rejects_s():
    with pytest.raises(SOutOfRange):
        Arithmetical.tuple_bounds(P753, 3)
    with pytest.raises(SOutOfRange):
        Arithmetical.tuple_bounds(P753, -1)


def test_enumerate_tuples():
    assert [t.as_triple() for t in Arithmetical.enumerate_tuples(P753, 0)] == [(0, 0, x) for x in range(10)]
    expected = [(0, 0, x) for x in range(7)] + [(1, 0, x) for x in range(7)]
    assert [t.as_triple() for t in Arithmetical.enumerate_tuples(P321, 1)] == expected


def test_enumerate_tuples_flags():
    tuples = Arithmetical.enumerate_tuples(P753, 4)
    assert tuples[0].minimal and not tuples[0].maximal
    assert sum(t.maximal for t in tuples) == 5
    assert T(0, 0, 0) in tuples


@pytest.mark.parametrize("P, t, expected", [
    (P753, T(0, 1, 3), Fraction(8, 3)),
    (P1436, T(7, 5, 19), Fraction(86, 39)),
])
def test_tuple_elasticity(P, t, expected):
    assert Arithmetical.tuple_elasticity(P, t) == expected


def test_zeroth_slice_is_one():
    for x in range(10):
        assert Arithmetical.tuple_elasticity(P753, T(0, 0, x)) == 1


def test_tuple_elasticity_rejects_invalid():
    with pytest.raises(InvalidTuple):
        Arithmetical.tuple_elasticity(P753, T(0, 0, 10))
    with pytest.raises(InvalidTuple):
        Arithmetical.tuple_elasticity(P753, T(-1, 0, 0))
    with pytest.raises(InvalidTuple):
        Arithmetical.tuple_elasticity(P753, T(0, 3, 5))


def test_tuple_elasticity_bounds():
    for P in (P753, P321, P1436):
        for t in Arithmetical.enumerate_tuples(P, 30):
            assert 1 <= Arithmetical.tuple_elasticity(P, t) <= P.sup


def test_witness_element_examples(monoid):
    assert Arithmetical.witness_element(P753, T(0, 1, 3)) == 66
    assert Factorizations.elasticity(monoid(7, 12, 17, 22), 66) == Fraction(8, 3)
    assert Arithmetical.witness_element(P753, T(0, 0, 0)) == 0
    n = Arithmetical.witness_element(P321, T(1, 0, 6))
    assert Factorizations.elasticity(monoid(3, 5), n) == Fraction(11, 9)


def test_compare_tuples():
    same_row = Arithmetical.compare_tuples(P753, T(0, 1, 5), T(0, 2, 5))
    assert same_row.relation is TupleRelation.LESS_EQUAL and same_row.basis == "slice"
    same_slice = Arithmetical.compare_tuples(P753, T(0, 1, 4), T(0, 1, 3))
    assert same_slice.relation is TupleRelation.LESS_EQUAL and same_slice.basis == "row"
    identity = Arithmetical.compare_tuples(P753, T(1, 0, 2), T(1, 0, 2))
    assert identity.relation is TupleRelation.EQUAL
    assert all(c.holds() for c in (same_row, same_slice, identity))


def test_compare_tuples_across_c_is_exact():
    comparison = Arithmetical.compare_tuples(P753, T(0, 2, 5), T(1, 0, 5))
    assert comparison.basis == "exact"
    assert comparison.relation is TupleRelation.GREATER
    assert (comparison.left, comparison.right) == (Fraction(3), Fraction(9, 4))


def test_monotonicity():
    tuples = Arithmetical.enumerate_tuples(P753, 9)
    for left, right in combinations(tuples, 2):
        assert Arithmetical.compare_tuples(P753, left, right).holds()


@pytest.mark.parametrize("f, g, d", [
    (Fraction(16, 11), Fraction(3, 2), 5),
    (Fraction(11, 9), Fraction(5, 4), 2),
    (Fraction(3, 2), Fraction(2), 1),
])
def test_recover_d(f, g, d):
    assert Arithmetical.recover_d(f, g) == d


def test_recover_d_errors():
    with pytest.raises(NonIntegerResult):
        Arithmetical.recover_d(Fraction(6, 5), Fraction(4, 3))
    with pytest.raises(InvalidElasticities):
        Arithmetical.recover_d(Fraction(3, 2), Fraction(5, 4))


def test_three_minimal_elasticities(monoid):
    assert Arithmetical.three_minimal_elasticities(monoid(7, 12, 17, 22)) == (1, Fraction(16, 11), Fraction(3, 2))
    assert Arithmetical.three_minimal_elasticities(monoid(3, 5)) == (1, Fraction(11, 9), Fraction(5, 4))
    with pytest.raises(NotArithmetical):
        Arithmetical.three_minimal_elasticities(monoid(20, 21, 45))


def test_three_minimal_match_scan(monoid):
    for gens in ([7, 12, 17, 22], [3, 5], [4, 5, 6], [9, 11, 13, 15]):
        S = monoid(*gens)
        scanned = tuple(sorted(Factorizations.elasticities_up_to(S, 5000))[:3])
        assert Arithmetical.three_minimal_elasticities(S) == scanned


def test_step_closed_form():
    assert Arithmetical.step_closed_form(P753) == (Fraction(16, 11), Fraction(3, 2))
    with pytest.raises(NotApplicable):
        Arithmetical.step_closed_form(P321)


@pytest.mark.parametrize("sup, d, expected", [
    (Fraction(22, 7), 5, Fraction(7, 3)),
    (Fraction(5, 3), 2, Fraction(3)),
    (Fraction(5), 4, Fraction(1)),
])
def test_recover_a_over_k(sup, d, expected):
    assert Arithmetical.recover_a_over_k(sup, d) == expected


@pytest.mark.slow
def test_recovery_grid():
    for a in range(3, 16):
        for d in range(1, 8):
            for k in range(1, a):
                try:
                    P = ArithmeticalParams(a, d, k)
                except MonoidError:
                    continue
                S = P.monoid()
                values = sorted(Factorizations.elasticities_up_to(S, 20 * a * P.largest))
                assert values[0] == 1
                d_found = Arithmetical.recover_d(values[1], values[2])
                assert d_found == d
                assert Arithmetical.recover_a_over_k(MonoidCore.max_elasticity(S), d_found) == P.a_over_k


def test_maximal_coprime_tuple():
    t = Arithmetical.maximal_coprime_tuple(P1436)
    assert t.as_triple() == (7, 5, 19)
    assert t.maximal


def test_maximal_coprime_tuple_small_case():
    P = ArithmeticalParams(4, 1, 2)
    t = Arithmetical.maximal_coprime_tuple(P)
    assert t.as_triple() == (2, 1, 6)
    assert t.maximal
    assert gcd(t.c * P.a + t.x, t.c * P.k + t.s) == 1


def test_maximal_coprime_tuple_not_applicable():
    with pytest.raises(NotApplicable):
        Arithmetical.maximal_coprime_tuple(P733)


def test_maximal_coprime_tuple_value_is_unique():
    t = Arithmetical.maximal_coprime_tuple(P1436)
    value = Arithmetical.tuple_elasticity(P1436, t)
    hits = [u for u in Arithmetical.enumerate_tuples(P1436, Arithmetical.slice_of(P1436, t))
            if Arithmetical.tuple_elasticity(P1436, u) == value]
    assert [u.as_triple() for u in hits] == [(7, 5, 19)]


def test_coprime_tuple_value_separates_monoids():
    value = Arithmetical.tuple_elasticity(P1436, Arithmetical.maximal_coprime_tuple(P1436))
    assert ElasticityProfiles.contains_elasticity(ElasticityProfiles.build_profile(P1436.monoid()), value)
    assert not ElasticityProfiles.contains_elasticity(ElasticityProfiles.build_profile(P733.monoid()), value)


def test_phi_embed():
    image = Arithmetical.phi_embed(P733, P1436, T(5, 1, 3))
    assert image.as_triple() == (2, 4, 10)
    assert Arithmetical.tuple_elasticity(P1436, image) == Fraction(43, 19)
    assert Arithmetical.phi_embed(P733, P1436, T(0, 2, 5)).as_triple() == (0, 2, 5)


def test_phi_embed_rejects_incompatible():
    with pytest.raises(IncompatibleParams):
        Arithmetical.phi_embed(P733, ArithmeticalParams(14, 3, 5), T(0, 0, 0))
    with pytest.raises(IncompatibleParams):
        Arithmetical.phi_embed(P733, ArithmeticalParams(13, 3, 6), T(0, 0, 0))
    with pytest.raises(IncompatibleParams):
        Arithmetical.phi_embed(P733, P733, T(0, 0, 0))


def test_phi_embed_preserves_elasticity(rng):
    tuples = Arithmetical.enumerate_tuples(P733, 40)
    for t in rng.sample(tuples, 100):
        image = Arithmetical.phi_embed(P733, P1436, t)
        assert Arithmetical.tuple_elasticity(P1436, image) == Arithmetical.tuple_elasticity(P733, t)


def test_elasticity_sets_equal_arithmetical():
    assert not Arithmetical.elasticity_sets_equal_arithmetical(P1436, P733)
    assert Arithmetical.elasticity_sets_equal_arithmetical(ArithmeticalParams(4, 1, 2), ArithmeticalParams(6, 1, 3))
    assert Arithmetical.elasticity_sets_equal_arithmetical(P753, P753)
    assert Arithmetical.length_sets_equal_arithmetical(ArithmeticalParams(4, 1, 2), ArithmeticalParams(6, 1, 3))
    assert not Arithmetical.length_sets_equal_arithmetical(P1436, P733)


def test_equal_elasticity_sets_share_values():
    S, T2 = ArithmeticalParams(4, 1, 2).monoid(), ArithmeticalParams(6, 1, 3).monoid()
    for source, target in ((S, T2), (T2, S)):
        profile = ElasticityProfiles.build_profile(target)
        for q in Factorizations.elasticities_up_to(source, 2000):
            assert ElasticityProfiles.contains_elasticity(profile, q)


def test_equality_criteria_agree(rng):
    grid = []
    for a in range(2, 13):
        for d in range(1, 4):
            for k in range(1, a):
                try:
                    grid.append(ArithmeticalParams(a, d, k))
                except MonoidError:
                    pass
    for _ in range(500):
        P, Q = rng.choice(grid), rng.choice(grid)
        assert Arithmetical.elasticity_sets_equal_arithmetical(P, Q) == Arithmetical.length_sets_equal_arithmetical(P, Q)


@pytest.mark.slow
@pytest.mark.parametrize("gens", [[7, 12, 17, 22], [3, 5]])
def test_parametrization_both_inclusions(gens, oracle):
    S = MonoidCore.new_monoid(gens)
    P = MonoidCore.detect_arithmetical(S)
    tuples = Arithmetical.enumerate_tuples(P, Arithmetical.slice_bound(P, 3000))
    predicted = {Arithmetical.tuple_elasticity(P, t) for t in tuples}
    sets = oracle(S.generators, 3000)
    observed = {Fraction(max(L), min(L)) for n, L in enumerate(sets) if L and n > 0}
    assert observed <= predicted
    for t in tuples:
        n = Arithmetical.witness_element(P, t)
        assert Factorizations.elasticity(S, n) == Arithmetical.tuple_elasticity(P, t)


def test_closed_form_lengths(monoid):
    for gens in ([7, 12, 17, 22], [3, 5], [14, 17, 20, 23, 26, 29, 32]):
        S = monoid(*gens)
        P = MonoidCore.detect_arithmetical(S)
        for n in range(1, 1200):
            if not MonoidCore.contains(S, n):
                continue
            assert Arithmetical.arithmetical_max_length(P, n) == Factorizations.max_length(S, n)
            assert Arithmetical.arithmetical_min_length(P, n) == Factorizations.min_length(S, n)


def test_closed_form_needs_member():
    with pytest.raises(NotInMonoid):
        Arithmetical.arithmetical_max_length(P753, 8)


def test_element_tuple(monoid):
    S = monoid(7, 12, 17, 22)
    t = Arithmetical.element_tuple(P753, 66)
    assert t.as_triple() == (0, 1, 3)
    assert Arithmetical.element_tuple(P753, 0).as_triple() == (0, 0, 0)
    for n in range(1, 600):
        if MonoidCore.contains(S, n):
            t = Arithmetical.element_tuple(P753, n)
            assert Arithmetical.tuple_elasticity(P753, t) == Factorizations.elasticity(S, n)


def test_slice_bound_covers_scanned_elements(monoid):
    assert Arithmetical.slice_bound(P321, 3000) == 200
    assert Arithmetical.slice_bound(P321, 0) == 0
    S = monoid(7, 12, 17, 22)
    bound = Arithmetical.slice_bound(P753, 1000)
    predicted = {Arithmetical.tuple_elasticity(P753, t) for t in Arithmetical.enumerate_tuples(P753, bound)}
    assert Factorizations.elasticities_up_to(S, 1000) <= predicted
