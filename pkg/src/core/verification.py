import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.core.arithmetical import Arithmetical
from src.core.elasticity_profile import ElasticityProfiles, Outcome
from src.core.errors import MonoidError
from src.core.factorizations import Factorizations, LengthTables
from src.core.monoid_core import ArithmeticalParams, MonoidCore, NumericalMonoid, Rational
from src.utils import config

logger = logging.getLogger(__name__)

Check = Callable[[], Optional[str]]


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    detail: Optional[str]

    @property
    def passed(self) -> bool:
        return self.detail is None


def brute_force_lengths(generators: Sequence[int], upto: int) -> List[Optional[Tuple[int, int]]]:
    """(max length, min length) of every n <= upto by plain recursion over the generators; None off the monoid."""
    table: List[Optional[Tuple[int, int]]] = [None] * (upto + 1)
    table[0] = (0, 0)
    for n in range(1, upto + 1):
        options = [table[n - g] for g in generators if g <= n and table[n - g] is not None]
        if options:
            table[n] = (max(o[0] for o in options) + 1, min(o[1] for o in options) + 1)
    return table


def _fixtures() -> List[NumericalMonoid]:
    return [MonoidCore.new_monoid(gens) for gens in config.FIXTURE_MONOIDS]


# core

def check_normalization() -> Optional[str]:
    for S in _fixtures():
        if MonoidCore.new_monoid(S.generators) != S:
            return f"{S} is not a fixed point of normalization"
        if S.k > 1:
            padded = list(S.generators) + [S.generators[0] + S.generators[1]]
            if MonoidCore.new_monoid(padded) != S:
                return f"{S} changed after adding a redundant generator"
    return None


def check_membership_and_frobenius() -> Optional[str]:
    for S in _fixtures():
        bound = 2 * (S.smallest - 1) * (S.largest - 1) + S.largest
        oracle = brute_force_lengths(S.generators, bound)
        for n in range(bound + 1):
            if MonoidCore.contains(S, n) != (oracle[n] is not None):
                return f"membership of {n} in {S}"
        gaps = [n for n in range(bound + 1) if oracle[n] is None]
        expected = gaps[-1] if gaps else -1
        if MonoidCore.frobenius(S) != expected:
            return f"Frobenius number of {S}: {MonoidCore.frobenius(S)} != {expected}"
    return None


def check_lengths() -> Optional[str]:
    for S in _fixtures():
        bound = 600
        oracle = brute_force_lengths(S.generators, bound)
        for n, expected in enumerate(oracle):
            if expected is None:
                continue
            got = (Factorizations.max_length(S, n), Factorizations.min_length(S, n))
            if got != expected:
                return f"(M, m)({n}) in {S}: {got} != {expected}"
    return None


def check_quasilinearity() -> Optional[str]:
    for S in _fixtures():
        tables = LengthTables.for_monoid(S)
        g1, gk = S.smallest, S.largest
        for n in range(tables.max_threshold + 1, tables.max_threshold + 10 * gk):
            if tables.max_length(n) != tables.max_length(n - g1) + 1:
                return f"M({n}) != M({n - g1}) + 1 in {S}"
        for n in range(tables.min_threshold + 1, tables.min_threshold + 10 * gk):
            if tables.min_length(n) != tables.min_length(n - gk) + 1:
                return f"m({n}) != m({n - gk}) + 1 in {S}"
    return None


def check_elasticity_bounds() -> Optional[str]:
    for S in _fixtures():
        sup = MonoidCore.max_elasticity(S)
        values = Factorizations.elasticities_up_to(S, 4 * S.smallest * S.largest)
        if not all(1 <= q <= sup for q in values):
            return f"an elasticity of {S} falls outside [1, {sup}]"
        if Factorizations.elasticity(S, S.smallest * S.largest) != sup:
            return f"rho(g_1 g_k) != {sup} in {S}"
    return None


def check_small_factorizations() -> Optional[str]:
    S = MonoidCore.new_monoid([3, 5, 7])
    exps = sorted(f.exponents for f in Factorizations.factorizations(S, 10))
    if exps != [(0, 2, 0), (1, 0, 1)]:
        return f"Z(10) in {S}: {exps}"
    if Factorizations.length_set(S, 10) != {2}:
        return f"L(10) in {S}: {Factorizations.length_set(S, 10)}"
    return None


def check_subcollections() -> Optional[str]:
    rng = random.Random(20240501)
    for _ in range(1000):
        k = rng.randint(1, 20)
        c = [rng.randint(-50, 50) for _ in range(rng.randint(k, 40))]
        chosen = Factorizations.find_proper_subcollection(k, c)
        if len(chosen) >= len(c) or not chosen <= set(range(1, len(c) + 1)):
            return f"{sorted(chosen)} is not a proper index set for {c}"
        if (sum(c[i - 1] for i in chosen) - sum(c)) % k:
            return f"subcollection {sorted(chosen)} of {c} breaks the congruence mod {k}"
    return None


# arith

def check_parametrization() -> Optional[str]:
    for gens in ([7, 12, 17, 22], [3, 5]):
        S = MonoidCore.new_monoid(gens)
        P = MonoidCore.detect_arithmetical(S)
        tuples = Arithmetical.enumerate_tuples(P, Arithmetical.slice_bound(P, 1500))
        predicted = {Arithmetical.tuple_elasticity(P, t) for t in tuples}
        observed = Factorizations.elasticities_up_to(S, 1500)
        if not observed <= predicted:
            return f"{sorted(observed - predicted)[:3]} of {S} match no tuple"
        for t in tuples:
            if Arithmetical.slice_of(P, t) > 12:
                break
            n = Arithmetical.witness_element(P, t)
            if Factorizations.elasticity(S, n) != Arithmetical.tuple_elasticity(P, t):
                return f"witness {n} of {t.as_triple()} in {S}"
    return None


def check_closed_forms() -> Optional[str]:
    for gens in ([7, 12, 17, 22], [3, 5], [14, 17, 20, 23, 26, 29, 32]):
        S = MonoidCore.new_monoid(gens)
        P = MonoidCore.detect_arithmetical(S)
        for n in range(1, 800):
            if not MonoidCore.contains(S, n):
                continue
            if Arithmetical.arithmetical_max_length(P, n) != Factorizations.max_length(S, n):
                return f"closed-form M({n}) in {S}"
            if Arithmetical.arithmetical_min_length(P, n) != Factorizations.min_length(S, n):
                return f"closed-form m({n}) in {S}"
            t = Arithmetical.element_tuple(P, n)
            if Arithmetical.tuple_elasticity(P, t) != Factorizations.elasticity(S, n):
                return f"tuple {t.as_triple()} of {n} in {S}"
    return None


def check_recovery() -> Optional[str]:
    for a in range(3, 9):
        for d in range(1, 5):
            for k in range(1, a):
                try:
                    P = ArithmeticalParams(a, d, k)
                except MonoidError:
                    continue
                S = P.monoid()
                values = sorted(Factorizations.elasticities_up_to(S, 20 * a * P.largest))
                recovered = Arithmetical.recover_d(values[1], values[2])
                if recovered != d:
                    return f"recovered d={recovered} for {P}"
                if Arithmetical.recover_a_over_k(values[-1], recovered) != P.a_over_k:
                    return f"recovered a/k for {P}"
    return None


def check_coprime_tuple() -> Optional[str]:
    P = ArithmeticalParams(14, 3, 6)
    t = Arithmetical.maximal_coprime_tuple(P)
    value = Arithmetical.tuple_elasticity(P, t)
    if value != Rational(86, 39):
        return f"maximal coprime tuple {t.as_triple()} has elasticity {value}"
    if Arithmetical.elasticity_sets_equal_arithmetical(P, ArithmeticalParams(7, 3, 3)):
        return "R(<14,...,32>) reported equal to R(<7,10,13,16>)"
    return None


def check_tuple_order() -> Optional[str]:
    P = ArithmeticalParams(7, 5, 3)
    tuples = Arithmetical.enumerate_tuples(P, 6)
    for left in tuples:
        for right in tuples:
            comparison = Arithmetical.compare_tuples(P, left, right)
            if not comparison.holds():
                return f"{left.as_triple()} {comparison.relation.value} {right.as_triple()} fails"
    return None


# profile

def check_decomposition() -> Optional[str]:
    for S in _fixtures():
        profile = ElasticityProfiles.build_profile(S)
        bound = profile.base + 10 * profile.period
        oracle = brute_force_lengths(S.generators, bound)
        for n in range(1, bound + 1):
            if oracle[n] is None:
                continue
            rho = Rational(*oracle[n])
            if n < profile.base + profile.period and rho not in profile.finite_part:
                return f"rho({n}) = {rho} missing from the finite part of {S}"
            if n >= profile.base:
                index, t = ElasticityProfiles.sequence_position(profile, n)
                if ElasticityProfiles.sequence_value(profile, index, t) != rho:
                    return f"sequence value of {n} in {S} differs from {rho}"
    return None


def check_reflexive_comparison() -> Optional[str]:
    for S in _fixtures():
        verdict = ElasticityProfiles.compare_profiles(S, S)
        if verdict.outcome is not Outcome.EQUAL:
            return f"{S} compared with itself gave {verdict.outcome.value}"
    return None


def check_comparison_fixtures() -> Optional[str]:
    S1, S2 = MonoidCore.new_monoid([6, 10, 13, 14]), MonoidCore.new_monoid([6, 11, 13, 14])
    verdict = ElasticityProfiles.compare_profiles(S1, S2)
    if verdict.outcome is not Outcome.EQUAL:
        return f"{S1} vs {S2} gave {verdict.outcome.value}"
    S1, S2 = MonoidCore.new_monoid([14, 17, 20, 23, 26, 29, 32]), MonoidCore.new_monoid([7, 10, 13, 16])
    verdict = ElasticityProfiles.compare_profiles(S1, S2)
    if verdict.outcome is not Outcome.NOT_EQUAL or verdict.witness != Rational(86, 39):
        return f"{S1} vs {S2} gave {verdict.outcome.value} witness {verdict.witness}"
    return None


SUITES: Dict[str, List[Tuple[str, Check]]] = {
    "core": [
        ("normalization", check_normalization),
        ("membership_and_frobenius", check_membership_and_frobenius),
        ("lengths_vs_oracle", check_lengths),
        ("quasilinearity", check_quasilinearity),
        ("elasticity_bounds", check_elasticity_bounds),
        ("small_factorizations", check_small_factorizations),
        ("subcollections", check_subcollections),
    ],
    "arith": [
        ("parametrization", check_parametrization),
        ("closed_forms", check_closed_forms),
        ("recovery", check_recovery),
        ("coprime_tuple", check_coprime_tuple),
        ("tuple_order", check_tuple_order),
    ],
    "profile": [
        ("decomposition", check_decomposition),
        ("reflexive_comparison", check_reflexive_comparison),
        ("comparison_fixtures", check_comparison_fixtures),
    ],
}


def run_suite(name: str) -> List[CheckResult]:
    """Run one suite ('all' runs every suite); a raised exception counts as a failure."""
    names = list(SUITES) if name == "all" else [name]
    results = []
    for suite in names:
        for check_name, check in SUITES[suite]:
            logger.debug(f"🔧 Running {suite}/{check_name}")
            try:
                detail = check()
            except Exception as e:
                detail = f"{type(e).__name__}: {e}"
            results.append(CheckResult(suite, check_name, detail))
    return results
